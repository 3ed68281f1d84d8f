use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{check_start, Objective, OptimizerConfig, OptimizerTrace, SpsaPerturbation, TerminalReason, TraceRecord};
use crate::error::Result;

/// Simultaneous-perturbation stochastic approximation.
///
/// Iteration `k` draws a Rademacher direction `Δ`, evaluates the objective
/// at `θ ± c_k Δ` and steps `θ ← θ − a_k ĝ`. The pair average
/// `½(f₊ + f₋)` is taken as the value of the pre-step iterate, so the
/// recorded incumbent is always an iterate and each iteration costs exactly
/// two evaluations (plus one for the starting point). Runs all
/// `max_iterations`; `final_point` is the last iterate.
pub fn spsa(obj: &mut Objective<'_>, x0: &[f64], cfg: &OptimizerConfig) -> Result<OptimizerTrace> {
    check_start(x0, cfg)?;
    let gains = cfg.spsa;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let n = x0.len();

    let mut theta = x0.to_vec();
    let mut best = obj.evaluate(&theta)?;
    let mut best_point = theta.clone();
    let mut records = Vec::with_capacity(cfg.max_iterations);

    for k in 0..cfg.max_iterations {
        let ak = gains.step(k);
        let ck = gains.perturbation_size(k);
        let delta: Vec<f64> = (0..n).map(|_| if rng.gen_bool(0.5) { 1.0 } else { -1.0 }).collect();

        let plus: Vec<f64> = theta.iter().zip(&delta).map(|(t, d)| t + ck * d).collect();
        let minus: Vec<f64> = theta.iter().zip(&delta).map(|(t, d)| t - ck * d).collect();
        let f_plus = obj.evaluate(&plus)?;
        let f_minus = obj.evaluate(&minus)?;

        let mid = 0.5 * (f_plus + f_minus);
        if mid < best {
            best = mid;
            best_point.clone_from(&theta);
        }

        let scale = match gains.perturbation {
            SpsaPerturbation::Gain => (f_plus - f_minus) / (2.0 * ck),
            SpsaPerturbation::HalfPiShift => 0.5 * (f_plus - f_minus),
        };
        for (t, d) in theta.iter_mut().zip(&delta) {
            // 1/Δᵢ = Δᵢ for ±1 entries
            *t -= ak * scale * d;
        }

        records.push(TraceRecord {
            iteration: k + 1,
            best_energy: best,
            incumbent: best_point.clone(),
        });
    }

    Ok(OptimizerTrace {
        method: cfg.method,
        final_point: theta,
        records,
        terminal_reason: TerminalReason::MaxIterations,
        evaluations: obj.evaluation_count(),
        shrinks: 0,
    })
}
