use super::{check_start, Objective, OptimizerConfig, OptimizerTrace, TerminalReason, TraceRecord};
use crate::error::Result;

struct Vertex {
    x: Vec<f64>,
    f: f64,
}

fn combine(a: &[f64], b: &[f64], t: f64) -> Vec<f64> {
    // a + t (b - a)
    a.iter().zip(b).map(|(ai, bi)| ai + t * (bi - ai)).collect()
}

/// Downhill simplex with reflection, expansion, inside/outside contraction
/// and shrink.
///
/// Stops when the simplex value spread `f_worst − f_best` drops below
/// `f_tolerance`, when every vertex lies within `x_tolerance` (max-norm)
/// of the best, or after `max_iterations`.
pub fn nelder_mead(obj: &mut Objective<'_>, x0: &[f64], cfg: &OptimizerConfig) -> Result<OptimizerTrace> {
    check_start(x0, cfg)?;
    let coef = cfg.nelder_mead;
    let n = x0.len();

    let mut simplex = Vec::with_capacity(n + 1);
    simplex.push(Vertex {
        x: x0.to_vec(),
        f: obj.evaluate(x0)?,
    });
    for i in 0..n {
        let mut x = x0.to_vec();
        x[i] += coef.initial_step;
        let f = obj.evaluate(&x)?;
        simplex.push(Vertex { x, f });
    }

    let mut records = Vec::new();
    let mut shrinks = 0;
    let mut reason = TerminalReason::MaxIterations;
    for iteration in 1..=cfg.max_iterations {
        // stable sort keeps older vertices ahead on ties
        simplex.sort_by(|a, b| a.f.total_cmp(&b.f));
        let worst = &simplex[n];
        let mut centroid = vec![0.0; n];
        for v in &simplex[..n] {
            for (c, xi) in centroid.iter_mut().zip(&v.x) {
                *c += xi / n as f64;
            }
        }

        let xr = combine(&centroid, &worst.x, -coef.reflection);
        let fr = obj.evaluate(&xr)?;
        let (f_best, f_second, f_worst) = (simplex[0].f, simplex[n - 1].f, simplex[n].f);

        let mut replacement = None;
        if fr < f_best {
            let xe = combine(&centroid, &xr, coef.expansion);
            let fe = obj.evaluate(&xe)?;
            replacement = Some(if fe < fr { Vertex { x: xe, f: fe } } else { Vertex { x: xr, f: fr } });
        } else if fr < f_second {
            replacement = Some(Vertex { x: xr, f: fr });
        } else if fr < f_worst {
            let xc = combine(&centroid, &xr, coef.contraction);
            let fc = obj.evaluate(&xc)?;
            if fc <= fr {
                replacement = Some(Vertex { x: xc, f: fc });
            }
        } else {
            let xc = combine(&centroid, &simplex[n].x, coef.contraction);
            let fc = obj.evaluate(&xc)?;
            if fc < f_worst {
                replacement = Some(Vertex { x: xc, f: fc });
            }
        }

        match replacement {
            Some(v) => simplex[n] = v,
            None => {
                shrinks += 1;
                let best = simplex[0].x.clone();
                for v in simplex.iter_mut().skip(1) {
                    v.x = combine(&best, &v.x, coef.shrink);
                    v.f = obj.evaluate(&v.x)?;
                }
            }
        }

        simplex.sort_by(|a, b| a.f.total_cmp(&b.f));
        records.push(TraceRecord {
            iteration,
            best_energy: simplex[0].f,
            incumbent: simplex[0].x.clone(),
        });

        let f_spread = simplex[n].f - simplex[0].f;
        let x_spread = simplex[1..]
            .iter()
            .flat_map(|v| v.x.iter().zip(&simplex[0].x).map(|(a, b)| (a - b).abs()))
            .fold(0.0, f64::max);
        if f_spread < cfg.f_tolerance {
            reason = TerminalReason::ConvergedF;
            break;
        }
        if x_spread < cfg.x_tolerance {
            reason = TerminalReason::ConvergedX;
            break;
        }
    }

    Ok(OptimizerTrace {
        method: cfg.method,
        final_point: simplex[0].x.clone(),
        records,
        terminal_reason: reason,
        evaluations: obj.evaluation_count(),
        shrinks,
    })
}
