use std::f64::consts::TAU;

use hminus_core::hminus::{reference_energies, ReferenceEnergies};
use hminus_core::optimize::{minimize, OptimizerTrace, TerminalReason};
use hminus_core::{ParameterVector, VqeProblem};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::{CliError, ExperimentConfig, Result};

/// Seed for restart `index`: the base seed for restart 0, then a
/// golden-ratio stride so restarts never share a stream.
pub fn restart_seed(seed: u64, index: usize) -> u64 {
    seed.wrapping_add((index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

// keeps the SPSA direction stream apart from the shot-sampling stream
const OPTIMIZER_SEED_MASK: u64 = 0x5DEE_CE66_D1CE_4E5B;

#[derive(Debug, Clone, Serialize)]
pub struct RestartSummary {
    pub index: usize,
    pub seed: u64,
    /// Best recorded objective value (a shot estimate when shots > 0).
    pub final_energy: f64,
    /// Noise-free energy at the best recorded point.
    pub final_exact_energy: f64,
    pub terminal_reason: TerminalReason,
    pub evaluations: u64,
    pub iterations: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub final_energy: f64,
    pub final_exact_energy: f64,
    /// Smallest eigenvalue of the Hamiltonian, from the dense matrix.
    pub exact_minimum: f64,
    /// `|final_energy − exact_minimum|`.
    pub gap: f64,
    /// `|final_exact_energy − exact_minimum|`.
    pub exact_gap: f64,
    pub terminal_reason: TerminalReason,
    pub evaluations: u64,
    pub total_evaluations: u64,
    pub iterations: usize,
    pub best_restart: usize,
    /// Best parameters reduced to [0, 2π).
    pub best_parameters: Vec<f64>,
    pub config: ExperimentConfig,
    pub restarts: Vec<RestartSummary>,
    pub reference_energies: ReferenceEnergies,
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub summary: Summary,
    /// One per restart, in restart order.
    pub traces: Vec<OptimizerTrace>,
}

impl RunOutcome {
    pub fn best_trace(&self) -> &OptimizerTrace {
        &self.traces[self.summary.best_restart]
    }
}

fn run_restart(cfg: &ExperimentConfig, index: usize) -> Result<(RestartSummary, OptimizerTrace)> {
    let seed = restart_seed(cfg.seed, index);
    let problem = VqeProblem::new(cfg.hamiltonian()?, cfg.ansatz()?, cfg.shots, seed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x0: Vec<f64> = (0..problem.ansatz().parameter_count())
        .map(|_| rng.gen_range(0.0..TAU))
        .collect();
    let mut opt = cfg.optimizer;
    opt.seed = seed ^ OPTIMIZER_SEED_MASK;
    let trace = minimize(&mut problem.objective(), &x0, &opt)?;
    let final_exact_energy = problem.exact_energy(trace.best_point())?;
    let summary = RestartSummary {
        index,
        seed,
        final_energy: trace.best_energy(),
        final_exact_energy,
        terminal_reason: trace.terminal_reason,
        evaluations: trace.evaluations,
        iterations: trace.iterations(),
    };
    Ok((summary, trace))
}

/// Runs every restart (in parallel up to `cfg.jobs`) and picks the one
/// with the lowest recorded energy, ties going to the lower index.
pub fn run_vqe(cfg: &ExperimentConfig) -> Result<RunOutcome> {
    cfg.validate()?;
    let exact_minimum = cfg.hamiltonian()?.min_eigenvalue()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {} worker threads: {e}", cfg.jobs)))?;
    let results: Vec<(RestartSummary, OptimizerTrace)> =
        pool.install(|| (0..cfg.restarts).into_par_iter().map(|i| run_restart(cfg, i)).collect::<Result<_>>())?;

    let best = results
        .iter()
        .enumerate()
        .min_by(|(ia, a), (ib, b)| a.0.final_energy.total_cmp(&b.0.final_energy).then(ia.cmp(ib)))
        .map(|(i, _)| i)
        .expect("at least one restart");
    let (restarts, traces): (Vec<_>, Vec<_>) = results.into_iter().unzip();
    let top = &restarts[best];
    let best_parameters = ParameterVector::new(traces[best].best_point().to_vec())?
        .canonical()
        .into();
    let summary = Summary {
        final_energy: top.final_energy,
        final_exact_energy: top.final_exact_energy,
        exact_minimum,
        gap: (top.final_energy - exact_minimum).abs(),
        exact_gap: (top.final_exact_energy - exact_minimum).abs(),
        terminal_reason: top.terminal_reason,
        evaluations: top.evaluations,
        total_evaluations: restarts.iter().map(|r| r.evaluations).sum(),
        iterations: top.iterations,
        best_restart: best,
        best_parameters,
        config: cfg.clone(),
        restarts,
        reference_energies: reference_energies(),
    };
    Ok(RunOutcome { summary, traces })
}
