use std::f64::consts::{FRAC_PI_2, TAU};

use hminus_core::hminus::{build_hamiltonian, HamiltonianSpec};
use hminus_core::optimize::{nelder_mead, powell, spsa, SpsaPerturbation};
use hminus_core::{
    minimize, AnsatzConfig, Encoding, Method, Objective, OptimizerConfig, OptimizerTrace, SignConvention,
    TerminalReason, TwoBodySign, VqeProblem,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn bowl(x: &[f64]) -> f64 {
    x.iter().map(|v| (v - 1.0).powi(2)).sum()
}

fn cfg(method: Method) -> OptimizerConfig {
    OptimizerConfig::new(method)
}

fn starts(seed: u64, count: usize) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| (0..12).map(|_| rng.gen_range(0.0..TAU)).collect()).collect()
}

fn assert_well_formed(trace: &OptimizerTrace) {
    for (i, r) in trace.records.iter().enumerate() {
        assert_eq!(r.iteration, i + 1);
    }
    assert!(trace.records.windows(2).all(|w| w[1].best_energy <= w[0].best_energy));
}

fn problem(conv: SignConvention, shots: u64, seed: u64) -> VqeProblem {
    let h = build_hamiltonian(&HamiltonianSpec::new(Encoding::JordanWigner, conv, TwoBodySign::Plus)).unwrap();
    VqeProblem::new(h, AnsatzConfig::two_qubit(), shots, seed).unwrap()
}

#[test]
fn nelder_mead_quadratic_twelve_dims() {
    let mut obj = Objective::from_fn(bowl);
    let trace = nelder_mead(&mut obj, &[0.0; 12], &cfg(Method::NelderMead)).unwrap();
    assert!(trace.iterations() <= 2000);
    assert!(trace.best_energy() < 1e-8, "{}", trace.best_energy());
    assert_well_formed(&trace);
}

#[test]
fn powell_quadratic_twelve_dims() {
    let mut obj = Objective::from_fn(bowl);
    let mut c = cfg(Method::Powell);
    c.max_iterations = 50;
    let trace = powell(&mut obj, &[0.0; 12], &c).unwrap();
    assert!(trace.best_energy() < 1e-8, "{}", trace.best_energy());
    assert_ne!(trace.terminal_reason, TerminalReason::MaxIterations);
    assert_well_formed(&trace);
}

#[test]
fn powell_separable_cosines() {
    let mut obj = Objective::from_fn(|x| x.iter().map(|v| v.cos()).sum());
    let trace = powell(&mut obj, &[FRAC_PI_2; 12], &cfg(Method::Powell)).unwrap();
    assert!((trace.best_energy() + 12.0).abs() < 1e-6, "{}", trace.best_energy());
    assert!(trace.best_point().iter().all(|v| (v - std::f64::consts::PI).abs() < 1e-4));
}

#[test]
fn spsa_quadratic_mean_over_seeds() {
    let mut total = 0.0;
    for seed in 0..10 {
        let mut c = cfg(Method::Spsa);
        c.max_iterations = 500;
        c.seed = seed;
        let mut obj = Objective::from_fn(bowl);
        let trace = spsa(&mut obj, &[0.0; 12], &c).unwrap();
        assert_eq!(trace.evaluations, 2 * 500 + 1);
        assert_well_formed(&trace);
        total += bowl(&trace.final_point);
    }
    assert!(total / 10.0 < 1e-3, "{}", total / 10.0);
}

#[test]
fn spsa_half_pi_shift_mode_descends() {
    let mut c = cfg(Method::Spsa);
    c.max_iterations = 300;
    c.spsa.perturbation = SpsaPerturbation::HalfPiShift;
    let mut obj = Objective::from_fn(|x| x.iter().map(|v| v.cos()).sum());
    let x0 = [0.3; 4];
    let trace = spsa(&mut obj, &x0, &c).unwrap();
    let f = |x: &[f64]| x.iter().map(|v| v.cos()).sum::<f64>();
    assert!(f(&trace.final_point) < f(&x0) - 1.0);
}

#[test]
fn nelder_mead_budget_bound() {
    let mut obj = Objective::from_fn(|x| x.iter().enumerate().map(|(i, v)| (i as f64 + 1.0) * v.sin()).sum());
    let trace = nelder_mead(&mut obj, &[0.4; 6], &cfg(Method::NelderMead)).unwrap();
    let n = 6;
    // each shrink costs n evaluations on top of the per-iteration four
    let bound = (n + 1 + 4 * trace.iterations() + n * trace.shrinks) as u64;
    assert!(trace.evaluations <= bound);
    if trace.shrinks == 0 {
        assert!(trace.evaluations <= (n + 1 + 4 * trace.iterations()) as u64);
    }
}

#[test]
fn oracle_attainment_exact_objective() {
    for conv in [SignConvention::Physical, SignConvention::PaperLiteral] {
        let p = problem(conv, 0, 0);
        let floor = p.hamiltonian().min_eigenvalue().unwrap();
        for method in [Method::NelderMead, Method::Powell] {
            let best = starts(7, 20)
                .iter()
                .map(|x0| {
                    let trace = minimize(&mut p.objective(), x0, &cfg(method)).unwrap();
                    assert_well_formed(&trace);
                    trace.best_energy()
                })
                .fold(f64::INFINITY, f64::min);
            assert!((best - floor).abs() < 1e-6, "{method} {conv:?}: {best} vs {floor}");
        }
    }
}

#[test]
fn spsa_shot_objective_median() {
    let mut finals: Vec<f64> = (0..10)
        .map(|seed| {
            let p = problem(SignConvention::Physical, 8192, seed);
            let mut c = cfg(Method::Spsa);
            c.seed = seed;
            c.max_iterations = 6000;
            let trace = spsa(&mut p.objective(), &starts(100 + seed, 1)[0], &c).unwrap();
            p.exact_energy(&trace.final_point).unwrap()
        })
        .collect();
    finals.sort_by(f64::total_cmp);
    let median = 0.5 * (finals[4] + finals[5]);
    assert!((median + 0.6875).abs() < 0.05, "{finals:?}");
}

#[test]
fn traces_are_reproducible() {
    for method in Method::ALL {
        let run = || {
            let p = problem(SignConvention::Physical, 1024, 5);
            let mut c = cfg(method);
            c.max_iterations = 60;
            c.seed = 3;
            let trace = minimize(&mut p.objective(), &starts(9, 1)[0], &c).unwrap();
            trace
        };
        assert_eq!(run(), run(), "{method}");
    }
}
