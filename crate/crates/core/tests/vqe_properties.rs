mod common;

use std::f64::consts::{FRAC_1_SQRT_2, PI, TAU};

use common::*;
use hminus_core::hminus::{build_hamiltonian, HamiltonianSpec};
use hminus_core::linalg::DenseMatrix;
use hminus_core::vqe::{
    energy, estimate_pauli_z_expectations, prepare_ansatz, variance, z_expectations_from_probabilities,
};
use hminus_core::{
    AnsatzConfig, Encoding, EnergyInput, ParameterVector, PauliSum, ShotHistogram, SignConvention, StateVector,
    TwoBodySign, VqeProblem,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn rz(t: f64) -> DenseMatrix {
    DenseMatrix::from_rows(&[
        vec![Complex64::from_polar(1.0, -t / 2.0), c(0.0, 0.0)],
        vec![c(0.0, 0.0), Complex64::from_polar(1.0, t / 2.0)],
    ])
}

fn rx(t: f64) -> DenseMatrix {
    let (s, co) = (t / 2.0).sin_cos();
    DenseMatrix::from_rows(&[vec![c(co, 0.0), c(0.0, -s)], vec![c(0.0, -s), c(co, 0.0)]])
}

fn block(a: &[f64]) -> DenseMatrix {
    &(&rz(a[2]) * &rx(a[1])) * &rz(a[0])
}

fn permutation(map: impl Fn(usize) -> usize) -> DenseMatrix {
    let mut m = DenseMatrix::zeros(4);
    for i in 0..4 {
        m[(map(i), i)] = c(1.0, 0.0);
    }
    m
}

/// Two-qubit depth-1 ansatz as one explicit 4×4 product.
fn ansatz_oracle(a: &[f64]) -> Vec<Complex64> {
    let first = block(&a[0..3]).kron(&block(&a[3..6]));
    let last = block(&a[6..9]).kron(&block(&a[9..12]));
    // qubit 0 is the high bit
    let cnot01 = permutation(|i| if i & 2 != 0 { i ^ 1 } else { i });
    let cnot10 = permutation(|i| if i & 1 != 0 { i ^ 2 } else { i });
    let u = &(&(&last * &cnot10) * &cnot01) * &first;
    u.mul_vec(&[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)])
}

fn random_angles(rng: &mut impl Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(0.0..TAU)).collect()
}

fn all_specs() -> Vec<HamiltonianSpec> {
    let mut out = Vec::new();
    for encoding in Encoding::ALL {
        for conv in [SignConvention::PaperLiteral, SignConvention::Physical] {
            for sign in [TwoBodySign::Plus, TwoBodySign::Minus] {
                out.push(HamiltonianSpec::new(encoding, conv, sign));
            }
        }
    }
    out
}

fn physical() -> PauliSum {
    build_hamiltonian(&HamiltonianSpec::default()).unwrap()
}

#[test]
fn ansatz_matches_explicit_matrix_product() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let cfg = AnsatzConfig::two_qubit();
    for _ in 0..100 {
        let a = random_angles(&mut rng, 12);
        let state = prepare_ansatz(&cfg, &ParameterVector::new(a.clone()).unwrap()).unwrap();
        let oracle = ansatz_oracle(&a);
        for (x, y) in state.amplitudes().iter().zip(&oracle) {
            assert!((x - y).norm() < 1e-12);
        }
    }
}

#[test]
fn ansatz_examples() {
    let cfg = AnsatzConfig::two_qubit();
    assert_eq!(cfg.parameter_count(), 12);
    let zero = prepare_ansatz(&cfg, &ParameterVector::zeros(12)).unwrap();
    assert_eq!(zero.amplitudes()[0], c(1.0, 0.0));

    let one = AnsatzConfig::new(1, 1).unwrap();
    let mut a = vec![0.0; one.parameter_count()];
    a[1] = PI;
    let flipped = prepare_ansatz(&one, &ParameterVector::new(a).unwrap()).unwrap();
    assert!((flipped.exact_probability("1").unwrap() - 1.0).abs() < 1e-15);

    for wrong in [11, 13] {
        assert!(prepare_ansatz(&cfg, &ParameterVector::zeros(wrong)).is_err());
    }
    assert_eq!(AnsatzConfig::new(3, 2).unwrap().parameter_count(), 27);
}

#[test]
fn ansatz_preserves_norm() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for i in 0..1000 {
        let cfg = AnsatzConfig::new(1 + i % 4, 1 + i % 3).unwrap();
        let a = (0..cfg.parameter_count()).map(|_| rng.gen_range(-20.0..20.0)).collect();
        let state = prepare_ansatz(&cfg, &ParameterVector::new(a).unwrap()).unwrap();
        assert!((state.norm_sqr() - 1.0).abs() < 1e-12);
        assert!((state.probabilities().iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn energy_respects_variational_bound_for_every_spec() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let cfg = AnsatzConfig::two_qubit();
    for spec in all_specs() {
        let h = build_hamiltonian(&spec).unwrap();
        let floor = h.min_eigenvalue().unwrap();
        for _ in 0..200 {
            let p = ParameterVector::new(random_angles(&mut rng, 12)).unwrap();
            let e = energy(&h, EnergyInput::State(&prepare_ansatz(&cfg, &p).unwrap())).unwrap();
            assert!(e.energy >= floor - 1e-10, "{spec:?}");
        }
    }
}

#[test]
fn probability_formulas_reproduce_the_matrix_expectation() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let specs = all_specs();
    for i in 0..1000 {
        let h = build_hamiltonian(&specs[i % specs.len()]).unwrap();
        let m = h.to_matrix().unwrap();
        let state = random_state(&mut rng, 2);
        let p = state.probabilities();
        let (z0, z1, zz) = z_expectations_from_probabilities([p[0], p[1], p[2], p[3]]);
        let formula = h.coefficient("II") + h.coefficient("ZI") * z0 + h.coefficient("IZ") * z1 + h.coefficient("ZZ") * zz;
        assert!((formula - matrix_expectation(&m, &state).re).abs() < 1e-12);
    }
}

#[test]
fn histogram_z_expectations() {
    let h = |pairs: &[(&str, u64)]| ShotHistogram::from_counts(2, pairs.iter().copied()).unwrap();
    assert_eq!(estimate_pauli_z_expectations(&h(&[("00", 8192)])).unwrap(), (1.0, 1.0, 1.0));
    assert_eq!(estimate_pauli_z_expectations(&h(&[("11", 8192)])).unwrap(), (-1.0, -1.0, 1.0));
    assert_eq!(estimate_pauli_z_expectations(&h(&[("00", 4096), ("11", 4096)])).unwrap(), (0.0, 0.0, 1.0));
    for s in ["00", "01", "10", "11"] {
        let (z0, z1, zz) = estimate_pauli_z_expectations(&h(&[(s, 100)])).unwrap();
        assert_eq!(z0 * z1, zz);
    }
}

#[test]
fn basis_state_energies() {
    let h = physical();
    let e = |idx| energy(&h, EnergyInput::State(&StateVector::basis(2, idx).unwrap())).unwrap().energy;
    assert!((e(3) + 0.6875).abs() < 1e-15);
    assert_eq!(e(0), 0.0);
    assert!((e(1) + 0.5).abs() < 1e-15 && (e(2) + 0.5).abs() < 1e-15);
}

#[test]
fn shot_energy_tracks_exact_energy_at_8192_shots() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let h = physical();
    let cfg = AnsatzConfig::two_qubit();
    for seed in 0..100 {
        let state = prepare_ansatz(&cfg, &ParameterVector::new(random_angles(&mut rng, 12)).unwrap()).unwrap();
        let exact = h.exact_expectation(&state).unwrap();
        let hist = state.sample(8192, seed).unwrap();
        let est = energy(&h, EnergyInput::Shots(&hist)).unwrap();
        assert_eq!(est.shots_per_term, 8192);
        assert!((est.energy - exact).abs() < 0.02);
        assert!(est.term_expectations.values().all(|v| (-1.0..=1.0).contains(v)));
        assert!(est.variance.unwrap() >= -1e-9);
    }
}

#[test]
fn shot_estimates_converge_at_a_million_shots() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let h = physical();
    let shots = 1_000_000;
    for seed in 0..5 {
        let state = random_state(&mut rng, 2);
        let hist = state.sample(shots, seed).unwrap();
        let est = energy(&h, EnergyInput::Shots(&hist)).unwrap();
        assert!((est.energy - h.exact_expectation(&state).unwrap()).abs() < 5e-3);
        let bound = 5.0 / (shots as f64).sqrt();
        for (f, p) in hist.frequencies().iter().zip(state.probabilities()) {
            assert!((f - p).abs() < bound);
        }
    }
}

#[test]
fn variance_contract() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    let specs = all_specs();
    for i in 0..1000 {
        let h = build_hamiltonian(&specs[i % specs.len()]).unwrap();
        let state = random_state(&mut rng, 2);
        let v = variance(&h, &state).unwrap();
        let m = h.to_matrix().unwrap();
        let mean = matrix_expectation(&m, &state).re;
        let oracle = matrix_expectation(&(&m * &m), &state).re - mean * mean;
        assert!(v >= -1e-10);
        assert!((v - oracle).abs() < 1e-12);
    }
    for spec in &specs {
        let h = build_hamiltonian(spec).unwrap();
        // the diagonal Hamiltonians have every basis state as an eigenstate
        if h.is_diagonal() {
            for idx in 0..4 {
                assert!(variance(&h, &StateVector::basis(2, idx).unwrap()).unwrap().abs() < 1e-10);
            }
        }
    }
    let z = PauliSum::from_terms(1, [(1.0, "Z")]).unwrap();
    let plus = StateVector::from_amplitudes(1, vec![c(FRAC_1_SQRT_2, 0.0), c(FRAC_1_SQRT_2, 0.0)]).unwrap();
    assert!((variance(&z, &plus).unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn problem_evaluation_is_a_pure_function() {
    let problem = VqeProblem::new(physical(), AnsatzConfig::two_qubit(), 8192, 99).unwrap();
    let a = random_angles(&mut ChaCha8Rng::seed_from_u64(17), 12);
    assert_eq!(problem.evaluate(&a, 4).unwrap(), problem.evaluate(&a, 4).unwrap());
    let exact = VqeProblem::new(physical(), AnsatzConfig::two_qubit(), 0, 99).unwrap();
    assert_eq!(exact.evaluate(&a, 0).unwrap(), exact.evaluate(&a, 1).unwrap());
    assert_eq!(exact.evaluate(&a, 0).unwrap(), problem.exact_energy(&a).unwrap());
}

#[test]
fn shot_path_rejects_off_diagonal_terms() {
    let h = PauliSum::from_terms(2, [(1.0, "XZ"), (0.5, "ZZ")]).unwrap();
    assert!(VqeProblem::new(h.clone(), AnsatzConfig::two_qubit(), 100, 0).is_err());
    assert!(VqeProblem::new(h.clone(), AnsatzConfig::two_qubit(), 0, 0).is_ok());
    let hist = StateVector::zero(2).unwrap().sample(10, 0).unwrap();
    assert!(energy(&h, EnergyInput::Shots(&hist)).is_err());
}
