//! Independent reference implementations used across the test targets.
#![allow(dead_code)]

use hminus_core::fermion::{Ladder, LadderOp};
use hminus_core::linalg::DenseMatrix;
use hminus_core::{FermionOperator, FermionTerm, StateVector};
use num_complex::Complex64;
use rand::Rng;

/// Dense matrix of one ladder operator on the `2^n` Fock space.
///
/// Basis index bits are occupations with mode 0 as the most significant
/// bit. `a_j†|…n_j…⟩ = (−1)^{Σ_{k<j} n_k} |…1…⟩` when `n_j = 0`.
pub fn fock_ladder(n: usize, op: LadderOp) -> DenseMatrix {
    let dim = 1 << n;
    let bit = 1 << (n - 1 - op.mode);
    let mut m = DenseMatrix::zeros(dim);
    for src in 0..dim {
        let occupied = src & bit != 0;
        let allowed = match op.kind {
            Ladder::Create => !occupied,
            Ladder::Annihilate => occupied,
        };
        if !allowed {
            continue;
        }
        let below = (0..op.mode).filter(|&k| src & (1 << (n - 1 - k)) != 0).count();
        let sign = if below % 2 == 0 { 1.0 } else { -1.0 };
        m[(src ^ bit, src)] = Complex64::new(sign, 0.0);
    }
    m
}

/// Dense Fock-space matrix of a whole operator.
pub fn fock_matrix(op: &FermionOperator) -> DenseMatrix {
    let n = op.mode_count();
    let dim = 1 << n;
    let mut total = DenseMatrix::zeros(dim);
    for term in op.terms() {
        let mut prod = DenseMatrix::identity(dim);
        for &f in &term.factors {
            prod = &prod * &fock_ladder(n, f);
        }
        total = &total + &prod.scale(term.coefficient);
    }
    total
}

pub fn random_ladder(rng: &mut impl Rng, modes: usize) -> LadderOp {
    let mode = rng.gen_range(0..modes);
    if rng.gen_bool(0.5) {
        LadderOp::create(mode)
    } else {
        LadderOp::annihilate(mode)
    }
}

pub fn random_complex(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// `T + T†` for a random `T` with up to `max_terms` products of up to four factors.
pub fn random_hermitian(rng: &mut impl Rng, modes: usize, max_terms: usize) -> FermionOperator {
    let mut terms = Vec::new();
    for _ in 0..rng.gen_range(1..=max_terms) {
        let len = rng.gen_range(0..=4);
        let factors = (0..len).map(|_| random_ladder(rng, modes)).collect();
        terms.push(FermionTerm::new(random_complex(rng), factors));
    }
    let t = FermionOperator::new(modes, terms).unwrap();
    t.add(&t.adjoint()).unwrap()
}

/// Random normalized state with amplitudes drawn from the unit box (not Haar).
pub fn random_state(rng: &mut impl Rng, n_qubits: usize) -> StateVector {
    let amps: Vec<Complex64> = (0..1 << n_qubits).map(|_| random_complex(rng)).collect();
    let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    StateVector::from_amplitudes(n_qubits, amps.into_iter().map(|a| a / norm).collect()).unwrap()
}

/// `⟨ψ|M|ψ⟩` by explicit matrix-vector product.
pub fn matrix_expectation(m: &DenseMatrix, state: &StateVector) -> Complex64 {
    let v = state.amplitudes();
    m.mul_vec(v).iter().zip(v).map(|(mv, a)| a.conj() * mv).sum()
}

pub fn sorted_eigenvalues(m: &DenseMatrix) -> Vec<f64> {
    let mut e = m.hermitian_eigenvalues();
    e.sort_by(f64::total_cmp);
    e
}

pub fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}
