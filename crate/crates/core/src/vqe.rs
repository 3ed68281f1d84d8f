//! Ansatz preparation, energy estimation and variance.
//!
//! The ansatz alternates per-qubit rotation blocks `U = RZ(c)·RX(b)·RZ(a)`
//! (applied as RZ(a), then RX(b), then RZ(c)) with a ring of CNOTs, and
//! closes with one more layer of rotation blocks. For two qubits and one
//! entangling layer that is 12 angles:
//!
//! ```text
//! q0 ─U0─●─X─U2─
//!        │ │
//! q1 ─U1─X─●─U3─
//! ```

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::optimize::Objective;
use crate::pauli::{Pauli, PauliSum};
use crate::statevector::{Gate, ShotHistogram, StateVector, MAX_QUBITS};

/// Default number of shots per energy evaluation.
pub const DEFAULT_SHOTS: u64 = 8192;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnsatzConfig {
    n_qubits: usize,
    depth: usize,
}

impl AnsatzConfig {
    pub fn new(n_qubits: usize, depth: usize) -> Result<Self> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(Error::InvalidConfig(format!(
                "ansatz needs 1..={MAX_QUBITS} qubits, got {n_qubits}"
            )));
        }
        if depth == 0 {
            return Err(Error::InvalidConfig("ansatz depth must be at least 1".into()));
        }
        Ok(Self { n_qubits, depth })
    }

    /// Two qubits, one entangling layer.
    pub fn two_qubit() -> Self {
        Self { n_qubits: 2, depth: 1 }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// `3 · n_qubits · (depth + 1)`.
    pub fn parameter_count(&self) -> usize {
        3 * self.n_qubits * (self.depth + 1)
    }

    /// Index of the first angle of the block on `qubit` in `layer`
    /// (`layer == depth` is the final rotation layer).
    pub fn block_offset(&self, layer: usize, qubit: usize) -> usize {
        3 * (layer * self.n_qubits + qubit)
    }

    /// CNOT pairs of one entangling layer: a ring `q → q+1 (mod n)`.
    pub fn entanglers(&self) -> Vec<(usize, usize)> {
        match self.n_qubits {
            1 => Vec::new(),
            n => (0..n).map(|q| (q, (q + 1) % n)).collect(),
        }
    }

    /// Full gate sequence for `params`.
    pub fn circuit(&self, params: &ParameterVector) -> Result<Vec<Gate>> {
        self.check(params)?;
        let angles = params.angles();
        let mut gates = Vec::new();
        for layer in 0..=self.depth {
            for qubit in 0..self.n_qubits {
                let o = self.block_offset(layer, qubit);
                gates.push(Gate::Rz { qubit, angle: angles[o] });
                gates.push(Gate::Rx { qubit, angle: angles[o + 1] });
                gates.push(Gate::Rz { qubit, angle: angles[o + 2] });
            }
            if layer < self.depth {
                for (control, target) in self.entanglers() {
                    gates.push(Gate::Cnot { control, target });
                }
            }
        }
        Ok(gates)
    }

    fn check(&self, params: &ParameterVector) -> Result<()> {
        if params.len() != self.parameter_count() {
            return Err(Error::ParameterCount {
                expected: self.parameter_count(),
                found: params.len(),
            });
        }
        Ok(())
    }
}

/// Rotation angles in radians.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParameterVector(Vec<f64>);

impl ParameterVector {
    pub fn new(angles: Vec<f64>) -> Result<Self> {
        if let Some((index, &value)) = angles.iter().enumerate().find(|(_, a)| !a.is_finite()) {
            return Err(Error::NonFiniteParameter { index, value });
        }
        Ok(Self(angles))
    }

    pub fn zeros(len: usize) -> Self {
        Self(vec![0.0; len])
    }

    pub fn angles(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Angles reduced to `[0, 2π)`.
    pub fn canonical(&self) -> Self {
        Self(
            self.0
                .iter()
                .map(|a| {
                    let r = a.rem_euclid(TAU);
                    if r >= TAU {
                        0.0
                    } else {
                        r
                    }
                })
                .collect(),
        )
    }
}

impl From<ParameterVector> for Vec<f64> {
    fn from(p: ParameterVector) -> Self {
        p.0
    }
}

/// Runs the ansatz circuit on |0…0⟩.
pub fn prepare_ansatz(config: &AnsatzConfig, params: &ParameterVector) -> Result<StateVector> {
    let mut state = StateVector::zero(config.n_qubits)?;
    for gate in config.circuit(params)? {
        state.apply(&gate)?;
    }
    Ok(state)
}

/// `(⟨Z₀I⟩, ⟨IZ₁⟩, ⟨Z₀Z₁⟩)` from the four two-qubit outcome probabilities
/// `[P₀₀, P₀₁, P₁₀, P₁₁]`.
pub fn z_expectations_from_probabilities(p: [f64; 4]) -> (f64, f64, f64) {
    let [p00, p01, p10, p11] = p;
    (
        p00 + p01 - p10 - p11,
        p00 - p01 + p10 - p11,
        p00 - p01 - p10 + p11,
    )
}

/// The same three expectations estimated from a two-qubit histogram.
pub fn estimate_pauli_z_expectations(hist: &ShotHistogram) -> Result<(f64, f64, f64)> {
    if hist.n_qubits() != 2 {
        return Err(Error::WidthMismatch {
            left: 2,
            right: hist.n_qubits(),
        });
    }
    if hist.shots() == 0 {
        return Err(Error::EmptyHistogram);
    }
    let f = hist.frequencies();
    Ok(z_expectations_from_probabilities([f[0], f[1], f[2], f[3]]))
}

/// What an energy is computed from.
#[derive(Debug, Clone, Copy)]
pub enum EnergyInput<'a> {
    /// Exact expectation on the state vector.
    State(&'a StateVector),
    /// Shot estimate; the Hamiltonian must be diagonal.
    Shots(&'a ShotHistogram),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnergyEstimate {
    pub energy: f64,
    /// Expectation of every non-identity term, keyed by its letters.
    pub term_expectations: BTreeMap<String, f64>,
    /// 0 for exact evaluation.
    pub shots_per_term: u64,
    pub variance: Option<f64>,
}

fn letters(ops: &[Pauli]) -> String {
    ops.iter().map(|p| p.letter()).collect()
}

/// Σ P(x)·(−1)^{parity of x on the Z positions}.
fn z_string_from_frequencies(ops: &[Pauli], freqs: &[f64]) -> f64 {
    let n = ops.len();
    let mask = ops
        .iter()
        .enumerate()
        .filter(|(_, p)| **p == Pauli::Z)
        .fold(0usize, |m, (k, _)| m | 1 << (n - 1 - k));
    freqs
        .iter()
        .enumerate()
        .map(|(x, p)| if (x & mask).count_ones() % 2 == 0 { *p } else { -*p })
        .sum()
}

/// ⟨H⟩ from a state or a histogram.
///
/// The identity term contributes its coefficient exactly. The exact path
/// also reports the exact variance; the shot path reports the empirical
/// variance of the diagonal energy over the measured outcomes.
pub fn energy(h: &PauliSum, input: EnergyInput<'_>) -> Result<EnergyEstimate> {
    match input {
        EnergyInput::State(state) => {
            check_width(h.n_qubits(), state.n_qubits())?;
            let mut terms = BTreeMap::new();
            let mut total = 0.0;
            for (ops, c) in h.terms() {
                if ops.iter().all(|p| *p == Pauli::I) {
                    total += c;
                    continue;
                }
                let single = PauliSum::from_terms(h.n_qubits(), [(1.0, letters(ops).as_str())])?;
                let e = single.exact_expectation(state)?;
                total += c * e;
                terms.insert(letters(ops), e);
            }
            Ok(EnergyEstimate {
                energy: total,
                term_expectations: terms,
                shots_per_term: 0,
                variance: Some(variance(h, state)?),
            })
        }
        EnergyInput::Shots(hist) => {
            check_width(h.n_qubits(), hist.n_qubits())?;
            if let Some((ops, _)) = h.terms().find(|(ops, _)| ops.iter().any(|p| matches!(p, Pauli::X | Pauli::Y))) {
                return Err(Error::NonDiagonalTerm(letters(ops)));
            }
            let freqs = hist.frequencies();
            let mut terms = BTreeMap::new();
            let mut total = 0.0;
            for (ops, c) in h.terms() {
                if ops.iter().all(|p| *p == Pauli::I) {
                    total += c;
                    continue;
                }
                let e = z_string_from_frequencies(ops, &freqs);
                total += c * e;
                terms.insert(letters(ops), e);
            }
            // diagonal H: energy of each outcome, then its spread
            let mut second = 0.0;
            for (x, p) in freqs.iter().enumerate() {
                if *p == 0.0 {
                    continue;
                }
                let mut unit = vec![0.0; freqs.len()];
                unit[x] = 1.0;
                let ex: f64 = h.terms().map(|(ops, c)| c * z_string_from_frequencies(ops, &unit)).sum();
                second += p * ex * ex;
            }
            Ok(EnergyEstimate {
                energy: total,
                term_expectations: terms,
                shots_per_term: hist.shots(),
                variance: Some(second - total * total),
            })
        }
    }
}

/// `⟨H²⟩ − ⟨H⟩²` from the dense matrix realization.
pub fn variance(h: &PauliSum, state: &StateVector) -> Result<f64> {
    check_width(h.n_qubits(), state.n_qubits())?;
    let m = h.to_matrix()?;
    let psi = state.amplitudes();
    let h_psi = m.mul_vec(psi);
    let mean: f64 = psi.iter().zip(&h_psi).map(|(a, b)| (a.conj() * b).re).sum();
    let second: f64 = h_psi.iter().map(|v| v.norm_sqr()).sum();
    Ok(second - mean * mean)
}

fn check_width(h: usize, s: usize) -> Result<()> {
    if h != s {
        return Err(Error::WidthMismatch { left: h, right: s });
    }
    Ok(())
}

/// Energy objective over ansatz angles.
///
/// `shots == 0` evaluates exactly. Otherwise each evaluation samples a
/// fresh histogram seeded with `seed ^ evaluation_index`, so a run is a
/// pure function of its inputs.
#[derive(Debug, Clone)]
pub struct VqeProblem {
    hamiltonian: PauliSum,
    ansatz: AnsatzConfig,
    shots: u64,
    seed: u64,
}

impl VqeProblem {
    pub fn new(hamiltonian: PauliSum, ansatz: AnsatzConfig, shots: u64, seed: u64) -> Result<Self> {
        check_width(hamiltonian.n_qubits(), ansatz.n_qubits())?;
        if shots > 0 {
            if let Some((ops, _)) = hamiltonian
                .terms()
                .find(|(ops, _)| ops.iter().any(|p| matches!(p, Pauli::X | Pauli::Y)))
            {
                return Err(Error::NonDiagonalTerm(letters(ops)));
            }
        }
        Ok(Self {
            hamiltonian,
            ansatz,
            shots,
            seed,
        })
    }

    pub fn hamiltonian(&self) -> &PauliSum {
        &self.hamiltonian
    }

    pub fn ansatz(&self) -> &AnsatzConfig {
        &self.ansatz
    }

    pub fn shots(&self) -> u64 {
        self.shots
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Energy of `angles` for evaluation number `evaluation_index`.
    pub fn evaluate(&self, angles: &[f64], evaluation_index: u64) -> Result<f64> {
        let params = ParameterVector::new(angles.to_vec())?;
        let state = prepare_ansatz(&self.ansatz, &params)?;
        if self.shots == 0 {
            return self.hamiltonian.exact_expectation(&state);
        }
        let hist = state.sample(self.shots, self.seed ^ evaluation_index)?;
        Ok(energy(&self.hamiltonian, EnergyInput::Shots(&hist))?.energy)
    }

    /// Counted objective over this problem. Evaluation failures surface as
    /// a non-finite value, which the optimizers turn into an error.
    pub fn objective(&self) -> Objective<'_> {
        Objective::new(move |x, i| self.evaluate(x, i).unwrap_or(f64::NAN))
    }

    /// Noise-free energy regardless of the configured shot count.
    pub fn exact_energy(&self, angles: &[f64]) -> Result<f64> {
        let state = prepare_ansatz(&self.ansatz, &ParameterVector::new(angles.to_vec())?)?;
        self.hamiltonian.exact_expectation(&state)
    }
}
