//! Dense state-vector simulation of small qubit registers.
//!
//! Basis ordering: qubit 0 is the most significant bit, so the bitstring
//! `"10"` on two qubits is basis index 2 and its first character reports
//! qubit 0.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;

/// Largest register the dense simulator accepts.
pub const MAX_QUBITS: usize = 8;

const NORM_TOLERANCE: f64 = 1e-10;

/// The RNG behind shot sampling: ChaCha with 8 rounds, seeded through
/// `SeedableRng::seed_from_u64`. Fixed so histograms match across machines.
pub type ShotRng = ChaCha8Rng;

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gate {
    Rx { qubit: usize, angle: f64 },
    Rz { qubit: usize, angle: f64 },
    X(usize),
    Y(usize),
    Z(usize),
    H(usize),
    Cnot { control: usize, target: usize },
}

impl Gate {
    /// Qubits the gate acts on, control first for CNOT.
    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::Rx { qubit, .. } | Gate::Rz { qubit, .. } => vec![qubit],
            Gate::X(q) | Gate::Y(q) | Gate::Z(q) | Gate::H(q) => vec![q],
            Gate::Cnot { control, target } => vec![control, target],
        }
    }

    /// The gate's unitary on its own qubits (2x2, or 4x4 in |control target⟩ order).
    pub fn matrix(&self) -> DenseMatrix {
        let c = Complex64::new;
        match *self {
            Gate::Rx { angle, .. } => {
                let (s, co) = (angle / 2.0).sin_cos();
                DenseMatrix::from_rows(&[vec![c(co, 0.0), c(0.0, -s)], vec![c(0.0, -s), c(co, 0.0)]])
            }
            Gate::Rz { angle, .. } => {
                let half = angle / 2.0;
                DenseMatrix::from_rows(&[
                    vec![Complex64::from_polar(1.0, -half), c(0.0, 0.0)],
                    vec![c(0.0, 0.0), Complex64::from_polar(1.0, half)],
                ])
            }
            Gate::X(_) => DenseMatrix::from_rows(&[vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(1.0, 0.0), c(0.0, 0.0)]]),
            Gate::Y(_) => DenseMatrix::from_rows(&[vec![c(0.0, 0.0), c(0.0, -1.0)], vec![c(0.0, 1.0), c(0.0, 0.0)]]),
            Gate::Z(_) => DenseMatrix::from_rows(&[vec![c(1.0, 0.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(-1.0, 0.0)]]),
            Gate::H(_) => {
                let h = FRAC_1_SQRT_2;
                DenseMatrix::from_rows(&[vec![c(h, 0.0), c(h, 0.0)], vec![c(h, 0.0), c(-h, 0.0)]])
            }
            Gate::Cnot { .. } => {
                let mut m = DenseMatrix::zeros(4);
                m[(0, 0)] = c(1.0, 0.0);
                m[(1, 1)] = c(1.0, 0.0);
                m[(2, 3)] = c(1.0, 0.0);
                m[(3, 2)] = c(1.0, 0.0);
                m
            }
        }
    }
}

impl StateVector {
    /// |0…0⟩ on `n_qubits` qubits.
    pub fn zero(n_qubits: usize) -> Result<Self> {
        Self::basis(n_qubits, 0)
    }

    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        check_width(n_qubits)?;
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(Error::InvalidBitstring {
                bitstring: format!("#{index}"),
                n_qubits,
            });
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(Self { n_qubits, amplitudes })
    }

    /// Wraps an amplitude vector; it must already be normalized.
    pub fn from_amplitudes(n_qubits: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        check_width(n_qubits)?;
        if amplitudes.len() != 1 << n_qubits {
            return Err(Error::AmplitudeLength {
                n_qubits,
                found: amplitudes.len(),
            });
        }
        let state = Self { n_qubits, amplitudes };
        let norm = state.norm_sqr();
        if !norm.is_finite() || (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::NotNormalized(norm));
        }
        Ok(state)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(Complex64::norm_sqr).sum()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(Complex64::norm_sqr).collect()
    }

    /// Bit mask of `qubit` inside a basis index.
    fn mask(&self, qubit: usize) -> usize {
        1 << (self.n_qubits - 1 - qubit)
    }

    fn check_qubit(&self, qubit: usize) -> Result<()> {
        if qubit >= self.n_qubits {
            return Err(Error::QubitOutOfRange {
                qubit,
                n_qubits: self.n_qubits,
            });
        }
        Ok(())
    }

    /// Applies `gate` in place.
    pub fn apply(&mut self, gate: &Gate) -> Result<()> {
        for q in gate.qubits() {
            self.check_qubit(q)?;
        }
        match *gate {
            Gate::Cnot { control, target } => {
                if control == target {
                    return Err(Error::SameControlTarget(control));
                }
                let (cm, tm) = (self.mask(control), self.mask(target));
                for i in 0..self.amplitudes.len() {
                    if i & cm != 0 && i & tm == 0 {
                        self.amplitudes.swap(i, i | tm);
                    }
                }
            }
            Gate::Rx { qubit, .. }
            | Gate::Rz { qubit, .. }
            | Gate::X(qubit)
            | Gate::Y(qubit)
            | Gate::Z(qubit)
            | Gate::H(qubit) => {
                let m = gate.matrix();
                let (m00, m01, m10, m11) = (m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]);
                let mask = self.mask(qubit);
                for i in 0..self.amplitudes.len() {
                    if i & mask == 0 {
                        let a0 = self.amplitudes[i];
                        let a1 = self.amplitudes[i | mask];
                        self.amplitudes[i] = m00 * a0 + m01 * a1;
                        self.amplitudes[i | mask] = m10 * a0 + m11 * a1;
                    }
                }
            }
        }
        Ok(())
    }

    /// Returns the transformed state, leaving `self` untouched.
    pub fn apply_gate(&self, gate: &Gate) -> Result<Self> {
        let mut out = self.clone();
        out.apply(gate)?;
        Ok(out)
    }

    pub fn index_of(&self, bitstring: &str) -> Result<usize> {
        let bad = || Error::InvalidBitstring {
            bitstring: bitstring.to_string(),
            n_qubits: self.n_qubits,
        };
        if bitstring.len() != self.n_qubits {
            return Err(bad());
        }
        bitstring.chars().try_fold(0usize, |acc, ch| match ch {
            '0' => Ok(acc << 1),
            '1' => Ok((acc << 1) | 1),
            _ => Err(bad()),
        })
    }

    pub fn bitstring_of(&self, index: usize) -> String {
        format_bits(index, self.n_qubits)
    }

    /// |⟨bitstring|ψ⟩|².
    pub fn exact_probability(&self, bitstring: &str) -> Result<f64> {
        let idx = self.index_of(bitstring)?;
        Ok(self.amplitudes[idx].norm_sqr())
    }

    /// Draws `shots` projective measurements of the full register.
    ///
    /// Pure in `(state, shots, seed)`.
    pub fn sample(&self, shots: u64, seed: u64) -> Result<ShotHistogram> {
        if shots == 0 {
            return Err(Error::ZeroShots);
        }
        let mut cumulative = Vec::with_capacity(self.amplitudes.len());
        let mut acc = 0.0;
        for p in self.probabilities() {
            acc += p;
            cumulative.push(acc);
        }
        let total = acc;
        let mut counts = vec![0u64; self.amplitudes.len()];
        let mut rng = ShotRng::seed_from_u64(seed);
        for _ in 0..shots {
            let u: f64 = rng.gen::<f64>() * total;
            let idx = cumulative.partition_point(|&c| c <= u).min(counts.len() - 1);
            counts[idx] += 1;
        }
        let counts = counts
            .into_iter()
            .enumerate()
            .filter(|&(_, c)| c > 0)
            .map(|(i, c)| (self.bitstring_of(i), c))
            .collect();
        Ok(ShotHistogram {
            n_qubits: self.n_qubits,
            counts,
            shots,
        })
    }
}

fn check_width(n_qubits: usize) -> Result<()> {
    if n_qubits == 0 {
        return Err(Error::EmptyRegister);
    }
    if n_qubits > MAX_QUBITS {
        return Err(Error::TooWide {
            requested: n_qubits,
            max: MAX_QUBITS,
        });
    }
    Ok(())
}

pub(crate) fn format_bits(index: usize, n_qubits: usize) -> String {
    (0..n_qubits)
        .map(|k| if index >> (n_qubits - 1 - k) & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Measurement outcomes keyed by bitstring (character k = qubit k).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShotHistogram {
    n_qubits: usize,
    counts: BTreeMap<String, u64>,
    shots: u64,
}

impl ShotHistogram {
    /// Validates and wraps externally supplied counts.
    pub fn from_counts<I, S>(n_qubits: usize, counts: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, u64)>,
        S: Into<String>,
    {
        check_width(n_qubits)?;
        let mut map = BTreeMap::new();
        for (key, count) in counts {
            let key: String = key.into();
            if key.len() != n_qubits || !key.chars().all(|c| c == '0' || c == '1') {
                return Err(Error::InvalidBitstring { bitstring: key, n_qubits });
            }
            if count > 0 {
                *map.entry(key).or_insert(0) += count;
            }
        }
        let shots: u64 = map.values().sum();
        if shots == 0 {
            return Err(Error::EmptyHistogram);
        }
        Ok(Self {
            n_qubits,
            counts: map,
            shots,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn shots(&self) -> u64 {
        self.shots
    }

    pub fn counts(&self) -> &BTreeMap<String, u64> {
        &self.counts
    }

    pub fn count(&self, bitstring: &str) -> u64 {
        self.counts.get(bitstring).copied().unwrap_or(0)
    }

    /// Empirical probability of each basis index.
    pub fn frequencies(&self) -> Vec<f64> {
        let mut out = vec![0.0; 1 << self.n_qubits];
        for (key, &count) in &self.counts {
            let idx = key.chars().fold(0usize, |acc, c| (acc << 1) | usize::from(c == '1'));
            out[idx] = count as f64 / self.shots as f64;
        }
        out
    }
}
