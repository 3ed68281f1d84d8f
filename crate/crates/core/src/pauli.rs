//! Pauli strings, exact phase bookkeeping and weighted Pauli sums.
//!
//! Character `k` of a letter string acts on qubit `k`, the most significant
//! bit of a basis index (same convention as [`crate::statevector`]).
//!
//! [`PauliSum`] is the hermitian, real-coefficient Hamiltonian type.
//! [`PauliOperator`] carries complex coefficients and is what fermion
//! encodings produce before they are checked for hermiticity.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::statevector::{StateVector, MAX_QUBITS};

/// Coefficients with magnitude below this are dropped on canonicalization.
pub const DROP_TOLERANCE: f64 = 1e-14;

/// Imaginary residue silently truncated when converting to a [`PauliSum`].
pub const HERMITIAN_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn letter(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }

    /// Single-qubit product `self · rhs` as (phase, letter).
    pub fn compose(self, rhs: Pauli) -> (Phase, Pauli) {
        use Pauli::*;
        match (self, rhs) {
            (I, p) | (p, I) => (Phase::ONE, p),
            (X, X) | (Y, Y) | (Z, Z) => (Phase::ONE, I),
            (X, Y) => (Phase::I, Z),
            (Y, X) => (Phase::MINUS_I, Z),
            (Y, Z) => (Phase::I, X),
            (Z, Y) => (Phase::MINUS_I, X),
            (Z, X) => (Phase::I, Y),
            (X, Z) => (Phase::MINUS_I, Y),
        }
    }

    pub fn matrix(self) -> DenseMatrix {
        let c = Complex64::new;
        let rows = match self {
            Pauli::I => [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]],
            Pauli::X => [[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]],
            Pauli::Y => [[c(0.0, 0.0), c(0.0, -1.0)], [c(0.0, 1.0), c(0.0, 0.0)]],
            Pauli::Z => [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(-1.0, 0.0)]],
        };
        DenseMatrix::from_rows(&[rows[0].to_vec(), rows[1].to_vec()])
    }
}

/// Element of the cyclic group {1, i, -1, -i}, stored as a power of i.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Phase(u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    pub fn from_power(power: u8) -> Self {
        Phase(power & 3)
    }

    pub fn power(self) -> u8 {
        self.0
    }

    pub fn conj(self) -> Self {
        Phase((4 - self.0) & 3)
    }

    pub fn to_complex(self) -> Complex64 {
        match self.0 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        }
    }
}

impl std::ops::Mul for Phase {
    type Output = Phase;

    fn mul(self, rhs: Phase) -> Phase {
        Phase((self.0 + rhs.0) & 3)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.0 {
            0 => "+",
            1 => "+i",
            2 => "-",
            _ => "-i",
        })
    }
}

/// A tensor product of single-qubit Paulis with an exact phase.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PauliTerm {
    ops: Vec<Pauli>,
    phase: Phase,
}

impl PauliTerm {
    pub fn new(ops: Vec<Pauli>, phase: Phase) -> Self {
        Self { ops, phase }
    }

    pub fn identity(n_qubits: usize) -> Self {
        Self::new(vec![Pauli::I; n_qubits], Phase::ONE)
    }

    /// `pauli` on `qubit`, identity elsewhere.
    pub fn single(n_qubits: usize, qubit: usize, pauli: Pauli) -> Self {
        let mut ops = vec![Pauli::I; n_qubits];
        ops[qubit] = pauli;
        Self::new(ops, Phase::ONE)
    }

    /// Parses a letter string such as `"XZI"` with phase +1.
    pub fn from_letters(letters: &str) -> Result<Self> {
        parse_letters(letters).map(|ops| Self::new(ops, Phase::ONE))
    }

    pub fn ops(&self) -> &[Pauli] {
        &self.ops
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn width(&self) -> usize {
        self.ops.len()
    }

    pub fn letters(&self) -> String {
        letters(&self.ops)
    }

    pub fn multiply(&self, rhs: &PauliTerm) -> Result<PauliTerm> {
        if self.width() != rhs.width() {
            return Err(Error::WidthMismatch {
                left: self.width(),
                right: rhs.width(),
            });
        }
        let mut phase = self.phase * rhs.phase;
        let ops = self
            .ops
            .iter()
            .zip(&rhs.ops)
            .map(|(&a, &b)| {
                let (p, op) = a.compose(b);
                phase = phase * p;
                op
            })
            .collect();
        Ok(PauliTerm { ops, phase })
    }

    /// Kronecker product of the single-qubit matrices, times the phase.
    pub fn to_matrix(&self) -> Result<DenseMatrix> {
        check_matrix_width(self.width())?;
        let m = self
            .ops
            .iter()
            .fold(DenseMatrix::identity(1), |acc, p| acc.kron(&p.matrix()));
        Ok(m.scale(self.phase.to_complex()))
    }
}

impl fmt::Display for PauliTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.phase, self.letters())
    }
}

fn letters(ops: &[Pauli]) -> String {
    ops.iter().map(|p| p.letter()).collect()
}

fn parse_letters(s: &str) -> Result<Vec<Pauli>> {
    s.chars()
        .map(|c| {
            Pauli::from_letter(c).ok_or_else(|| Error::Parse {
                line: 0,
                message: format!("invalid Pauli letter {c:?} in {s:?}"),
            })
        })
        .collect()
}

fn check_matrix_width(n: usize) -> Result<()> {
    if n > MAX_QUBITS {
        return Err(Error::TooWide {
            requested: n,
            max: MAX_QUBITS,
        });
    }
    Ok(())
}

/// Action of a phase-free Pauli string on basis index `x`:
/// returns the image index and the scalar picked up.
fn act_on_basis(ops: &[Pauli], x: usize) -> (usize, Complex64) {
    let n = ops.len();
    let mut out = x;
    let mut phase = Phase::ONE;
    for (k, op) in ops.iter().enumerate() {
        let mask = 1 << (n - 1 - k);
        let bit = x & mask != 0;
        match op {
            Pauli::I => {}
            Pauli::X => out ^= mask,
            Pauli::Y => {
                out ^= mask;
                phase = phase * if bit { Phase::MINUS_I } else { Phase::I };
            }
            Pauli::Z => {
                if bit {
                    phase = phase * Phase::MINUS_ONE;
                }
            }
        }
    }
    (out, phase.to_complex())
}

/// ⟨ψ|P|ψ⟩ for a phase-free Pauli string, by direct action on amplitudes.
fn string_expectation(ops: &[Pauli], amps: &[Complex64]) -> Complex64 {
    amps.iter()
        .enumerate()
        .map(|(x, a)| {
            let (y, ph) = act_on_basis(ops, x);
            amps[y].conj() * ph * a
        })
        .sum()
}

/// Complex-weighted sum of phase-free Pauli strings.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliOperator {
    n_qubits: usize,
    terms: BTreeMap<Vec<Pauli>, Complex64>,
}

impl PauliOperator {
    pub fn zero(n_qubits: usize) -> Self {
        Self {
            n_qubits,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(n_qubits: usize) -> Self {
        Self::from_term(Complex64::new(1.0, 0.0), &PauliTerm::identity(n_qubits))
    }

    /// `coeff · term`, with the term's phase folded into the coefficient.
    pub fn from_term(coeff: Complex64, term: &PauliTerm) -> Self {
        let mut op = Self::zero(term.width());
        op.add_term(coeff, term);
        op
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[Pauli], Complex64)> {
        self.terms.iter().map(|(k, &v)| (k.as_slice(), v))
    }

    pub fn coefficient(&self, letters: &str) -> Complex64 {
        parse_letters(letters)
            .ok()
            .and_then(|k| self.terms.get(&k).copied())
            .unwrap_or_default()
    }

    pub fn add_term(&mut self, coeff: Complex64, term: &PauliTerm) {
        assert_eq!(term.width(), self.n_qubits, "term width must match operator width");
        let value = coeff * term.phase().to_complex();
        let entry = self.terms.entry(term.ops().to_vec()).or_default();
        *entry += value;
        if entry.norm() < DROP_TOLERANCE {
            self.terms.remove(term.ops());
        }
    }

    pub fn add(&self, rhs: &PauliOperator) -> Result<PauliOperator> {
        self.check_width(rhs)?;
        let mut out = self.clone();
        for (ops, &c) in &rhs.terms {
            out.add_term(c, &PauliTerm::new(ops.clone(), Phase::ONE));
        }
        Ok(out)
    }

    pub fn scale(&self, factor: Complex64) -> PauliOperator {
        let mut out = Self::zero(self.n_qubits);
        for (ops, &c) in &self.terms {
            out.add_term(c * factor, &PauliTerm::new(ops.clone(), Phase::ONE));
        }
        out
    }

    /// Operator product `self · rhs`, expanded term by term.
    pub fn multiply(&self, rhs: &PauliOperator) -> Result<PauliOperator> {
        self.check_width(rhs)?;
        let mut out = Self::zero(self.n_qubits);
        for (a_ops, &a) in &self.terms {
            let a_term = PauliTerm::new(a_ops.clone(), Phase::ONE);
            for (b_ops, &b) in &rhs.terms {
                let prod = a_term.multiply(&PauliTerm::new(b_ops.clone(), Phase::ONE))?;
                out.add_term(a * b, &prod);
            }
        }
        Ok(out)
    }

    pub fn adjoint(&self) -> PauliOperator {
        Self {
            n_qubits: self.n_qubits,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v.conj())).collect(),
        }
    }

    pub fn to_matrix(&self) -> Result<DenseMatrix> {
        check_matrix_width(self.n_qubits)?;
        let mut m = DenseMatrix::zeros(1 << self.n_qubits);
        for (ops, &c) in &self.terms {
            m = &m + &PauliTerm::new(ops.clone(), Phase::ONE).to_matrix()?.scale(c);
        }
        Ok(m)
    }

    /// Converts to a real-coefficient [`PauliSum`].
    ///
    /// Imaginary parts up to `tolerance` are dropped; anything larger is
    /// reported as a non-hermitian residue.
    pub fn to_hermitian(&self, tolerance: f64) -> Result<PauliSum> {
        let mut sum = PauliSum::zero(self.n_qubits);
        for (ops, c) in &self.terms {
            if c.im.abs() > tolerance {
                return Err(Error::NonHermitian {
                    term: letters(ops),
                    residue: c.im.abs(),
                });
            }
            sum.add_ops(c.re, ops.clone());
        }
        Ok(sum)
    }

    fn check_width(&self, rhs: &PauliOperator) -> Result<()> {
        if self.n_qubits != rhs.n_qubits {
            return Err(Error::WidthMismatch {
                left: self.n_qubits,
                right: rhs.n_qubits,
            });
        }
        Ok(())
    }
}

/// Real-weighted, canonical sum of Pauli strings (a qubit Hamiltonian).
///
/// Each letter pattern appears at most once and no stored coefficient is
/// smaller than [`DROP_TOLERANCE`] in magnitude.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PauliSum {
    n_qubits: usize,
    terms: BTreeMap<Vec<Pauli>, f64>,
}

impl PauliSum {
    pub fn zero(n_qubits: usize) -> Self {
        Self {
            n_qubits,
            terms: BTreeMap::new(),
        }
    }

    /// Builds a sum from `(coefficient, letters)` pairs.
    pub fn from_terms<'a, I>(n_qubits: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (f64, &'a str)>,
    {
        let mut sum = Self::zero(n_qubits);
        for (c, l) in terms {
            sum.add_term(c, l)?;
        }
        Ok(sum)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, coeff: f64, letters: &str) -> Result<()> {
        let ops = parse_letters(letters)?;
        if ops.len() != self.n_qubits {
            return Err(Error::WidthMismatch {
                left: self.n_qubits,
                right: ops.len(),
            });
        }
        self.add_ops(coeff, ops);
        Ok(())
    }

    fn add_ops(&mut self, coeff: f64, ops: Vec<Pauli>) {
        let entry = self.terms.entry(ops.clone()).or_insert(0.0);
        *entry += coeff;
        if entry.abs() < DROP_TOLERANCE {
            self.terms.remove(&ops);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[Pauli], f64)> {
        self.terms.iter().map(|(k, &v)| (k.as_slice(), v))
    }

    /// Coefficient of a letter pattern, zero when absent.
    pub fn coefficient(&self, letters: &str) -> f64 {
        parse_letters(letters)
            .ok()
            .and_then(|k| self.terms.get(&k).copied())
            .unwrap_or(0.0)
    }

    /// True when every term is built from I and Z only.
    pub fn is_diagonal(&self) -> bool {
        self.terms
            .keys()
            .all(|ops| ops.iter().all(|p| matches!(p, Pauli::I | Pauli::Z)))
    }

    pub fn to_operator(&self) -> PauliOperator {
        PauliOperator {
            n_qubits: self.n_qubits,
            terms: self
                .terms
                .iter()
                .map(|(k, &v)| (k.clone(), Complex64::new(v, 0.0)))
                .collect(),
        }
    }

    /// Dense matrix `Σ c · ⊗ σ`.
    pub fn to_matrix(&self) -> Result<DenseMatrix> {
        self.to_operator().to_matrix()
    }

    /// ⟨ψ|H|ψ⟩, evaluated term by term on the amplitudes.
    pub fn exact_expectation(&self, state: &StateVector) -> Result<f64> {
        if state.n_qubits() != self.n_qubits {
            return Err(Error::WidthMismatch {
                left: self.n_qubits,
                right: state.n_qubits(),
            });
        }
        let amps = state.amplitudes();
        let total: Complex64 = self
            .terms
            .iter()
            .map(|(ops, &c)| string_expectation(ops, amps) * c)
            .sum();
        debug_assert!(total.im.abs() < 1e-10, "imaginary residue {}", total.im);
        Ok(total.re)
    }

    /// Ascending eigenvalues of the matrix realization.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        Ok(self.to_matrix()?.hermitian_eigenvalues())
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        Ok(self.eigenvalues()?[0])
    }

    /// Parses the one-term-per-line text form written by `Display`.
    /// Blank lines and lines starting with `#` are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut sum: Option<PauliSum> = None;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| Error::Parse { line: i + 1, message };
            let mut parts = line.split_whitespace();
            let (Some(c), Some(l), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(err(format!("expected `<coefficient> <letters>`, got {line:?}")));
            };
            let coeff: f64 = c.parse().map_err(|e| err(format!("bad coefficient {c:?}: {e}")))?;
            let ops = parse_letters(l).map_err(|_| err(format!("bad Pauli letters {l:?}")))?;
            let s = sum.get_or_insert_with(|| PauliSum::zero(ops.len()));
            if ops.len() != s.n_qubits {
                return Err(err(format!("term {l:?} has width {}, expected {}", ops.len(), s.n_qubits)));
            }
            s.add_ops(coeff, ops);
        }
        sum.ok_or_else(|| Error::Parse {
            line: 0,
            message: "no terms".into(),
        })
    }
}

impl fmt::Display for PauliSum {
    /// One line per term: `<coefficient> <letters>`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (ops, c) in &self.terms {
            writeln!(f, "{c} {}", letters(ops))?;
        }
        Ok(())
    }
}

impl FromStr for PauliSum {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::statevector::Gate;

    fn term(s: &str) -> PauliTerm {
        PauliTerm::from_letters(s).unwrap()
    }

    #[test]
    fn single_qubit_products() {
        let xy = term("X").multiply(&term("Y")).unwrap();
        assert_eq!(xy, PauliTerm::new(vec![Pauli::Z], Phase::I));
        let zz = term("Z").multiply(&term("Z")).unwrap();
        assert_eq!(zz, PauliTerm::new(vec![Pauli::I], Phase::ONE));
    }

    #[test]
    fn two_qubit_product_matches_matrix_product() {
        let a = term("XZ");
        let b = term("YZ");
        let prod = a.multiply(&b).unwrap();
        assert_eq!(prod, PauliTerm::new(vec![Pauli::Z, Pauli::I], Phase::I));
        let dense = &a.to_matrix().unwrap() * &b.to_matrix().unwrap();
        assert!(dense.max_abs_diff(&prod.to_matrix().unwrap()) < 1e-15);
    }

    #[test]
    fn width_mismatch_is_rejected() {
        assert_eq!(
            term("X").multiply(&term("XX")),
            Err(Error::WidthMismatch { left: 1, right: 2 })
        );
    }

    #[test]
    fn matrix_of_single_z() {
        let h = PauliSum::from_terms(1, [(1.0, "Z")]).unwrap();
        let m = h.to_matrix().unwrap();
        assert_eq!(m.diagonal(), vec![Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)]);
        assert_eq!(h.min_eigenvalue().unwrap(), -1.0);
    }

    #[test]
    fn projector_on_first_qubit() {
        // 0.5 (I - Z0): diag(0, 0, 1, 1) with qubit 0 as the leading bit
        let h = PauliSum::from_terms(2, [(0.5, "II"), (-0.5, "ZI")]).unwrap();
        let d: Vec<f64> = h.to_matrix().unwrap().diagonal().iter().map(|c| c.re).collect();
        assert_eq!(d, vec![0.0, 0.0, 1.0, 1.0]);
    }

    #[test]
    fn canonicalization_merges_and_drops() {
        let mut h = PauliSum::zero(2);
        h.add_term(0.25, "ZZ").unwrap();
        h.add_term(0.5, "XI").unwrap();
        h.add_term(-0.25, "ZZ").unwrap();
        assert_eq!(h.len(), 1);
        assert_eq!(h.coefficient("XI"), 0.5);
        assert_eq!(h.coefficient("ZZ"), 0.0);
    }

    #[test]
    fn expectation_values() {
        let z0 = PauliSum::from_terms(2, [(1.0, "ZI")]).unwrap();
        let s = StateVector::zero(2).unwrap();
        assert_eq!(z0.exact_expectation(&s).unwrap(), 1.0);

        let bell = s
            .apply_gate(&Gate::H(0))
            .unwrap()
            .apply_gate(&Gate::Cnot { control: 0, target: 1 })
            .unwrap();
        let zz = PauliSum::from_terms(2, [(1.0, "ZZ")]).unwrap();
        assert!((zz.exact_expectation(&bell).unwrap() - 1.0).abs() < 1e-15);
        let xx = PauliSum::from_terms(2, [(1.0, "XX")]).unwrap();
        assert!((xx.exact_expectation(&bell).unwrap() - 1.0).abs() < 1e-15);
        let yy = PauliSum::from_terms(2, [(1.0, "YY")]).unwrap();
        assert!((yy.exact_expectation(&bell).unwrap() + 1.0).abs() < 1e-15);

        assert!(zz.exact_expectation(&StateVector::zero(3).unwrap()).is_err());
    }

    #[test]
    fn too_wide_for_matrix() {
        let h = PauliSum::from_terms(9, [(1.0, "ZIIIIIIII")]).unwrap();
        assert!(matches!(h.to_matrix(), Err(Error::TooWide { .. })));
        assert!(matches!(h.min_eigenvalue(), Err(Error::TooWide { .. })));
    }

    #[test]
    fn text_format() {
        let h = PauliSum::from_terms(2, [(-0.328125, "ZI"), (0.578125, "II")]).unwrap();
        assert_eq!(h.to_string(), "0.578125 II\n-0.328125 ZI\n");
        assert_eq!(h.to_string().parse::<PauliSum>().unwrap(), h);
        assert!("0.5 ZQ".parse::<PauliSum>().is_err());
        assert!("0.5 ZI\n1 Z".parse::<PauliSum>().is_err());
        assert!("abc ZI".parse::<PauliSum>().is_err());
    }

    #[test]
    fn non_hermitian_operator_is_rejected() {
        let op = PauliOperator::from_term(Complex64::new(0.0, 0.5), &term("X"));
        assert!(matches!(op.to_hermitian(HERMITIAN_TOLERANCE), Err(Error::NonHermitian { .. })));
        let tiny = PauliOperator::from_term(Complex64::new(1.0, 1e-13), &term("X"));
        assert_eq!(tiny.to_hermitian(HERMITIAN_TOLERANCE).unwrap().coefficient("X"), 1.0);
    }

    #[test]
    fn phase_group() {
        assert_eq!(Phase::I * Phase::I, Phase::MINUS_ONE);
        assert_eq!(Phase::I * Phase::MINUS_I, Phase::ONE);
        assert_eq!(Phase::MINUS_I.conj(), Phase::I);
    }
}
