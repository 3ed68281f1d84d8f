//! Fermion-to-qubit encodings.
//!
//! Mode `j` maps to qubit `j`. Jordan-Wigner is implemented directly from
//! `a_j = Q_j ⊗ Z_{j-1} ⊗ … ⊗ Z_0`, `Q = (X + iY)/2`. The parity and
//! Bravyi-Kitaev encodings go through a binary matrix `B` with qubit state
//! `b = B f (mod 2)`; from `B` and its GF(2) inverse we read off
//!
//! * the update set `U(j) = { i : B[i][j] = 1 }` (qubits flipped with `f_j`),
//! * the occupation set `F(j) = { i : B⁻¹[j][i] = 1 }` (`f_j` as a qubit parity),
//! * the parity set `P(j) = { i : Σ_{k<j} B⁻¹[k][i] = 1 }` (sign string),
//!
//! and `a_j† = X_{U(j)} · ½(I + Z_{F(j)}) · Z_{P(j)}`, `a_j = (a_j†)†`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{FermionOperator, Ladder};
use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliOperator, PauliSum, PauliTerm, Phase};

/// Largest mode count the encoders accept.
pub const MAX_MODES: usize = 8;

/// Imaginary residue tolerated when an encoded image is declared hermitian.
const ENCODING_HERMITIAN_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Encoding {
    JordanWigner,
    Parity,
    BravyiKitaev,
}

impl Encoding {
    pub const ALL: [Encoding; 3] = [Encoding::JordanWigner, Encoding::Parity, Encoding::BravyiKitaev];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EncodingKind {
    /// Identity matrix: qubits store occupations (Jordan-Wigner through the matrix path).
    Occupation,
    Parity,
    BravyiKitaev,
}

/// Invertible binary matrix taking occupation numbers to qubit values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncodingMatrix {
    kind: EncodingKind,
    entries: Vec<Vec<bool>>,
    inverse: Vec<Vec<bool>>,
}

impl EncodingMatrix {
    pub fn build(kind: EncodingKind, n: usize) -> Result<Self> {
        if n == 0 || n > MAX_MODES {
            return Err(Error::TooWide {
                requested: n,
                max: MAX_MODES,
            });
        }
        let entries = match kind {
            EncodingKind::Occupation => (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect(),
            EncodingKind::Parity => (0..n).map(|i| (0..n).map(|j| j <= i).collect()).collect(),
            EncodingKind::BravyiKitaev => bravyi_kitaev_entries(n),
        };
        let inverse = gf2_inverse(&entries).ok_or(Error::SingularEncoding)?;
        Ok(Self { kind, entries, inverse })
    }

    pub fn kind(&self) -> EncodingKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<bool>] {
        &self.entries
    }

    /// Rows as `0`/`1` strings, e.g. `["1000", "1100", ...]`.
    pub fn row_strings(&self) -> Vec<String> {
        self.entries
            .iter()
            .map(|r| r.iter().map(|&b| if b { '1' } else { '0' }).collect())
            .collect()
    }

    pub fn inverse(&self) -> &[Vec<bool>] {
        &self.inverse
    }

    pub fn update_set(&self, mode: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.entries[i][mode]).collect()
    }

    pub fn occupation_set(&self, mode: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.inverse[mode][i]).collect()
    }

    pub fn parity_set(&self, mode: usize) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| (0..mode).filter(|&k| self.inverse[k][i]).count() % 2 == 1)
            .collect()
    }

    /// Qubit image of `a_mode†`.
    fn creation_image(&self, mode: usize) -> Result<PauliOperator> {
        let n = self.dim();
        let half = Complex64::new(0.5, 0.0);
        let flips = PauliOperator::from_term(Complex64::new(1.0, 0.0), &string_on(n, &self.update_set(mode), Pauli::X));
        let projector = PauliOperator::identity(n)
            .scale(half)
            .add(&PauliOperator::from_term(half, &string_on(n, &self.occupation_set(mode), Pauli::Z)))?;
        let signs = PauliOperator::from_term(Complex64::new(1.0, 0.0), &string_on(n, &self.parity_set(mode), Pauli::Z));
        flips.multiply(&projector)?.multiply(&signs)
    }
}

/// Standard recursive construction on the next power of two, truncated:
/// `β₁ = [1]`, `β₂ₖ = [[βₖ, 0], [Aₖ, βₖ]]` with `Aₖ` zero except an
/// all-ones last row.
fn bravyi_kitaev_entries(n: usize) -> Vec<Vec<bool>> {
    let mut size = 1;
    let mut beta = vec![vec![true]];
    while size < n {
        let mut next = vec![vec![false; 2 * size]; 2 * size];
        for (i, row) in beta.iter().enumerate() {
            next[i][..size].copy_from_slice(row);
            next[i + size][size..].copy_from_slice(row);
        }
        next[2 * size - 1][..size].fill(true);
        beta = next;
        size *= 2;
    }
    beta.into_iter().take(n).map(|r| r.into_iter().take(n).collect()).collect()
}

/// Gauss-Jordan inversion over GF(2).
fn gf2_inverse(m: &[Vec<bool>]) -> Option<Vec<Vec<bool>>> {
    let n = m.len();
    let mut a: Vec<Vec<bool>> = m.to_vec();
    let mut inv: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| a[r][col])?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        for r in 0..n {
            if r != col && a[r][col] {
                for c in 0..n {
                    a[r][c] ^= a[col][c];
                    inv[r][c] ^= inv[col][c];
                }
            }
        }
    }
    Some(inv)
}

fn string_on(n: usize, qubits: &[usize], pauli: Pauli) -> PauliTerm {
    let mut ops = vec![Pauli::I; n];
    for &q in qubits {
        ops[q] = pauli;
    }
    PauliTerm::new(ops, Phase::ONE)
}

fn check_modes(op: &FermionOperator) -> Result<()> {
    if op.mode_count() > MAX_MODES {
        return Err(Error::TooWide {
            requested: op.mode_count(),
            max: MAX_MODES,
        });
    }
    Ok(())
}

/// Expands every product with the given per-mode images.
fn map_operator(op: &FermionOperator, creators: &[PauliOperator], annihilators: &[PauliOperator]) -> Result<PauliOperator> {
    let n = op.mode_count();
    let mut out = PauliOperator::zero(n);
    for term in op.terms() {
        let mut prod = PauliOperator::identity(n).scale(term.coefficient);
        for f in &term.factors {
            let image = match f.kind {
                Ladder::Create => &creators[f.mode],
                Ladder::Annihilate => &annihilators[f.mode],
            };
            prod = prod.multiply(image)?;
        }
        out = out.add(&prod)?;
    }
    Ok(out)
}

/// Jordan-Wigner image without the hermiticity requirement.
pub fn jordan_wigner_operator(op: &FermionOperator) -> Result<PauliOperator> {
    check_modes(op)?;
    let n = op.mode_count();
    let half = Complex64::new(0.5, 0.0);
    let half_i = Complex64::new(0.0, 0.5);
    let annihilators: Vec<PauliOperator> = (0..n)
        .map(|j| {
            let with = |p: Pauli| {
                let mut ops = vec![Pauli::I; n];
                ops[..j].fill(Pauli::Z);
                ops[j] = p;
                PauliTerm::new(ops, Phase::ONE)
            };
            // Q_j ⊗ Z_{j-1} ⊗ … ⊗ Z_0 with Q = (X + iY)/2
            let mut a = PauliOperator::from_term(half, &with(Pauli::X));
            a.add_term(half_i, &with(Pauli::Y));
            a
        })
        .collect();
    let creators: Vec<PauliOperator> = annihilators.iter().map(PauliOperator::adjoint).collect();
    map_operator(op, &creators, &annihilators)
}

/// Jordan-Wigner image of a hermitian operator.
pub fn jordan_wigner(op: &FermionOperator) -> Result<PauliSum> {
    jordan_wigner_operator(op)?.to_hermitian(ENCODING_HERMITIAN_TOLERANCE)
}

/// Image under a matrix encoding, without the hermiticity requirement.
pub fn encoded_transform_operator(op: &FermionOperator, matrix: &EncodingMatrix) -> Result<PauliOperator> {
    check_modes(op)?;
    if op.mode_count() != matrix.dim() {
        return Err(Error::EncodingDimension {
            matrix: matrix.dim(),
            modes: op.mode_count(),
        });
    }
    let creators = (0..matrix.dim())
        .map(|j| matrix.creation_image(j))
        .collect::<Result<Vec<_>>>()?;
    let annihilators: Vec<PauliOperator> = creators.iter().map(PauliOperator::adjoint).collect();
    map_operator(op, &creators, &annihilators)
}

/// Image of a hermitian operator under a matrix encoding.
pub fn encoded_transform(op: &FermionOperator, matrix: &EncodingMatrix) -> Result<PauliSum> {
    encoded_transform_operator(op, matrix)?.to_hermitian(ENCODING_HERMITIAN_TOLERANCE)
}

/// Dispatches on [`Encoding`].
pub fn encode_operator(op: &FermionOperator, encoding: Encoding) -> Result<PauliOperator> {
    match encoding {
        Encoding::JordanWigner => jordan_wigner_operator(op),
        Encoding::Parity => {
            encoded_transform_operator(op, &EncodingMatrix::build(EncodingKind::Parity, op.mode_count())?)
        }
        Encoding::BravyiKitaev => {
            encoded_transform_operator(op, &EncodingMatrix::build(EncodingKind::BravyiKitaev, op.mode_count())?)
        }
    }
}

pub fn encode(op: &FermionOperator, encoding: Encoding) -> Result<PauliSum> {
    encode_operator(op, encoding)?.to_hermitian(ENCODING_HERMITIAN_TOLERANCE)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fermion::LadderOp;

    #[test]
    fn published_four_mode_matrices() {
        let parity = EncodingMatrix::build(EncodingKind::Parity, 4).unwrap();
        assert_eq!(parity.row_strings(), ["1000", "1100", "1110", "1111"]);
        let bk = EncodingMatrix::build(EncodingKind::BravyiKitaev, 4).unwrap();
        assert_eq!(bk.row_strings(), ["1000", "1100", "0010", "1111"]);
        assert_eq!(EncodingMatrix::build(EncodingKind::BravyiKitaev, 1).unwrap().row_strings(), ["1"]);
    }

    #[test]
    fn unsupported_sizes() {
        assert!(EncodingMatrix::build(EncodingKind::Parity, 0).is_err());
        assert!(EncodingMatrix::build(EncodingKind::BravyiKitaev, 9).is_err());
    }

    #[test]
    fn inverses_are_inverses() {
        for n in 1..=8 {
            for kind in [EncodingKind::Occupation, EncodingKind::Parity, EncodingKind::BravyiKitaev] {
                let m = EncodingMatrix::build(kind, n).unwrap();
                for i in 0..n {
                    for j in 0..n {
                        let v = (0..n).filter(|&k| m.entries()[i][k] && m.inverse()[k][j]).count() % 2 == 1;
                        assert_eq!(v, i == j, "{kind:?} n={n}");
                    }
                }
            }
        }
    }

    #[test]
    fn bravyi_kitaev_sets_for_four_modes() {
        let bk = EncodingMatrix::build(EncodingKind::BravyiKitaev, 4).unwrap();
        // qubit 3 holds the total parity, qubit 1 the parity of modes 0 and 1
        assert_eq!(bk.update_set(0), vec![0, 1, 3]);
        assert_eq!(bk.update_set(2), vec![2, 3]);
        assert_eq!(bk.parity_set(2), vec![1]);
        assert_eq!(bk.parity_set(3), vec![1, 2]);
        assert_eq!(bk.occupation_set(1), vec![0, 1]);
        assert_eq!(bk.occupation_set(3), vec![1, 2, 3]);
    }

    #[test]
    fn number_operator_under_jordan_wigner() {
        let n0 = FermionOperator::term(1, 1.0, vec![LadderOp::create(0), LadderOp::annihilate(0)]).unwrap();
        let h = jordan_wigner(&n0).unwrap();
        assert_eq!(h.coefficient("I"), 0.5);
        assert_eq!(h.coefficient("Z"), -0.5);
        assert_eq!(h.len(), 2);
    }

    #[test]
    fn one_mode_encodings_coincide() {
        let op = FermionOperator::parse(1, "0.7 0^ 0\n-0.2").unwrap();
        let jw = encode(&op, Encoding::JordanWigner).unwrap();
        for e in [Encoding::Parity, Encoding::BravyiKitaev] {
            assert_eq!(encode(&op, e).unwrap(), jw);
        }
    }

    #[test]
    fn dimension_mismatch() {
        let op = FermionOperator::parse(2, "1 0^ 0").unwrap();
        let m = EncodingMatrix::build(EncodingKind::Parity, 3).unwrap();
        assert_eq!(
            encoded_transform(&op, &m),
            Err(Error::EncodingDimension { matrix: 3, modes: 2 })
        );
    }

    #[test]
    fn non_hermitian_input_is_reported() {
        let op = FermionOperator::parse(2, "1 0^ 1").unwrap();
        assert!(matches!(jordan_wigner(&op), Err(Error::NonHermitian { .. })));
        assert!(jordan_wigner_operator(&op).is_ok());
    }

    #[test]
    fn cross_mode_anticommutator_maps_to_zero() {
        let op = FermionOperator::parse(2, "1 0 1^\n1 1^ 0").unwrap();
        for e in Encoding::ALL {
            assert!(encode_operator(&op, e).unwrap().is_zero(), "{e:?}");
        }
    }
}
