//! The two-spin-orbital H⁻ Hamiltonian.
//!
//! The ion is modelled with two modes (inner and outer electron orbital),
//! a one-body energy per mode and a single two-body constant. The fermionic
//! operator is assembled from those constants and then pushed through one
//! of the qubit encodings, so every encoding sees the same physics.
//!
//! Under Jordan-Wigner the default (`TwoBodySign::Plus`) form is
//!
//! ```text
//! H = ½h₀₀(1 − Z₀) + ½h₁₁(1 − Z₁) + ⅛h₀₁₁₀(1 − Z₀ − Z₁ + Z₀Z₁)
//! ```
//!
//! and the diagonal energy of occupation state `|n₀n₁⟩` is
//! `h₀₀n₀ + h₁₁n₁ + ½h₀₁₁₀n₀n₁`.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::fermion::{encode, Encoding, FermionOperator, FermionTerm, LadderOp};
use crate::pauli::PauliSum;

/// Sign convention for the one-body integrals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignConvention {
    /// h₀₀ = h₁₁ = +0.5 as printed; the spectrum is non-negative.
    PaperLiteral,
    /// h₀₀ = h₁₁ = −0.5, the bound-electron sign.
    Physical,
}

/// Sign of the `Z₀Z₁` term in the two-body part.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TwoBodySign {
    /// `⅛h(1 − Z₀ − Z₁ + Z₀Z₁)`, i.e. `½h·n₀n₁`.
    Plus,
    /// `⅛h(1 − Z₀ − Z₁ − Z₀Z₁)`, the form used in the measured energy expression.
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegralSet {
    h00: f64,
    h11: f64,
    h0110: f64,
    sign_convention: SignConvention,
}

impl IntegralSet {
    pub const TWO_BODY: f64 = 0.625;

    pub fn new(sign_convention: SignConvention) -> Self {
        let one_body = match sign_convention {
            SignConvention::PaperLiteral => 0.5,
            SignConvention::Physical => -0.5,
        };
        Self {
            h00: one_body,
            h11: one_body,
            h0110: Self::TWO_BODY,
            sign_convention,
        }
    }

    pub fn h00(&self) -> f64 {
        self.h00
    }

    pub fn h11(&self) -> f64 {
        self.h11
    }

    /// The single two-body constant (used for both h₀₁₀₁ and h₀₁₁₀).
    pub fn h0110(&self) -> f64 {
        self.h0110
    }

    pub fn sign_convention(&self) -> SignConvention {
        self.sign_convention
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HamiltonianSpec {
    pub encoding: Encoding,
    pub integrals: IntegralSet,
    pub two_body_sign: TwoBodySign,
}

impl Default for HamiltonianSpec {
    fn default() -> Self {
        Self {
            encoding: Encoding::JordanWigner,
            integrals: IntegralSet::new(SignConvention::Physical),
            two_body_sign: TwoBodySign::Plus,
        }
    }
}

impl HamiltonianSpec {
    pub fn new(encoding: Encoding, sign_convention: SignConvention, two_body_sign: TwoBodySign) -> Self {
        Self {
            encoding,
            integrals: IntegralSet::new(sign_convention),
            two_body_sign,
        }
    }
}

fn number(mode: usize) -> Vec<LadderOp> {
    vec![LadderOp::create(mode), LadderOp::annihilate(mode)]
}

/// Fermionic H⁻ operator for arbitrary integral values.
///
/// The two-body part uses the symmetric pair `a₀†a₁†a₁a₀` and
/// `a₁†a₀†a₀a₁` (h₀₁₁₀ = h₁₀₀₁), each weighted `¼h`, which is `½h·n₀n₁`.
/// The `Minus` variant instead carries `h(−¼ + ½n₀ + ½n₁ − ½n₀n₁)`.
pub fn fermion_hamiltonian_from_values(h00: f64, h11: f64, h0110: f64, two_body_sign: TwoBodySign) -> FermionOperator {
    let mut terms = vec![FermionTerm::new(h00, number(0)), FermionTerm::new(h11, number(1))];
    let pair = |c: f64| {
        [
            FermionTerm::new(
                c / 2.0,
                vec![LadderOp::create(0), LadderOp::create(1), LadderOp::annihilate(1), LadderOp::annihilate(0)],
            ),
            FermionTerm::new(
                c / 2.0,
                vec![LadderOp::create(1), LadderOp::create(0), LadderOp::annihilate(0), LadderOp::annihilate(1)],
            ),
        ]
    };
    match two_body_sign {
        TwoBodySign::Plus => terms.extend(pair(h0110 / 2.0)),
        TwoBodySign::Minus => {
            terms.push(FermionTerm::scalar(-h0110 / 4.0));
            terms.push(FermionTerm::new(h0110 / 2.0, number(0)));
            terms.push(FermionTerm::new(h0110 / 2.0, number(1)));
            terms.extend(pair(-h0110 / 2.0));
        }
    }
    FermionOperator::new(2, terms).expect("modes 0 and 1 fit a two-mode operator")
}

pub fn fermion_hamiltonian(integrals: &IntegralSet, two_body_sign: TwoBodySign) -> FermionOperator {
    fermion_hamiltonian_from_values(integrals.h00, integrals.h11, integrals.h0110, two_body_sign)
}

/// Qubit Hamiltonian for a full spec.
pub fn build_hamiltonian(spec: &HamiltonianSpec) -> Result<PauliSum> {
    encode(&fermion_hamiltonian(&spec.integrals, spec.two_body_sign), spec.encoding)
}

pub fn build_hamiltonian_from_values(
    h00: f64,
    h11: f64,
    h0110: f64,
    encoding: Encoding,
    two_body_sign: TwoBodySign,
) -> Result<PauliSum> {
    encode(&fermion_hamiltonian_from_values(h00, h11, h0110, two_body_sign), encoding)
}

/// Literature energies for the ion and its neighbours (Hartree).
///
/// Annotations for reports and plots; nothing optimizes toward them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReferenceEnergies {
    /// Chandrasekhar wavefunction with explicit r₁₂ correlation.
    pub chandrasekhar_correlated: f64,
    /// Chandrasekhar two-exponent wavefunction without the r₁₂ factor.
    pub chandrasekhar_uncorrelated: f64,
    /// Theoretical line drawn on the published convergence plots.
    pub theoretical_line: f64,
    pub hydrogen_atom: f64,
    /// Perturbative / uncorrelated variational estimate.
    pub hartree_fock_no_correlation: f64,
}

pub fn reference_energies() -> ReferenceEnergies {
    ReferenceEnergies {
        chandrasekhar_correlated: -0.52592,
        chandrasekhar_uncorrelated: -0.51330,
        theoretical_line: -0.52952,
        hydrogen_atom: -0.5,
        hartree_fock_no_correlation: -0.375,
    }
}

/// A published run result, kept for side-by-side printing.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PublishedValue {
    pub label: &'static str,
    pub value: f64,
}

/// Converged energies of the published optimizer runs.
pub const PUBLISHED_OPTIMIZER_ENERGIES: [PublishedValue; 6] = [
    PublishedValue { label: "cobyla (simulator)", value: -0.468070601028 },
    PublishedValue { label: "cobyla (ibmqx2)", value: -0.407087502741 },
    PublishedValue { label: "powell (simulator)", value: -0.46513997401 },
    PublishedValue { label: "nelder-mead (simulator)", value: -0.467324316239 },
    PublishedValue { label: "bravyi-kitaev (simulator)", value: -0.499711186 },
    PublishedValue { label: "jordan-wigner (simulator)", value: -0.5339355468 },
];

/// Variance reported for the −0.507891 Hartree hardware run.
pub const PUBLISHED_HARDWARE_VARIANCE: f64 = 0.0870538;
