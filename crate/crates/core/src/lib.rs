//! Variational eigensolver toolkit for the two-orbital H⁻ ion.
//!
//! Builds the fermionic Hamiltonian, maps it to qubits under the
//! Jordan-Wigner, parity or Bravyi-Kitaev encodings, prepares a
//! hardware-efficient ansatz on a dense state-vector simulator and
//! minimizes the shot-estimated energy.

pub mod error;
pub mod fermion;
pub mod hminus;
pub mod linalg;
pub mod optimize;
pub mod pauli;
pub mod statevector;
pub mod vqe;

pub use error::{Error, Result};
pub use fermion::{Encoding, FermionOperator, FermionTerm, LadderOp};
pub use hminus::{build_hamiltonian, HamiltonianSpec, IntegralSet, SignConvention, TwoBodySign};
pub use optimize::{minimize, Method, Objective, OptimizerConfig, OptimizerTrace, TerminalReason};
pub use pauli::{Pauli, PauliSum, PauliTerm};
pub use statevector::{Gate, ShotHistogram, StateVector};
pub use vqe::{AnsatzConfig, EnergyEstimate, EnergyInput, ParameterVector, VqeProblem};
