use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("qubit index {qubit} out of range for a {n_qubits}-qubit register")]
    QubitOutOfRange { qubit: usize, n_qubits: usize },
    #[error("CNOT control and target are both qubit {0}")]
    SameControlTarget(usize),
    #[error("register of {requested} qubits/modes exceeds the supported maximum of {max}")]
    TooWide { requested: usize, max: usize },
    #[error("register width must be at least 1")]
    EmptyRegister,
    #[error("malformed bitstring {bitstring:?} for a {n_qubits}-qubit register")]
    InvalidBitstring { bitstring: String, n_qubits: usize },
    #[error("amplitude vector of length {found} does not match 2^{n_qubits}")]
    AmplitudeLength { n_qubits: usize, found: usize },
    #[error("state is not normalized (norm² = {0})")]
    NotNormalized(f64),
    #[error("shot count must be at least 1")]
    ZeroShots,
    #[error("histogram is empty")]
    EmptyHistogram,
    #[error("histogram counts sum to {sum} but shots = {shots}")]
    HistogramMismatch { sum: u64, shots: u64 },
    #[error("register width mismatch: {left} vs {right}")]
    WidthMismatch { left: usize, right: usize },
    #[error("operator is not hermitian: imaginary residue {residue:e} on term {term}")]
    NonHermitian { term: String, residue: f64 },
    #[error("mode index {mode} out of range for {mode_count} modes")]
    ModeOutOfRange { mode: usize, mode_count: usize },
    #[error("encoding matrix is {matrix}x{matrix} but the operator has {modes} modes")]
    EncodingDimension { matrix: usize, modes: usize },
    #[error("encoding matrix is singular over GF(2)")]
    SingularEncoding,
    #[error("expected {expected} parameters, got {found}")]
    ParameterCount { expected: usize, found: usize },
    #[error("parameter {index} is not finite ({value})")]
    NonFiniteParameter { index: usize, value: f64 },
    #[error("term {0} is not diagonal; shot-based estimation supports only I/Z strings")]
    NonDiagonalTerm(String),
    #[error("objective returned a non-finite value ({0})")]
    NonFiniteObjective(f64),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}
