use alloc::string::String;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoreError {
    #[error("gate {index}: qubit {qubit} out of range (circuit has {num_qubits} qubits)")]
    QubitOutOfRange {
        index: usize,
        qubit: usize,
        num_qubits: usize,
    },
    #[error("gate {index}: repeated qubit {qubit}")]
    RepeatedQubit { index: usize, qubit: usize },
    #[error("gate {index}: {reason}")]
    InvalidGate { index: usize, reason: String },
    #[error("angle involves the opaque symbol `{0}`")]
    OpaqueAngle(String),
    #[error("gate {index}: hadamard acts on a wire that does not hold a single variable")]
    NonLocalHadamard { index: usize },
    #[error("gate {index}: {reason}")]
    UnsupportedStructure { index: usize, reason: String },
    #[error("the circuit contains mid-circuit measurements")]
    MidCircuitMeasurement,
    #[error("the remaining precedence graph has a cycle through vertex {0}")]
    CycleDetected(usize),
    #[error("diagram is not circuit-like: {0}")]
    NotCircuitLike(String),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("invalid ordering: {0}")]
    InvalidOrdering(String),
    #[error("endbag constraints cannot be satisfied: {0}")]
    Infeasible(String),
    #[error("{what} needs {needed}, cap is {cap}")]
    CapExceeded {
        what: &'static str,
        needed: usize,
        cap: usize,
    },
}
