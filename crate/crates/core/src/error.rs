use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised by state construction, reshaping and the invariance harnesses.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} amplitudes, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("degenerate state: all amplitudes are zero")]
    DegenerateState,

    #[error("index error: {0}")]
    Index(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("bipartition matrix has {cols} column(s); at least 2 are needed to form a minor")]
    NoMinors { cols: usize },

    #[error("a single-qubit state has no bipartition")]
    NoBipartition,

    #[error("unsupported format: expected {expected} qubits, got {got}")]
    UnsupportedFormat { expected: usize, got: usize },

    #[error("unsupported named state: {0}")]
    UnsupportedState(String),

    #[error("state must be normalized for this operation")]
    NotNormalized,

    #[error("operator is not {kind}: deviation {deviation:e}")]
    OperatorKind { kind: &'static str, deviation: f64 },

    #[error("Pauli-vector convention error: {0}")]
    Convention(String),

    #[error("sampling error: {0}")]
    Sampling(String),

    #[error("parse error: {0}")]
    Parse(String),
}
