use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    Dimension {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),

    #[error("zero dimension is not allowed")]
    ZeroDimension,

    #[error("{what} index {index} out of range (valid: {min}..={max})")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        min: usize,
        max: usize,
    },

    #[error("matrix is singular")]
    Singular,

    #[error("contract violation: {0}")]
    ContractViolation(String),

    #[error("identity `{identity}` violated: residual {residual:e}")]
    IdentityViolated { identity: String, residual: f64 },

    #[error("diagram: {0}")]
    Diagram(String),

    #[error("operator label `{0}` is not in the operator table")]
    UnknownLabel(String),

    #[error("parse error: {0}")]
    Parse(String),
}
