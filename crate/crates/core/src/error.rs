use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not a supported prime (expected a prime in [2, 13])")]
    InvalidModulus(u64),

    #[error("zero has no multiplicative inverse")]
    ZeroInverse,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is singular mod {0}")]
    Singular(u8),

    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: u64, limit: u64 },

    #[error("scale guard: {what} = {size} exceeds limit {limit}")]
    ScaleGuard { what: &'static str, size: u64, limit: u64 },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("shape mismatch: expected {expected}x{expected} matrix, found {rows}x{cols}")]
    ShapeMismatch { expected: usize, rows: usize, cols: usize },

    #[error("invalid encoder: {0}")]
    InvalidEncoder(String),

    #[error("parse error at line {line}, field `{field}`: {message}")]
    Parse { line: usize, field: String, message: String },

    #[error("enumeration budget of {budget} exceeded")]
    EnumerationBudgetExceeded { budget: usize },

    #[error("orbit did not settle within {max_steps} steps (trajectory {trajectory:?})")]
    MaxStepsExceeded { max_steps: usize, trajectory: Vec<usize> },

    #[error("invalid sequence: {0}")]
    InvalidSequence(String),
}

impl Error {
    pub(crate) fn parse(line: usize, field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse { line, field: field.into(), message: message.into() }
    }
}
