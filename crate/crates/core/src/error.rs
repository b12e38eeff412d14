use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Two fractional polynomials on different grids (order or center).
    #[error("grid mismatch: {0}")]
    Mismatch(String),

    #[error("index {index} out of range (max {max})")]
    Index { index: usize, max: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("sample time {0} is not on the reference grid")]
    MissingSample(f64),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid model: {0}")]
    Validation(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }
}
