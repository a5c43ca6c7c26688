use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("model mismatch: {0}")]
    ModelMismatch(String),

    #[error("unsupported in this model: {0}")]
    Unsupported(String),

    #[error("division by zero: {0}")]
    DivisionByZero(String),

    #[error("no real solution: {0}")]
    NoRealSolution(String),

    #[error("outside the radius of convergence: {0}")]
    OutsideRadius(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
