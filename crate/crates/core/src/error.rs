use thiserror::Error;

/// Errors produced by the algebra layers, the key exchanges and the attacks.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("p must be prime (got {0})")]
    NotPrime(u64),

    #[error("division by zero in the field")]
    DivisionByZero,

    #[error("elements belong to different contexts")]
    ContextMismatch,

    #[error("no solution: {0}")]
    NoSolution(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, got })
    }
}
