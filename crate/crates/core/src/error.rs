use thiserror::Error;

/// Errors raised by the algebra engine.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("polynomials belong to different variable universes")]
    UniverseMismatch,

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("expected a polynomial homogeneous in x, got {0}")]
    NotHomogeneous(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("matrix is not invertible: {0}")]
    Singular(String),

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
