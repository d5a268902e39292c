use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("split mismatch: {0}")]
    SplitMismatch(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("element {0} is not integral at the maximal ideal")]
    NotIntegral(String),

    #[error("parameter mismatch: {0}")]
    ParameterMismatch(String),

    #[error("singular matrix: {0}")]
    Singular(String),

    /// An internal consistency check failed; indicates a convention bug, not bad input.
    #[error("inconsistency: {0}")]
    Inconsistency(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
