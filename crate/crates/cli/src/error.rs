use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Core(#[from] vdecomp_core::Error),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("cache integrity error: {0}")]
    Integrity(String),
}

impl CliError {
    /// 1 usage, 2 mathematical inconsistency, 3 I/O.
    pub fn exit_code(&self) -> i32 {
        use vdecomp_core::Error as E;
        match self {
            CliError::Usage(_) => 1,
            CliError::Core(E::Inconsistency(_) | E::Singular(_)) => 2,
            CliError::Core(_) => 1,
            CliError::Io(_) | CliError::Integrity(_) => 3,
        }
    }
}
