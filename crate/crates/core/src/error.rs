use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code used by the command-line front-end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) => 3,
            Error::Verification(_) => 2,
            Error::Precondition(_) | Error::Dimension(_) => 4,
            Error::Internal(_) => 1,
        }
    }
}
