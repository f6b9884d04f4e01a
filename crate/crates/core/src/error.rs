//! Crate-wide error type with the exit-code contract used by the CLI.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A precondition on the mathematical domain was violated.
    #[error("domain error: {0}")]
    Domain(String),
    /// The requested computation would exceed its precision/error budget.
    #[error("precision error: {0}")]
    Precision(String),
    /// Malformed input (CLI arguments, config files, set literals).
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("config error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code: 2 for domain errors, 3 for precision errors,
    /// 1 for anything else (usage, parse, I/O).
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_) => 2,
            Error::Precision(_) => 3,
            _ => 1,
        }
    }
}

pub(crate) fn precision<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Precision(msg.into()))
}
