use std::io;

use thiserror::Error;

/// Failures, each mapped to a stable exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Unreadable input: a bad pattern, modulus or document.
    #[error("{0}")]
    Parse(String),
    /// A document or construction failed its checks. The report is printed
    /// on stdout before exiting.
    #[error("verification failed")]
    Verification { report: String },
    /// The greedy tiler (or the oracle) found no complement.
    #[error("{0}")]
    Stuck(String),
    #[error("{context}: {source}")]
    Io { context: String, source: io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Verification { .. } => 1,
            CliError::Parse(_) | CliError::Io { .. } => 2,
            CliError::Stuck(_) => 3,
        }
    }
}

impl From<modcanon::Error> for CliError {
    fn from(e: modcanon::Error) -> Self {
        CliError::Parse(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
