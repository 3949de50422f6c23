//! Command-line front end: build models from instance files, convert them to
//! binary form, solve, validate decoded solutions and run toy QAOA.

pub mod commands;
pub mod files;

use thiserror::Error;

/// Failures, each mapped to a process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Schema(String),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
    #[error("cannot encode instance: {0}")]
    Encode(String),
    #[error("{0}")]
    Capacity(String),
    #[error("{0}")]
    Rejected(String),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Rejected(_) | CliError::Failed(_) => 1,
            CliError::Schema(_) | CliError::Usage(_) | CliError::Io(_) | CliError::Encode(_) => 2,
            CliError::Capacity(_) => 3,
        }
    }
}
