//! Command-line plumbing around `dbcert-core`: run configuration, a rayon
//! executor, certificate files, CSV grids and the lemma report.

pub mod config;
pub mod exec;
pub mod grid;
pub mod io;

use thiserror::Error;

/// Process exit codes.
pub mod exit {
    pub const PROVED: u8 = 0;
    pub const FAILED: u8 = 1;
    pub const CONFIG: u8 = 2;
    pub const INTERNAL: u8 = 3;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("{0}")]
    Internal(#[from] anyhow::Error),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Config(_) => exit::CONFIG,
            CliError::Internal(_) => exit::INTERNAL,
        }
    }
}

pub fn config_err(m: impl std::fmt::Display) -> CliError {
    CliError::Config(m.to_string())
}
