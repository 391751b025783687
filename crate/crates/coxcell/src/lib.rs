//! Command-line front end for `coxcell-core`: argument handling, the check
//! suite, the verification dossier and file exports.

pub mod checks;
pub mod commands;
pub mod config;
pub mod export;
pub mod report;

pub use commands::{run, Outcome};
pub use config::{Cli, RunConfig};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] coxcell_core::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    /// 2 for anything the caller can fix by changing the arguments, 1 for
    /// failed verification and internal errors.
    pub fn exit_code(&self) -> i32 {
        use coxcell_core::Error as E;
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(
                E::InvalidWeight(_)
                | E::InvalidLattice(_)
                | E::VariantMismatch { .. }
                | E::RankTooSmall { .. }
                | E::OutOfValidityRange(_)
                | E::BudgetExceeded(_)
                | E::EmptyWindow
                | E::IndexOutOfRange { .. }
                | E::Parse(_),
            ) => 2,
            _ => 1,
        }
    }
}

/// Thread count from `COXCELL_THREADS`, if set to a positive integer.
pub fn configured_threads() -> Option<usize> {
    std::env::var("COXCELL_THREADS")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&n| n > 0)
}
