//! Library backing the `popuc` binary: JSON parameter ingestion, seeded
//! verification campaigns, and deterministic artifact emission (JSON tables,
//! CSV zero lists, SVG circle diagrams).

pub mod campaign;
pub mod demo;
pub mod input;
pub mod report;
pub mod sampling;
pub mod svg;

use thiserror::Error;

/// CLI failure modes, mapped one-to-one onto exit codes:
/// 0 success, 1 verification failure, 2 input error, 3 internal/convergence.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("verification failure: {0}")]
    Verification(String),
    #[error("input error: {0}")]
    Input(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Input(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

impl From<popuc_core::Error> for CliError {
    fn from(e: popuc_core::Error) -> Self {
        use popuc_core::Error as E;
        match e {
            E::AlphaOutsideDisk { .. }
            | E::NotUnimodular { .. }
            | E::IndexOutOfRange { .. }
            | E::BetaIsOne { .. }
            | E::EmptySet => CliError::Input(e.to_string()),
            _ => CliError::Internal(e.to_string()),
        }
    }
}
