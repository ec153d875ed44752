//! Harness library behind the `polycal` binary: instance schema, seeded
//! instance generation, rule execution with oracle cross-checks, and
//! machine-readable reports. The binary is a thin clap wrapper; everything
//! here is callable from tests.

pub mod gen;
pub mod instance;
pub mod report;
pub mod run;

use thiserror::Error;

/// Harness-level failures. Input problems (I/O, JSON, schema) map to exit
/// code 2; identity violations are reported through verdicts, not errors.
#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("parse error: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("domain error: {0}")]
    Domain(#[from] polycal::Error),
}

pub type Result<T> = std::result::Result<T, HarnessError>;
