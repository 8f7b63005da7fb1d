use std::io;
use std::path::PathBuf;

use boettcher_core::boettcher::SolveError;
use boettcher_core::padic::PadicError;
use boettcher_core::verify::VerifyError;
use thiserror::Error;

/// Anything that stops a run before a verdict exists. All of these map to
/// exit code 2; failed checks are not errors and map to exit code 1.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read config {path}: {source}")]
    ConfigRead { path: PathBuf, source: io::Error },
    #[error("invalid config {path}: {source}")]
    ConfigParse { path: PathBuf, source: toml::de::Error },
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}: malformed coefficient file: {reason}")]
    TableFormat { path: PathBuf, reason: String },
    #[error("{path}: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
    #[error("{path}: {source}")]
    Csv { path: PathBuf, source: csv::Error },
    #[error(transparent)]
    Padic(#[from] PadicError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error("cannot start worker pool: {0}")]
    Pool(String),
}
