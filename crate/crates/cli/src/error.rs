//! Errors of the command-line layer. Everything here is an operational
//! failure (exit code 2); mathematical failures are reported as failed
//! checks instead, with exit code 1.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error in {path} at line {line}, column {column}: {msg}")]
    Parse { path: String, line: usize, column: usize, msg: String },
    #[error("unresolved reference: {0}")]
    Unresolved(String),
    #[error("value out of carrier: {0}")]
    OutOfCarrier(String),
    #[error("invalid definition: {0}")]
    Invalid(String),
    #[error("{0}")]
    Usage(String),
    #[error("search budget exceeded: {0} (raise TVCAT_BUDGET to allow more)")]
    Budget(String),
    #[error(transparent)]
    Engine(#[from] tvcat_core::Error),
    #[error("cannot access {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

pub type Result<T> = std::result::Result<T, CliError>;
