//! Error type shared by parsing, pipeline, and rendering entry points.

use thiserror::Error;

/// Errors surfaced by the library's fallible operations.
#[derive(Debug, Error)]
pub enum Error {
    /// Input text could not be parsed as a set system.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// Input JSON could not be decoded.
    #[error("invalid JSON input: {0}")]
    Json(#[from] serde_json::Error),

    /// A set-system level validation failed (empty set, duplicate label, ...).
    #[error("invalid set system: {0}")]
    InvalidSystem(String),

    /// An operation was called outside its contract.
    #[error("contract violation: {0}")]
    Contract(String),
}

pub type Result<T> = std::result::Result<T, Error>;
