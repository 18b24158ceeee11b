use std::path::PathBuf;

use serde_json::json;

/// Errors surfaced by the command line and file loaders.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] rectiflat_core::Error),
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error("malformed JSON in {path}: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
    #[error("invalid input: {0}")]
    Input(String),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.kind(),
            CliError::Read { .. } | CliError::Write { .. } => "io",
            CliError::Json { .. } => "json",
            CliError::Input(_) => "input",
        }
    }

    /// The machine-readable error document printed on failure.
    pub fn to_json(&self) -> serde_json::Value {
        json!({ "error": { "kind": self.kind(), "message": self.to_string() } })
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
