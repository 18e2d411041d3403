use std::fmt::Display;
use std::path::{Path, PathBuf};

pub type Result<T, E = CliError> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{}: {msg}", path.display())]
    Config { path: PathBuf, msg: String },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{}:{line}: {msg}", path.display())]
    Format { path: PathBuf, line: usize, msg: String },

    #[error(transparent)]
    Model(#[from] awgris_core::Error),

    #[error("invalid scenario: {0}")]
    Scenario(String),

    /// Bad command-line usage; exits with status 2.
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn config(path: &Path, msg: impl Display) -> Self {
        CliError::Config {
            path: path.to_path_buf(),
            msg: msg.to_string(),
        }
    }

    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    pub fn format(path: &Path, line: usize, msg: impl Display) -> Self {
        CliError::Format {
            path: path.to_path_buf(),
            line,
            msg: msg.to_string(),
        }
    }

    pub(crate) fn from_json(e: serde_json::Error) -> Self {
        CliError::Scenario(format!("serializing configuration: {e}"))
    }
}
