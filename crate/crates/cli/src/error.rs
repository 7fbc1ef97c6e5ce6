use std::path::PathBuf;

use thiserror::Error;
use yeefdtd::FdtdError;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: unknown section [{name}]")]
    UnknownSection { name: String, line: usize },
    #[error("line {line}: unknown key '{key}' in {}", section_label(section))]
    UnknownKey {
        key: String,
        section: String,
        line: usize,
    },
    #[error("missing required key '{key}' in {}", section_label(section))]
    Missing { section: String, key: String },
    #[error("line {line}: '{key}' expects {expected}, got '{got}'")]
    Type {
        key: String,
        line: usize,
        expected: &'static str,
        got: String,
    },
    #[error("invalid scenario: {0}")]
    Invalid(#[from] FdtdError),
}

fn section_label(section: &str) -> String {
    if section.is_empty() || section == "top level" {
        "the top level".into()
    } else {
        format!("section [{section}]")
    }
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("{0}")]
    Solver(FdtdError),
    #[error("cannot write {}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{failed} validation criteria failed")]
    ValidationFailed { failed: usize },
}

impl From<FdtdError> for RunError {
    fn from(e: FdtdError) -> Self {
        match e {
            FdtdError::NonFinite { .. } => RunError::Solver(e),
            other => RunError::Config(ConfigError::Invalid(other)),
        }
    }
}

impl RunError {
    pub fn exit_code(&self) -> u8 {
        match self {
            RunError::Config(_) => 2,
            RunError::Solver(FdtdError::NonFinite { .. }) => 3,
            RunError::Solver(_) | RunError::Io { .. } | RunError::ValidationFailed { .. } => 1,
        }
    }
}
