use std::io;
use std::path::{Path, PathBuf};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] teich2_core::Error),
    #[error("validation failed: {failed} of {total} checks exceeded their tolerance")]
    Validation { failed: usize, total: usize },
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
}

impl CliError {
    pub fn io(path: impl AsRef<Path>, source: io::Error) -> CliError {
        CliError::Io {
            path: path.as_ref().to_path_buf(),
            source,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(teich2_core::Error::InvalidGrid { .. }) => 2,
            CliError::Core(e) if e.is_domain() => 3,
            CliError::Core(_) => 1,
            CliError::Validation { .. } => 4,
            CliError::Io { .. } => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self.exit_code() {
            2 => "usage",
            3 => "domain",
            4 => "validation",
            _ => match self {
                CliError::Io { .. } => "io",
                _ => "numeric",
            },
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
