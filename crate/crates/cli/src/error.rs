use std::io;
use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid config: {0}")]
    Config(String),

    #[error(transparent)]
    Core(#[from] hybridsim::Error),

    #[error("{context}: {source}")]
    At { context: String, source: hybridsim::Error },

    #[error("cannot read {}: {source}", path.display())]
    Read { path: PathBuf, source: io::Error },

    #[error("cannot write {}: {source}", path.display())]
    Write { path: PathBuf, source: io::Error },

    #[error("cannot write output: {0}")]
    Stdout(io::Error),
}

impl CliError {
    /// 2 config validation, 3 numerical precondition, 4 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Config(_) => 2,
            Self::Core(e) | Self::At { source: e, .. } => {
                if e.is_validation() {
                    2
                } else {
                    3
                }
            }
            Self::Read { .. } | Self::Write { .. } | Self::Stdout(_) => 4,
        }
    }
}

pub trait Context<T> {
    fn context(self, what: impl FnOnce() -> String) -> Result<T, CliError>;
}

impl<T> Context<T> for hybridsim::Result<T> {
    fn context(self, what: impl FnOnce() -> String) -> Result<T, CliError> {
        self.map_err(|source| CliError::At { context: what(), source })
    }
}
