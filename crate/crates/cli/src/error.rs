use std::path::PathBuf;

use thiserror::Error;

/// Everything that ends a run early. The process exit code follows the
/// variant: 2 for bad input, 3 for solver failures, 4 for I/O.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Model(#[from] update_queues::Error),
    #[error("{0}")]
    NonConvergence(String),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use update_queues::Error as E;
        match self {
            CliError::Usage(_) => 2,
            CliError::Model(
                E::SingularApproximation { .. } | E::NoRealRoot { .. } | E::NonFinite { .. },
            ) => 3,
            CliError::Model(_) => 2,
            CliError::NonConvergence(_) => 3,
            CliError::Io { .. } => 4,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
