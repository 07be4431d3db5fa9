use std::io;
use std::path::{Path, PathBuf};

use crate::wav::WavError;

/// Everything a command can fail with, grouped by exit status.
#[derive(Debug, thiserror::Error)]
pub enum AppError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Data(String),
    #[error(transparent)]
    Core(#[from] sonoprint_core::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    Wav { path: PathBuf, source: WavError },
}

impl AppError {
    pub fn usage(msg: impl Into<String>) -> Self {
        AppError::Usage(msg.into())
    }

    pub fn data(msg: impl Into<String>) -> Self {
        AppError::Data(msg.into())
    }

    pub fn io(path: impl AsRef<Path>, source: io::Error) -> Self {
        AppError::Io {
            path: path.as_ref().to_path_buf(),
            source,
        }
    }

    pub fn wav(path: impl AsRef<Path>, source: WavError) -> Self {
        AppError::Wav {
            path: path.as_ref().to_path_buf(),
            source,
        }
    }

    /// 2 usage or config, 3 data or dimensions, 4 IO.
    pub fn exit_code(&self) -> i32 {
        match self {
            AppError::Usage(_) => 2,
            AppError::Data(_) | AppError::Core(_) => 3,
            AppError::Io { .. } => 4,
            AppError::Wav { source, .. } => match source {
                WavError::IoFailure(_) => 4,
                _ => 3,
            },
        }
    }
}

pub type AppResult<T> = Result<T, AppError>;
