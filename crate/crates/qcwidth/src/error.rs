use std::path::PathBuf;

use qcwidth_core::CoreError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Core(CoreError),
    #[error("circuits differ (max deviation {deviation:.3e})")]
    Inequivalent { deviation: f64 },
    #[error("solver budget ran out during {0}")]
    Budget(&'static str),
    #[error("{0}")]
    Usage(String),
}

impl From<CoreError> for Error {
    fn from(e: CoreError) -> Self {
        Error::Core(e)
    }
}

impl Error {
    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }

    /// Process exit status for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } | Error::Json(_) | Error::Io { .. } | Error::Usage(_) => 2,
            Error::Inequivalent { .. } => 3,
            Error::Core(CoreError::CapExceeded { .. }) => 4,
            Error::Budget(_) => 5,
            Error::Core(_) => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
