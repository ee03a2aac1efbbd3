use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A caller-supplied argument is malformed (wrong length, out of range, ...).
    #[error("invalid argument: {0}")]
    Argument(String),

    /// The shape of a form or partition does not support the requested operation.
    #[error("structural error: {0}")]
    Structural(String),

    /// A hypothesis of the inequality being exercised is violated.
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    /// A computation would exceed a configured budget.
    #[error("resource limit: {0}")]
    Resource(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A probe family produced a form whose norm estimate vanishes.
    #[error("degenerate family: {0}")]
    Degenerate(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    pub(crate) fn hypothesis(msg: impl Into<String>) -> Self {
        Error::Hypothesis(msg.into())
    }

    /// True for errors a CLI should report as usage or hypothesis failures.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::Argument(_)
                | Error::Structural(_)
                | Error::Hypothesis(_)
                | Error::Parse(_)
                | Error::Unsupported(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
