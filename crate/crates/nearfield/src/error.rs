//! Crate-wide error type.

use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A mathematical precondition does not hold (e.g. zero effective friction).
    #[error("domain error: {0}")]
    Domain(String),

    /// A configuration value is missing, malformed, or out of range.
    #[error("invalid configuration: {0}")]
    Config(String),

    /// An I/O failure, annotated with the path involved.
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// `value` must be finite and strictly positive (rejects NaN).
pub(crate) fn require_positive(value: f64, what: &str) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::config(format!("{what} must be > 0, got {value}")))
    }
}

/// `value` must be finite and non-negative (rejects NaN).
pub(crate) fn require_non_negative(value: f64, what: &str) -> Result<()> {
    if value.is_finite() && value >= 0.0 {
        Ok(())
    } else {
        Err(Error::config(format!("{what} must be >= 0, got {value}")))
    }
}
