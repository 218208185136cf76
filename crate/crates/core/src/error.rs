use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parameter `{param}` does not apply to {family} noise")]
    ParameterMismatch {
        family: &'static str,
        param: &'static str,
    },

    #[error("negative time {0}")]
    NegativeTime(f64),

    #[error("invalid time grid: {0}")]
    InvalidGrid(String),

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("not a valid density matrix: {0}")]
    InvalidState(String),

    #[error("covariance for {spec} is not positive semidefinite (jitter up to {max_jitter:e})")]
    NotPositiveDefinite { spec: String, max_jitter: f64 },

    #[error("preservation threshold {delta} is already met at tau = 0")]
    ThresholdMetAtStart { delta: f64 },

    #[error("preservation threshold not reached before tau = {0}")]
    ThresholdNotReached(f64),

    #[error("config {path}:{line}: {msg}")]
    Config {
        path: String,
        line: usize,
        msg: String,
    },

    #[error("i/o error on {path}: {msg}")]
    Io { path: String, msg: String },
}

impl Error {
    pub(crate) fn io(path: &std::path::Path, err: impl std::fmt::Display) -> Self {
        Error::Io {
            path: path.display().to_string(),
            msg: err.to_string(),
        }
    }

    /// True for failures that come from the numerics or parameter values
    /// rather than from how the program was invoked.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::InvalidParameter(_)
                | Error::ParameterMismatch { .. }
                | Error::NegativeTime(_)
                | Error::InvalidState(_)
                | Error::NotPositiveDefinite { .. }
                | Error::ThresholdMetAtStart { .. }
                | Error::ThresholdNotReached(_)
        )
    }
}
