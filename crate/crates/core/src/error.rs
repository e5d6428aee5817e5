use thiserror::Error;

/// Errors raised by constructors, checks and the command line surface.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("out of domain: {0}")]
    OutOfDomain(String),

    #[error("degenerate point: {0}")]
    DegeneratePoint(String),

    #[error("unreliable rank: {0}")]
    Unreliable(String),

    #[error("consistency failure: {0}")]
    Consistency(String),

    #[error("check failed: {0}")]
    CheckFailed(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("malformed matrix file: {0}")]
    Format(#[from] serde_json::Error),
}

impl Error {
    /// Short machine-readable tag used in CLI error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidArgument(_) => "invalid-argument",
            Error::OutOfDomain(_) => "out-of-domain",
            Error::DegeneratePoint(_) => "degenerate-point",
            Error::Unreliable(_) => "unreliable",
            Error::Consistency(_) => "consistency",
            Error::CheckFailed(_) => "check-failed",
            Error::Io(_) => "io",
            Error::Format(_) => "format",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
