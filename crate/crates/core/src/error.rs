use thiserror::Error;

/// Failure modes shared by every module.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("invalid rotation vector: {0}")]
    InvalidRotation(String),
    #[error("singular matrix")]
    SingularMatrix,
    #[error("unsupported graph: {0}")]
    UnsupportedGraph(String),
    #[error("unsupported input: {0}")]
    UnsupportedInput(String),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("invalid rewrite: {0}")]
    InvalidRewrite(String),
    #[error("not a positive (Stein) factorization: {0}")]
    NotStein(String),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

impl Error {
    /// True for errors caused by malformed caller input.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidInput(_)
                | Error::InvalidRotation(_)
                | Error::SingularMatrix
                | Error::UnsupportedGraph(_)
                | Error::UnsupportedInput(_)
                | Error::InvalidRewrite(_)
                | Error::NotStein(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}
