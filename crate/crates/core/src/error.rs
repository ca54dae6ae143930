use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An argument fell outside the supported numeric range.
    #[error("out of range: {0}")]
    Range(String),

    /// An argument was in range but violates a structural precondition.
    #[error("domain error: {0}")]
    Domain(String),

    /// A serialized document or graph file could not be interpreted.
    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn range<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Range(msg.into()))
}

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
