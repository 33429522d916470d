use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed arguments: wrong shapes, non-finite entries, empty grids.
    #[error("invalid input: {0}")]
    Input(String),
    /// Arguments outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
