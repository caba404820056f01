use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A shape, family, or ring specification is not usable as given.
    #[error("configuration error: {0}")]
    Config(String),
    /// An argument does not fit the object it is applied to.
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("poset is not dually ranked: {0}")]
    NotDuallyRanked(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    /// A configured size cap was exceeded.
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    /// A hypothesis of the correspondence between rings and posets fails.
    #[error("correspondence hypothesis fails: {0}")]
    Hypothesis(String),
    #[error("the generators span the unit ideal")]
    UnitIdeal,
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn arg<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Argument(msg.into()))
}

pub(crate) fn config<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Config(msg.into()))
}
