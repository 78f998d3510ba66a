use thiserror::Error;

/// Errors raised by the engine.
///
/// `Usage` and `ResourceCap` describe bad requests. `DivisibilityViolation`,
/// `NotAUnit` on internal paths and `Internal` indicate a sign or convention
/// bug in the engine itself and should never surface for valid input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("usage error: {0}")]
    Usage(String),
    #[error("series is not a unit: {0}")]
    NotAUnit(String),
    #[error("exact division failed, nonzero remainder: {0}")]
    DivisibilityViolation(String),
    #[error("no value assigned to generator b{0}")]
    MissingAssignment(u32),
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Usage(msg.into()))
}
