//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A 1-based sequence index was zero (or otherwise out of range).
    #[error("invalid index {0}: indices are 1-based")]
    InvalidIndex(u64),

    /// An input value violates a documented precondition.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A model or experiment parameter is outside its admissible range.
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    /// Incompatible bandwidths, grid sizes, or evolution settings.
    #[error("configuration error: {0}")]
    Configuration(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parameter(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
