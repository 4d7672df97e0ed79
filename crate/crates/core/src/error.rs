//! Error type shared by every module of the crate.

use alloc::string::String;
use core::fmt;

/// Errors reported by the library.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// An input violated a documented precondition.
    Domain(String),
    /// An iterative routine exhausted its budget before reaching tolerance.
    Convergence(String),
}

impl Error {
    pub(crate) fn domain(message: impl Into<String>) -> Self {
        Error::Domain(message.into())
    }

    pub(crate) fn convergence(message: impl Into<String>) -> Self {
        Error::Convergence(message.into())
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Convergence(msg) => write!(f, "convergence error: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
