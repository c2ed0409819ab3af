//! Error type shared across the library.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or inconsistent input (dimension mismatch, bad config, ...).
    #[error("input error: {0}")]
    Input(String),
    /// Input outside the mathematical domain of the operation
    /// (logarithm outside its convergence region, point outside the chart).
    #[error("domain error: {0}")]
    Domain(String),
    /// An iteration failed to converge or a solve blew up.
    #[error("numerical error: {0}")]
    Numerical(String),
    /// A well-definedness cross-check failed (two admissible representatives
    /// disagree beyond tolerance).
    #[error("consistency error: {0}")]
    Consistency(String),
}

pub type Result<V> = std::result::Result<V, Error>;

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
    pub fn numerical(msg: impl Into<String>) -> Self {
        Error::Numerical(msg.into())
    }
    pub fn consistency(msg: impl Into<String>) -> Self {
        Error::Consistency(msg.into())
    }
}
