//! Error type shared by every module of the crate.

use thiserror::Error;

/// Library-wide error type.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An argument is outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A series or state label lies outside its region of convergence.
    #[error("divergence: {0}")]
    Divergence(String),

    /// The requested truncation tolerance could not be met under the cap.
    /// Carries the tail mass that was actually achieved.
    #[error("truncation: tail mass {tail_mass:.3e} at n = {reached} exceeds the requested tolerance")]
    Truncation { tail_mass: f64, reached: usize },

    /// A nonlinearity value f(n) vanished where an inverse is required.
    #[error("singularity: f({index}) = 0")]
    Singularity { index: usize },

    /// A construction produced the zero vector (e.g. odd cat state at z = 0).
    #[error("degenerate state: {0}")]
    Degenerate(String),

    /// Two operators or states do not live on the same truncated space.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A textual family specification or state file could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn divergence(msg: impl Into<String>) -> Self {
        Error::Divergence(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}
