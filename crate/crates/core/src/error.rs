//! Error types shared across the crate.

use thiserror::Error;

/// Errors produced by metric evaluation, matrix actions, filtering and the
/// radius solver.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An input left the mathematical domain of an operation (nonpositive
    /// coordinate, point outside the admissible region, ratio on the branch
    /// cut, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A parameter violated a precondition (delta >= 1, R >= S1, ...).
    #[error("invalid argument: {0}")]
    Argument(String),

    /// A map hit a pole or a vanishing normalizer.
    #[error("singularity: {0}")]
    Singularity(String),

    /// A model definition violated its invariants.
    #[error("invalid model: {0}")]
    Model(String),

    /// An iterative method failed to converge.
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// A computation was refused because it would exceed a resource guard.
    #[error("resource guard: {0}")]
    Resource(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn argument(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    pub(crate) fn singularity(msg: impl Into<String>) -> Self {
        Error::Singularity(msg.into())
    }

    pub(crate) fn model(msg: impl Into<String>) -> Self {
        Error::Model(msg.into())
    }
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
