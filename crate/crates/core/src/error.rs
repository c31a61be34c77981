use thiserror::Error;

use crate::exact::Rational;

/// Errors raised by the computational core.
///
/// Every variant is a domain error: the input was well formed but lies
/// outside the region where the requested quantity is defined.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("holonomy parameter {0} must lie in the open interval (0, 1/2)")]
    HolonomyOutOfRange(Rational),

    #[error("parameters {0} and {1} must be coprime integers >= 2")]
    NotCoprime(i64, i64),

    #[error("invalid Seifert matrix: {0}")]
    InvalidSeifert(String),

    #[error("alpha = {0} is not admissible: the Alexander polynomial vanishes at exp(-4 pi i alpha)")]
    Inadmissible(Rational),

    #[error("the zero element has no leading term")]
    ZeroElement,

    #[error("truncation floor reached: {0} (raise --depth)")]
    FloorExhausted(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("grid sample within tolerance of the target trace at gamma = {gamma}; raise the grid size")]
    Tangency { gamma: f64 },

    #[error("negative energy entry k = {k}: k(1 - 4 alpha) = {energy} < 0")]
    NegativeEnergy { k: i64, energy: Rational },

    #[error("{0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
