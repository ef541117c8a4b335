//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A precondition on the mathematical domain was violated.
    #[error("domain error: {0}")]
    Domain(String),

    /// An intersection product was requested with the wrong number of factors.
    #[error("dimension mismatch: expected {expected} divisor classes, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// One of the denominators in the constants' closed forms vanished, so
    /// the extremal datum is not constructible at this cut depth.
    #[error("vanishing denominator ({context}) at eps = {eps}")]
    VanishingDenominator { context: &'static str, eps: String },

    /// Two routes that must agree exactly did not. Unreachable unless the
    /// implementation is broken.
    #[error("internal identity violated: {0}")]
    IdentityViolation(String),

    /// A floating-point procedure failed to converge or hit a singularity.
    #[error("numeric failure: {0}")]
    Numeric(String),

    /// A rational literal could not be parsed.
    #[error("invalid rational literal: {0:?}")]
    ParseRational(String),
}

pub type Result<T> = std::result::Result<T, Error>;
