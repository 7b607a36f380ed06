use thiserror::Error;

/// Errors produced by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the function.
    #[error("domain error: {0}")]
    Domain(String),

    /// Distribution parameters violate their invariants.
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    /// An iterative solver ran out of iterations.
    #[error("no convergence after {iterations} iterations (last iterate {last}, residual {residual:e})")]
    Convergence {
        iterations: usize,
        last: f64,
        residual: f64,
    },

    #[error("no observations")]
    EmptyData,

    /// An observation lies outside the truncation bounds.
    #[error("observation {value} (index {index}) outside [{k_min}, {k_max}]")]
    OutOfRange {
        index: usize,
        value: f64,
        k_min: f64,
        k_max: f64,
    },

    /// The sample mean sits on or beyond a truncation bound.
    #[error("unfittable: mean pinned to truncation endpoint (standardized mean y = {y})")]
    Unfittable { y: f64 },

    #[error("insufficient data: need at least {needed} observations, got {got}")]
    InsufficientData { needed: usize, got: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
