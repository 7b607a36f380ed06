//! Doubly-truncated exponential distribution and the Langevin function.
//!
//! The mean of the distribution with rate `gamma` on `[k_min, k_max]` is
//! `alpha + delta * L(gamma * delta)`, where `alpha` and `delta` are the
//! midpoint and half-width of the support and `L(x) = coth(x) - 1/x` is the
//! Langevin function. Fitting `gamma` to a sample mean is therefore an
//! inverse-Langevin evaluation, and every cumulant is a polynomial in `L`
//! and `1/x`.
//!
//! ```
//! use truncexp_core::{fit_gamma, Method, SampleSummary, TruncExp};
//!
//! let d = TruncExp::new(3.0, 0.05, 0.8).unwrap();
//! let summary = SampleSummary::from_moments(100, d.mean(), d.variance()).unwrap();
//! let fit = fit_gamma(&summary, 0.05, 0.8, Method::Exact).unwrap();
//! assert!((fit.gamma_hat - 3.0).abs() < 1e-9);
//! ```

pub mod cumulant;
pub mod error;
pub mod estimate;
pub mod langevin;
pub mod truncexp;

pub use cumulant::{cumulant_poly, CumulantPoly, MAX_CUMULANT_ORDER};
pub use error::{Error, Result};
pub use estimate::{
    fit_gamma, fit_gamma_with, goodness_variance, summarize, FitResult, Goodness, GoodnessBands,
    Method, SampleSummary, SummaryBuilder, Validation, Verdict,
};
pub use langevin::{
    inv_langevin, inv_langevin_pade, inv_langevin_with, langevin, langevin_derivative,
    InverseTolerance, Inversion, PADE_BD, PADE_BN,
};
pub use truncexp::{MomentResult, TruncExp, SAMPLER_ID};
