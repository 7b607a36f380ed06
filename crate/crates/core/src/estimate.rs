//! Estimating the rate `gamma` from a sample, given the truncation bounds.
//!
//! The moment equation `k_bar = alpha + delta * L(gamma * delta)` gives
//! `gamma = L^-1(y) / delta` with `y = (k_bar - alpha) / delta`. This is the
//! method-of-moments estimate and coincides with the maximum-likelihood
//! estimate, since the family is exponential with sufficient statistic `K`.

use std::fmt;

use crate::error::{Error, Result};
use crate::langevin::{inv_langevin_pade, inv_langevin_with, InverseTolerance};
use crate::truncexp::TruncExp;

/// How observations outside `[k_min, k_max]` are handled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Validation {
    /// Reject the whole sample.
    Strict,
    /// Clip to the nearest bound and count it.
    #[default]
    Clip,
}

/// Count, mean and unbiased variance of a sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleSummary {
    pub n: usize,
    pub k_bar: f64,
    /// Unbiased sample variance; zero when `n == 1`.
    pub s2: f64,
    /// Observations clipped to a bound (always zero in strict mode).
    pub clipped: usize,
}

impl SampleSummary {
    /// Build a summary from already-known moments.
    pub fn from_moments(n: usize, k_bar: f64, s2: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyData);
        }
        if !k_bar.is_finite() || !(s2 >= 0.0 && s2.is_finite()) {
            return Err(Error::Domain(format!(
                "need finite mean and non-negative variance, got k_bar={k_bar}, s2={s2}"
            )));
        }
        Ok(Self {
            n,
            k_bar,
            s2,
            clipped: 0,
        })
    }
}

/// Streaming accumulator (Welford) with bound validation.
#[derive(Debug, Clone)]
pub struct SummaryBuilder {
    k_min: f64,
    k_max: f64,
    mode: Validation,
    n: usize,
    mean: f64,
    m2: f64,
    clipped: usize,
}

impl SummaryBuilder {
    pub fn new(k_min: f64, k_max: f64, mode: Validation) -> Result<Self> {
        TruncExp::new(0.0, k_min, k_max)?;
        Ok(Self {
            k_min,
            k_max,
            mode,
            n: 0,
            mean: 0.0,
            m2: 0.0,
            clipped: 0,
        })
    }

    pub fn push(&mut self, value: f64) -> Result<()> {
        let index = self.n;
        let out_of_range = || Error::OutOfRange {
            index,
            value,
            k_min: self.k_min,
            k_max: self.k_max,
        };
        if value.is_nan() {
            return Err(out_of_range());
        }
        let mut v = value;
        if v < self.k_min || v > self.k_max {
            match self.mode {
                Validation::Strict => return Err(out_of_range()),
                Validation::Clip => {
                    v = v.clamp(self.k_min, self.k_max);
                    self.clipped += 1;
                }
            }
        }
        self.n += 1;
        let d = v - self.mean;
        self.mean += d / self.n as f64;
        self.m2 += d * (v - self.mean);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn finish(&self) -> Result<SampleSummary> {
        if self.n == 0 {
            return Err(Error::EmptyData);
        }
        let s2 = if self.n > 1 {
            (self.m2 / (self.n - 1) as f64).max(0.0)
        } else {
            0.0
        };
        Ok(SampleSummary {
            n: self.n,
            k_bar: self.mean.clamp(self.k_min, self.k_max),
            s2,
            clipped: self.clipped,
        })
    }
}

/// Summarize a slice of observations.
pub fn summarize(data: &[f64], k_min: f64, k_max: f64, mode: Validation) -> Result<SampleSummary> {
    let mut b = SummaryBuilder::new(k_min, k_max, mode)?;
    for &v in data {
        b.push(v)?;
    }
    b.finish()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Method {
    /// Numerical inverse Langevin function.
    #[default]
    Exact,
    /// Closed-form rational tangent approximation.
    Pade,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Exact => "exact",
            Method::Pade => "pade",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitResult {
    pub gamma_hat: f64,
    /// Standardized mean `(k_bar - alpha) / delta`.
    pub y: f64,
    pub method: Method,
    pub k_min: f64,
    pub k_max: f64,
    pub n: usize,
    pub k_bar: f64,
    pub s2: f64,
    pub model_mean: f64,
    pub model_variance: f64,
    /// `s2 / model_variance`
    pub variance_ratio: f64,
    /// Solver iterations; zero for the closed-form method.
    pub iterations: usize,
}

impl FitResult {
    pub fn distribution(&self) -> TruncExp {
        TruncExp::new(self.gamma_hat, self.k_min, self.k_max)
            .expect("bounds were validated when fitting")
    }
}

pub fn fit_gamma(summary: &SampleSummary, k_min: f64, k_max: f64, method: Method) -> Result<FitResult> {
    fit_gamma_with(summary, k_min, k_max, method, InverseTolerance::default())
}

pub fn fit_gamma_with(
    summary: &SampleSummary,
    k_min: f64,
    k_max: f64,
    method: Method,
    tol: InverseTolerance,
) -> Result<FitResult> {
    let support = TruncExp::new(0.0, k_min, k_max)?;
    let y = (summary.k_bar - support.alpha()) / support.delta();
    if !(y.abs() < 1.0) {
        return Err(Error::Unfittable { y });
    }
    let (x, iterations) = match method {
        Method::Exact => {
            let inv = inv_langevin_with(y, tol)?;
            (inv.x, inv.iterations)
        }
        Method::Pade => (inv_langevin_pade(y)?, 0),
    };
    let gamma_hat = x / support.delta();
    let model = TruncExp::new(gamma_hat, k_min, k_max)?;
    let model_variance = model.variance();
    Ok(FitResult {
        gamma_hat,
        y,
        method,
        k_min,
        k_max,
        n: summary.n,
        k_bar: summary.k_bar,
        s2: summary.s2,
        model_mean: model.mean(),
        model_variance,
        variance_ratio: summary.s2 / model_variance,
        iterations,
    })
}

/// Acceptance band for the variance ratio.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GoodnessBands {
    pub lower: f64,
    pub upper: f64,
}

impl Default for GoodnessBands {
    fn default() -> Self {
        Self {
            lower: 0.5,
            upper: 2.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Consistent,
    Suspect,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Consistent => "consistent",
            Verdict::Suspect => "suspect",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Sample variance compared with the model variance at the fitted rate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Goodness {
    pub variance_ratio: f64,
    pub sample_variance: f64,
    pub model_variance: f64,
    pub verdict: Verdict,
}

/// Ratio of the sample variance to `delta^2 (1 - L^2 - 2L/x)` at the fitted
/// rate, where `L = y` because the fit reproduces the sample mean.
pub fn goodness_variance(fit: &FitResult, bands: &GoodnessBands) -> Result<Goodness> {
    if fit.n < 2 {
        return Err(Error::InsufficientData { needed: 2, got: fit.n });
    }
    let ratio = fit.s2 / fit.model_variance;
    let verdict = if ratio >= bands.lower && ratio <= bands.upper {
        Verdict::Consistent
    } else {
        Verdict::Suspect
    };
    Ok(Goodness {
        variance_ratio: ratio,
        sample_variance: fit.s2,
        model_variance: fit.model_variance,
        verdict,
    })
}
