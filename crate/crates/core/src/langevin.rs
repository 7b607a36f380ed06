//! The Langevin function `L(x) = coth(x) - 1/x`, its derivative, and its
//! inverse.
//!
//! `L` is odd, strictly increasing and maps the real line onto `(-1, 1)`.
//! The inverse has no elementary closed form; [`inv_langevin`] solves
//! `L(x) = y` by safeguarded Newton iteration, started from the rational
//! tangent approximation [`inv_langevin_pade`].

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Below this `|x|` the Maclaurin series is used instead of `coth(x) - 1/x`.
pub const SERIES_THRESHOLD: f64 = 0.5;

/// Above this `|x|`, `coth(x) = 1` to double precision.
const SATURATION: f64 = 350.0;

/// Maclaurin coefficients of `L`: `L(x) = sum_n C[n] x^(2n+1)`, where
/// `C[n] = 2^(2n+2) B_(2n+2) / (2n+2)!`.
pub(crate) const SERIES: [f64; 20] = [
    3.3333333333333333333e-1,
    -2.2222222222222222222e-2,
    2.1164021164021164021e-3,
    -2.1164021164021164021e-4,
    2.1377799155576933355e-5,
    -2.1644042808063972085e-6,
    2.19259478518737778e-7,
    -2.2214608789979679076e-8,
    2.2507846516808992854e-9,
    -2.2805151204592182866e-10,
    2.3106432599002624097e-11,
    -2.3411706819824883959e-12,
    2.3721017400233654295e-13,
    -2.4034415333307706179e-14,
    2.4351954029183368731e-15,
    -2.4673688045172074706e-16,
    2.499967277122080898e-17,
    -2.5329964357406348315e-18,
    2.5664619702826286611e-19,
    -2.6003696460137273589e-20,
];

/// Denominator coefficient of the tangent approximation,
/// `(20 pi^2 - 144) / (pi^2 (60 - 5 pi^2))`, roughly 0.508.
pub const PADE_BD: f64 = (20.0 * PI * PI - 144.0) / (PI * PI * (60.0 - 5.0 * PI * PI));

/// Numerator coefficient, `(pi^2 / 12) * PADE_BD`.
pub const PADE_BN: f64 = PI * PI / 12.0 * PADE_BD;

/// Stopping rule for [`inv_langevin`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InverseTolerance {
    abs_tol: f64,
    max_iter: usize,
}

impl InverseTolerance {
    pub fn new(abs_tol: f64, max_iter: usize) -> Result<Self> {
        if !(abs_tol > 0.0 && abs_tol.is_finite()) {
            return Err(Error::Domain(format!("abs_tol must be positive, got {abs_tol}")));
        }
        if max_iter == 0 {
            return Err(Error::Domain("max_iter must be at least 1".into()));
        }
        Ok(Self { abs_tol, max_iter })
    }

    pub fn abs_tol(&self) -> f64 {
        self.abs_tol
    }

    pub fn max_iter(&self) -> usize {
        self.max_iter
    }
}

impl Default for InverseTolerance {
    fn default() -> Self {
        Self {
            abs_tol: 1e-12,
            max_iter: 100,
        }
    }
}

/// Outcome of a numerical inversion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Inversion {
    pub x: f64,
    /// Newton or bisection steps taken; zero for `y = 0`.
    pub iterations: usize,
    /// Final `|L(x) - y|`.
    pub residual: f64,
}

fn check_finite(x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("argument must be finite, got {x}")))
    }
}

fn check_open_unit(y: f64) -> Result<()> {
    if y.is_finite() && y.abs() < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "inverse Langevin needs |y| < 1, got {y}"
        )))
    }
}

/// `sum_n SERIES[n] z^n` by Horner's rule.
fn series_poly(z: f64) -> f64 {
    SERIES.iter().rev().fold(0.0, |acc, &c| acc * z + c)
}

/// `L(x)` for finite `x`; unchecked.
pub(crate) fn langevin_unchecked(x: f64) -> f64 {
    let ax = x.abs();
    if ax < SERIES_THRESHOLD {
        x * series_poly(x * x)
    } else if ax > SATURATION {
        x.signum() * (1.0 - 1.0 / ax)
    } else {
        // coth(a) = 1 + 2 / expm1(2a)
        x.signum() * (1.0 + 2.0 / (2.0 * ax).exp_m1() - 1.0 / ax)
    }
}

/// `L'(x)` for finite `x`; unchecked.
pub(crate) fn langevin_derivative_unchecked(x: f64) -> f64 {
    let ax = x.abs();
    if ax < SERIES_THRESHOLD {
        let z = x * x;
        SERIES
            .iter()
            .enumerate()
            .rev()
            .fold(0.0, |acc, (n, &c)| acc * z + (2 * n + 1) as f64 * c)
    } else {
        // 1 - L^2 - 2L/x rewritten as 1/x^2 - csch^2(x), which does not cancel
        // for large x.
        let csch = 1.0 / ax.sinh();
        1.0 / (ax * ax) - csch * csch
    }
}

/// The Langevin function, `coth(x) - 1/x` with `L(0) = 0`.
pub fn langevin(x: f64) -> Result<f64> {
    check_finite(x)?;
    Ok(langevin_unchecked(x))
}

/// `dL/dx = 1 - L(x)^2 - 2 L(x) / x`, equal to `1/3` at the origin.
pub fn langevin_derivative(x: f64) -> Result<f64> {
    check_finite(x)?;
    Ok(langevin_derivative_unchecked(x))
}

pub(crate) fn pade_unchecked(y: f64) -> f64 {
    if y == 0.0 {
        return 0.0;
    }
    let tau = (PI * y / 2.0).tan();
    let scale = 6.0 / PI;
    if tau.abs() <= 1.0 {
        let t2 = tau * tau;
        scale * tau * (1.0 + PADE_BN * t2) / (1.0 + PADE_BD * t2)
    } else {
        let r = 1.0 / (tau * tau);
        scale * tau * (r + PADE_BN) / (r + PADE_BD)
    }
}

/// Rational tangent approximation to the inverse Langevin function:
/// `x = (6/pi) tau (1 + b_n tau^2) / (1 + b_d tau^2)` with `tau = tan(pi y / 2)`.
///
/// Relative error is about 0.3% over the whole of `(-1, 1)`.
pub fn inv_langevin_pade(y: f64) -> Result<f64> {
    check_open_unit(y)?;
    Ok(pade_unchecked(y))
}

/// Exact inverse Langevin function with default tolerance.
pub fn inv_langevin(y: f64) -> Result<f64> {
    inv_langevin_with(y, InverseTolerance::default()).map(|s| s.x)
}

/// Solve `L(x) = y` for `|y| < 1`.
///
/// Newton's method from the tangent approximation, kept inside the bracket
/// `[3|y|, 1/(1-|y|)]` (from `1 - 1/x < L(x) < x/3` for `x > 0`); a step that
/// would leave the current bracket is replaced by bisection.
pub fn inv_langevin_with(y: f64, tol: InverseTolerance) -> Result<Inversion> {
    check_open_unit(y)?;
    if y == 0.0 {
        return Ok(Inversion {
            x: 0.0,
            iterations: 0,
            residual: 0.0,
        });
    }
    let target = y.abs();
    let mut lo = 3.0 * target;
    let mut hi = 1.0 / (1.0 - target);
    let mut x = pade_unchecked(target).clamp(lo, hi);
    let mut residual = langevin_unchecked(x) - target;

    for iter in 1..=tol.max_iter {
        if residual.abs() < tol.abs_tol {
            return Ok(finish(y, x, iter - 1, residual));
        }
        if residual > 0.0 {
            hi = x;
        } else {
            lo = x;
        }
        let slope = langevin_derivative_unchecked(x);
        let mut next = x - residual / slope;
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        let step = next - x;
        x = next;
        residual = langevin_unchecked(x) - target;
        if step.abs() < tol.abs_tol || residual.abs() < tol.abs_tol {
            return Ok(finish(y, x, iter, residual));
        }
    }
    Err(Error::Convergence {
        iterations: tol.max_iter,
        last: y.signum() * x,
        residual: residual.abs(),
    })
}

fn finish(y: f64, x: f64, iterations: usize, residual: f64) -> Inversion {
    Inversion {
        x: y.signum() * x,
        iterations,
        residual: residual.abs(),
    }
}

/// `log(sinh(w) / w)`, the antiderivative of `L` vanishing at 0. Even in `w`.
pub(crate) fn log_sinhc(w: f64) -> f64 {
    let a = w.abs();
    if a < 1.0 {
        let z = a * a;
        // integrate the L series term by term
        SERIES
            .iter()
            .enumerate()
            .rev()
            .fold(0.0, |acc, (n, &c)| acc * z + c / (2 * n + 2) as f64)
            * z
    } else if a < 20.0 {
        (a.sinh() / a).ln()
    } else {
        a - (2.0 * a).ln() + (-(-2.0 * a).exp()).ln_1p()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const L1: f64 = 0.313_035_285_499_331_3;

    #[test]
    fn origin_values() {
        assert_eq!(langevin(0.0).unwrap(), 0.0);
        assert_eq!(langevin_derivative(0.0).unwrap(), 1.0 / 3.0);
        assert_eq!(inv_langevin(0.0).unwrap(), 0.0);
        assert_eq!(inv_langevin_pade(0.0).unwrap(), 0.0);
    }

    #[test]
    fn known_values() {
        assert!((langevin(1.0).unwrap() - L1).abs() < 1e-16);
        // 1 - L(1)^2 - 2 L(1)
        assert!((langevin_derivative(1.0).unwrap() - 0.275_938_339_033_689_5).abs() < 1e-15);
        let d50 = langevin_derivative(50.0).unwrap();
        assert!(d50 > 0.0 && d50 < 1.0 / 3.0);
        assert!((d50 - 4.000_000_000_000_008e-4).abs() < 1e-18);
    }

    #[test]
    fn odd() {
        let x = 0.7;
        assert_eq!(langevin(-x).unwrap(), -langevin(x).unwrap());
    }

    #[test]
    fn saturation_branch() {
        assert_eq!(langevin(1000.0).unwrap(), 0.999);
        assert_eq!(langevin(-1e300).unwrap(), -1.0);
        assert_eq!(langevin_derivative(1e300).unwrap(), 0.0);
    }

    #[test]
    fn rejects_non_finite() {
        assert!(matches!(langevin(f64::NAN), Err(Error::Domain(_))));
        assert!(matches!(langevin_derivative(f64::INFINITY), Err(Error::Domain(_))));
    }

    #[test]
    fn pade_constants() {
        assert!((PADE_BD - 0.507_863_380_704_465_2).abs() < 1e-15);
        assert_eq!(format!("{PADE_BD:.3}"), "0.508");
        assert!((PADE_BN - PI * PI / 12.0 * PADE_BD).abs() < 1e-16);
    }

    #[test]
    fn pade_near_known_pair() {
        let x = inv_langevin_pade(L1).unwrap();
        assert!((x - 1.0).abs() < 0.005);
    }

    #[test]
    fn inverse_domain() {
        for y in [1.0, -1.0, 1.5, f64::NAN] {
            assert!(matches!(inv_langevin(y), Err(Error::Domain(_))));
            assert!(matches!(inv_langevin_pade(y), Err(Error::Domain(_))));
        }
    }

    #[test]
    fn inverse_known_pairs() {
        assert!((inv_langevin(L1).unwrap() - 1.0).abs() < 1e-10);
        let x = inv_langevin(0.999).unwrap();
        assert!((langevin(x).unwrap() - 0.999).abs() < 1e-10);
        assert!((x - 1000.0).abs() < 1e-6);
    }

    #[test]
    fn convergence_error_carries_state() {
        let tol = InverseTolerance::new(1e-300, 1).unwrap();
        match inv_langevin_with(0.6, tol) {
            Err(Error::Convergence { iterations, last, residual }) => {
                assert_eq!(iterations, 1);
                assert!(last > 0.0 && residual.is_finite());
            }
            other => panic!("expected convergence error, got {other:?}"),
        }
    }

    #[test]
    fn tolerance_validation() {
        assert!(InverseTolerance::new(0.0, 10).is_err());
        assert!(InverseTolerance::new(1e-12, 0).is_err());
        let d = InverseTolerance::default();
        assert_eq!((d.abs_tol(), d.max_iter()), (1e-12, 100));
    }

    #[test]
    fn log_sinhc_branches_agree() {
        for w in [0.999_999_999, 1.0, 19.999_999, 20.0] {
            let direct = (f64::sinh(w) / w).ln();
            assert!((log_sinhc(w) - direct).abs() < 1e-14 * direct.abs().max(1.0), "w={w}");
        }
        assert_eq!(log_sinhc(0.0), 0.0);
        assert_eq!(log_sinhc(-3.0), log_sinhc(3.0));
    }
}
