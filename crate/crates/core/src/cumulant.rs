//! Cumulants of every order through a polynomial recursion in `L` and `1/u`.
//!
//! Write `u = x + s*delta` and `C'(s) = alpha + delta*L(u)`. Since
//! `dL/du = 1 - L^2 - 2L/u` and `d(1/u)/du = -1/u^2`, every further derivative
//! of `C` is `delta^k` times an integer polynomial in `L(u)` and `1/u`.
//! [`CumulantPoly`] holds that polynomial; the monomial `L^a u^-b` is
//! differentiated as
//!
//! ```text
//! d/du [L^a u^-b] = a L^(a-1) (1 - L^2 - 2L/u) u^-b - b L^a u^-(b+1)
//! ```
//!
//! Near `u = 0` the polynomial cancels catastrophically (terms in `u^-(k-1)`
//! sum to a finite limit), so there the derivative is taken from the Taylor
//! series of `log(sinh(u)/u)` instead.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::langevin::{langevin_unchecked, SERIES};

/// Highest cumulant order supported.
pub const MAX_CUMULANT_ORDER: usize = 20;

/// Below this `|u|` cumulants come from the Taylor series rather than the
/// polynomial.
pub const POLY_THRESHOLD: f64 = 1.6;

/// Taylor terms kept for `log(sinh(u)/u)`. Radius of convergence is `pi`.
const TAYLOR_TERMS: usize = 160;

/// Polynomial `sum c[a,b] L^a (1/u)^b` giving `C^(k)(s) / delta^k` for
/// `k >= 2`. Order 1 is `L` alone; the constant `alpha/delta` is added by
/// the caller.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CumulantPoly {
    order: usize,
    terms: BTreeMap<(u32, u32), i128>,
}

impl CumulantPoly {
    fn first() -> Self {
        let mut terms = BTreeMap::new();
        terms.insert((1, 0), 1);
        Self { order: 1, terms }
    }

    fn derivative(&self) -> Option<Self> {
        let mut out: BTreeMap<(u32, u32), i128> = BTreeMap::new();
        let mut add = |key: (u32, u32), c: i128| -> Option<()> {
            let slot = out.entry(key).or_insert(0);
            *slot = slot.checked_add(c)?;
            Some(())
        };
        for (&(a, b), &c) in &self.terms {
            if a > 0 {
                let ca = c.checked_mul(a as i128)?;
                add((a - 1, b), ca)?;
                add((a + 1, b), -ca)?;
                add((a, b + 1), ca.checked_mul(-2)?)?;
            }
            if b > 0 {
                add((a, b + 1), c.checked_mul(-(b as i128))?)?;
            }
        }
        out.retain(|_, c| *c != 0);
        Some(Self {
            order: self.order + 1,
            terms: out,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Coefficient of `L^a (1/u)^b`, zero when absent.
    pub fn coefficient(&self, a: u32, b: u32) -> i128 {
        self.terms.get(&(a, b)).copied().unwrap_or(0)
    }

    /// Nonzero terms as `((a, b), coefficient)` in lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), i128)> + '_ {
        self.terms.iter().map(|(&k, &c)| (k, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Evaluate at `L = l` and `1/u = inv_u`.
    pub fn evaluate(&self, l: f64, inv_u: f64) -> f64 {
        // Horner in 1/u for each power of L, then Horner in L.
        let max_a = self.terms.keys().map(|k| k.0).max().unwrap_or(0);
        let mut acc = 0.0;
        for a in (0..=max_a).rev() {
            let max_b = self
                .terms
                .range((a, 0)..=(a, u32::MAX))
                .map(|(k, _)| k.1)
                .max();
            let row = match max_b {
                Some(mb) => (0..=mb)
                    .rev()
                    .fold(0.0, |r, b| r * inv_u + self.coefficient(a, b) as f64),
                None => 0.0,
            };
            acc = acc * l + row;
        }
        acc
    }
}

impl fmt::Display for CumulantPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for ((a, b), c) in self.terms() {
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.unsigned_abs();
            let mut parts = Vec::new();
            if mag != 1 || (a == 0 && b == 0) {
                parts.push(mag.to_string());
            }
            match a {
                0 => {}
                1 => parts.push("L".into()),
                _ => parts.push(format!("L^{a}")),
            }
            match b {
                0 => {}
                1 => parts.push("u^-1".into()),
                _ => parts.push(format!("u^-{b}")),
            }
            write!(f, "{}", parts.join("*"))?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// The same polynomial rewritten in `v = 1/u` and `e = coth(u) - 1` by
/// substituting `L = 1 - v + e`. For `u > 0` the `e`-free part collapses to
/// `(-1)^k (k-1)! v^k` and everything else carries a factor `e`, so nothing
/// cancels as `u` grows.
#[derive(Debug, Clone)]
struct ShiftedPoly {
    /// `(power of v, power of e) -> coefficient`
    terms: Vec<((u32, u32), i128)>,
}

impl ShiftedPoly {
    fn from_poly(p: &CumulantPoly) -> Option<Self> {
        let mut out: BTreeMap<(u32, u32), i128> = BTreeMap::new();
        for ((a, b), c) in p.terms() {
            // L^a = sum_j C(a,j) e^j sum_i C(a-j,i) (-v)^i
            for j in 0..=a {
                let cj = binomial(a, j)?;
                for i in 0..=(a - j) {
                    let ci = binomial(a - j, i)?;
                    let sign: i128 = if i % 2 == 0 { 1 } else { -1 };
                    let term = c.checked_mul(cj)?.checked_mul(ci)?.checked_mul(sign)?;
                    let slot = out.entry((b + i, j)).or_insert(0);
                    *slot = slot.checked_add(term)?;
                }
            }
        }
        out.retain(|_, c| *c != 0);
        Some(Self {
            terms: out.into_iter().collect(),
        })
    }

    fn evaluate(&self, v: f64, e: f64) -> f64 {
        self.terms
            .iter()
            .map(|&((i, j), c)| c as f64 * v.powi(i as i32) * e.powi(j as i32))
            .sum()
    }
}

fn binomial(n: u32, k: u32) -> Option<i128> {
    let mut r: i128 = 1;
    for i in 0..k {
        r = r.checked_mul((n - i) as i128)? / (i + 1) as i128;
    }
    Some(r)
}

fn shifted_table() -> &'static [ShiftedPoly] {
    static TABLE: OnceLock<Vec<ShiftedPoly>> = OnceLock::new();
    TABLE.get_or_init(|| {
        poly_table()
            .iter()
            .map(|p| ShiftedPoly::from_poly(p).expect("shifted coefficients fit in i128"))
            .collect()
    })
}

fn poly_table() -> &'static [CumulantPoly] {
    static TABLE: OnceLock<Vec<CumulantPoly>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut table = vec![CumulantPoly::first()];
        while table.len() < MAX_CUMULANT_ORDER {
            let next = table
                .last()
                .and_then(CumulantPoly::derivative)
                .expect("cumulant coefficients fit in i128 up to MAX_CUMULANT_ORDER");
            table.push(next);
        }
        table
    })
}

pub(crate) fn check_order(k: usize) -> Result<()> {
    if (1..=MAX_CUMULANT_ORDER).contains(&k) {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "cumulant order must be in 1..={MAX_CUMULANT_ORDER}, got {k}"
        )))
    }
}

/// The order-`k` polynomial; cached after first use.
pub fn cumulant_poly(k: usize) -> Result<&'static CumulantPoly> {
    check_order(k)?;
    Ok(&poly_table()[k - 1])
}

/// Taylor coefficients `c_n` of `log(sinh(u)/u) = sum_{n>=1} c_n u^(2n)`,
/// `c_n = (-1)^(n+1) zeta(2n) / (n pi^(2n))`. The leading ones are taken
/// from the Langevin series (`c_n = SERIES[n-1] / 2n`) so that both agree
/// to the last bit.
fn taylor_coefficients() -> &'static [f64] {
    static COEF: OnceLock<Vec<f64>> = OnceLock::new();
    COEF.get_or_init(|| {
        (1..=TAYLOR_TERMS)
            .map(|n| {
                if let Some(a) = SERIES.get(n - 1) {
                    return a / (2 * n) as f64;
                }
                let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
                sign * zeta_even(n) / (n as f64 * PI.powi(2 * n as i32))
            })
            .collect()
    })
}

/// `zeta(2n)` for `n >= 1`.
fn zeta_even(n: usize) -> f64 {
    let p2 = PI * PI;
    match n {
        1 => p2 / 6.0,
        2 => p2 * p2 / 90.0,
        3 => p2 * p2 * p2 / 945.0,
        4 => p2 * p2 * p2 * p2 / 9450.0,
        _ => {
            // tail beyond 200 is below 200^(1-2n)/(2n-1) < 1e-20
            let s = -(2 * n as i32);
            (1..=200).rev().map(|j| (j as f64).powi(s)).sum()
        }
    }
}

/// k-th derivative of `log(sinh(u)/u)` from its Taylor series.
fn taylor_derivative(k: usize, u: f64) -> f64 {
    let coef = taylor_coefficients();
    let mut sum = 0.0;
    for (i, &c) in coef.iter().enumerate() {
        let p = 2 * (i + 1);
        if p < k {
            continue;
        }
        let falling: f64 = ((p - k + 1)..=p).map(|j| j as f64).product();
        sum += c * falling * u.powi((p - k) as i32);
    }
    sum
}

/// k-th derivative of `log(sinh(u)/u)` at `u`, `1 <= k <= MAX_CUMULANT_ORDER`.
pub(crate) fn log_sinhc_derivative(k: usize, u: f64) -> f64 {
    if k == 1 {
        return langevin_unchecked(u);
    }
    if u.abs() < POLY_THRESHOLD {
        return taylor_derivative(k, u);
    }
    // g is even, so g^(k)(-u) = (-1)^k g^(k)(u)
    let a = u.abs();
    let e = 2.0 / (2.0 * a).exp_m1();
    let val = shifted_table()[k - 1].evaluate(1.0 / a, e);
    if u < 0.0 && k % 2 == 1 {
        -val
    } else {
        val
    }
}
