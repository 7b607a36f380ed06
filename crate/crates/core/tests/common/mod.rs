//! Oracles shared by the integration tests. None of these call into the
//! crate's own Langevin or cumulant code paths.
#![allow(dead_code)]

use num_complex::Complex64;
use std::f64::consts::PI;

/// Deterministic SplitMix64 stream for parameter sweeps.
pub struct Sweep(u64);

impl Sweep {
    pub fn new(seed: u64) -> Self {
        Self(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `[lo, hi)`.
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        let u = (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
        lo + (hi - lo) * u
    }

    /// `(gamma, k_min, k_max)` with `|gamma * delta| <= max_x`.
    pub fn params(&mut self, max_x: f64) -> (f64, f64, f64) {
        let k_min = self.uniform(-1.0, 1.0);
        let width = self.uniform(0.1, 2.0);
        let x = self.uniform(-max_x, max_x);
        (x / (0.5 * width), k_min, k_min + width)
    }
}

/// Langevin function straight from the definition, in complex arithmetic.
pub fn langevin_complex(w: Complex64) -> Complex64 {
    // coth via exp(-2|Re w|) so large arguments do not overflow
    let coth = if w.re >= 0.0 {
        let q = (-2.0 * w).exp();
        (1.0 + q) / (1.0 - q)
    } else {
        let q = (2.0 * w).exp();
        -(1.0 + q) / (1.0 - q)
    };
    coth - 1.0 / w
}

/// k-th derivative of `log(sinh(u)/u)` at real `u` by the Cauchy integral of
/// its first derivative `L` over a circle of radius `r` (trapezoidal rule,
/// spectrally accurate for analytic integrands). Needs `r < pi` when
/// `|u|` is small so the circle avoids the poles at `+-i pi`.
pub fn contour_derivative(k: usize, u: f64, r: f64, nodes: usize) -> f64 {
    // f = L, f^(k-1)(u) = (k-1)! / (2 pi i) oint f(z) / (z-u)^k dz
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..nodes {
        let theta = 2.0 * PI * (j as f64 + 0.5) / nodes as f64;
        let e = Complex64::from_polar(1.0, theta);
        let z = Complex64::new(u, 0.0) + r * e;
        acc += langevin_complex(z) * e.powi(1 - k as i32);
    }
    let fact: f64 = (1..k).map(|j| j as f64).product();
    fact * acc.re / (nodes as f64 * r.powi(k as i32 - 1))
}

/// k-th derivative of `log(sinh(u)/u)` for `u > 0`, `k >= 2`, from
/// `log sinh u = u - log 2 + log(1 - e^{-2u})`:
/// `(-1)^k (k-1)!/u^k - sum_m (-2m)^k e^{-2mu} / m`.
pub fn exp_sum_derivative(k: usize, u: f64) -> f64 {
    assert!(u > 0.0 && k >= 2);
    let fact: f64 = (1..k).map(|j| j as f64).product();
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    let mut tail = 0.0;
    for m in 1..2000 {
        let m = m as f64;
        let t = (-2.0 * m).powi(k as i32) * (-2.0 * m * u).exp() / m;
        tail += t;
        if t.abs() < 1e-30 * tail.abs().max(1e-300) && m > 5.0 {
            break;
        }
    }
    sign * fact / u.powi(k as i32) - tail
}

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for j in 2..=n {
                let j = j as f64;
                let p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

/// Composite 20-point Gauss-Legendre over `[a, b]` with `panels` panels.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    let rule = gauss_legendre(20);
    let h = (b - a) / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let lo = a + p as f64 * h;
        let mid = lo + 0.5 * h;
        let s: f64 = rule.iter().map(|&(x, w)| w * f(mid + 0.5 * h * x)).sum();
        total += 0.5 * h * s;
    }
    total
}

/// Unnormalized density `exp(gamma (k - k_ref))` with `k_ref` the endpoint
/// where the exponent is largest, so it never overflows.
pub fn raw_density(gamma: f64, k_min: f64, k_max: f64) -> impl Fn(f64) -> f64 {
    let k_ref = if gamma >= 0.0 { k_max } else { k_min };
    move |k| (gamma * (k - k_ref)).exp()
}

/// Mean and variance by quadrature of the unnormalized density.
pub fn quadrature_moments(gamma: f64, k_min: f64, k_max: f64) -> (f64, f64) {
    let f = raw_density(gamma, k_min, k_max);
    let panels = 400;
    let z = integrate(&f, k_min, k_max, panels);
    let m = integrate(|k| k * f(k), k_min, k_max, panels) / z;
    let v = integrate(|k| (k - m) * (k - m) * f(k), k_min, k_max, panels) / z;
    (m, v)
}

/// Fornberg weights for the `order`-th derivative at 0 on the given nodes.
pub fn fornberg_weights(nodes: &[f64], order: usize) -> Vec<f64> {
    let n = nodes.len();
    let mut c = vec![vec![0.0; order + 1]; n];
    c[0][0] = 1.0;
    let mut c1 = 1.0;
    let mut c4 = nodes[0];
    for i in 1..n {
        let mn = i.min(order);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = nodes[i];
        for j in 0..i {
            let c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if j == i - 1 {
                for m in (1..=mn).rev() {
                    c[i][m] = c1 * (m as f64 * c[i - 1][m - 1] - c5 * c[i - 1][m]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for m in (1..=mn).rev() {
                c[j][m] = (c4 * c[j][m] - m as f64 * c[j][m - 1]) / c3;
            }
            c[j][0] *= c4 / c3;
        }
        c1 = c2;
    }
    c.iter().map(|row| row[order]).collect()
}

/// k-th derivative at 0 of `f` from a symmetric `2m+1`-point stencil with
/// spacing `h`.
pub fn stencil_derivative(f: impl Fn(f64) -> f64, k: usize, h: f64, m: usize) -> f64 {
    let nodes: Vec<f64> = (0..=2 * m).map(|i| (i as f64 - m as f64) * h).collect();
    let w = fornberg_weights(&nodes, k);
    nodes.iter().zip(&w).map(|(&x, &w)| w * f(x)).sum()
}

/// `C^(k)(0)` of a cumulant generating function by a 21-point stencil
/// spanning `+-0.45 * dist / delta`, where `dist = |x + i pi|` is the
/// distance to the nearest singularity in units of `delta`.
pub fn cgf_fd_cumulant(cgf: impl Fn(f64) -> f64, k: usize, x: f64, delta: f64) -> f64 {
    const M: usize = 10;
    let span = 0.45 * x.hypot(PI) / delta;
    stencil_derivative(cgf, k, span / M as f64, M)
}
