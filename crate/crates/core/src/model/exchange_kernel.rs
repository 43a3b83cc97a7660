//! The exchange velocity kernel
//!
//! ```text
//! g(R) = (1/2π) ∫₀^π ∫₀^R cos θ · r / √(r² − 2r cos θ + 1) dr dθ
//! ```
//!
//! evaluated through the folded form on θ ∈ [0, π/2], whose integrand
//! (2/π) r² cos²θ / (d₋ d₊ (d₋ + d₊)) with d± = √(r² ± 2r cos θ + 1) is
//! non-negative and free of cancellation at large r.

use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::OnceLock;

use rayon::prelude::*;

use crate::error::Result;
use crate::quadrature::{try_integrate_1d_with_breaks, QuadratureSpec};

/// The folded integrand with d± = √((r ± cos θ)² + sin²θ) supplied by the
/// caller in cancellation-free form.
#[inline]
fn folded(r: f64, cos_t: f64, dm: f64, dp: f64) -> f64 {
    let den = dm * dp * (dm + dp);
    if den == 0.0 {
        return 0.0;
    }
    (2.0 / PI) * r * r * cos_t * cos_t / den
}

#[inline]
fn folded_integrand(r: f64, cos_t: f64, sin_t: f64) -> f64 {
    let dm = (r - cos_t).hypot(sin_t);
    let dp = (r + cos_t).hypot(sin_t);
    folded(r, cos_t, dm, dp)
}

/// Radial integral ∫₀^R of the folded integrand at fixed θ.
fn radial_integral(big_r: f64, theta: f64, spec: &QuadratureSpec) -> Result<f64> {
    let (s, c) = theta.sin_cos();
    let mut total = 0.0;
    let near = big_r.min(2.0);
    // The integrand peaks at r = cos θ with width sin θ; r = c + s sinh τ
    // turns the peak into a plateau (dr = d₋ dτ).
    let tau = |r: f64| ((r - c) / s).asinh();
    let head = try_integrate_1d_with_breaks(
        |t| {
            let r = c + s * t.sinh();
            let dm = s * t.cosh();
            let dp = (r + c).hypot(s);
            Ok(folded(r, c, dm, dp) * dm)
        },
        tau(0.0),
        tau(near),
        &[0.0],
        spec,
    )?;
    total += head.value;
    if big_r > 2.0 {
        // r = e^u flattens the 1/r tail
        let far = try_integrate_1d_with_breaks(
            |u| {
                let r = u.exp();
                Ok(folded_integrand(r, c, s) * r)
            },
            2f64.ln(),
            big_r.ln(),
            &[],
            spec,
        )?;
        total += far.value;
    }
    Ok(total)
}

/// g(R) by nested adaptive quadrature (reference path, no caching).
///
/// The outer angle is parametrized as θ = t², which softens the
/// logarithmic singularity at θ = 0 when R ≥ 1.
pub fn g_kernel(big_r: f64, spec: &QuadratureSpec) -> Result<f64> {
    if big_r <= 0.0 {
        return Ok(0.0);
    }
    let inner = spec.inner(1.0);
    let t_max = FRAC_PI_2.sqrt();
    let res = try_integrate_1d_with_breaks(
        |t| {
            let theta = t * t;
            Ok(2.0 * t * radial_integral(big_r, theta, &inner)?)
        },
        0.0,
        t_max,
        &[],
        spec,
    )?;
    Ok(res.value)
}

/// g'(R) = (2/π) ∫₀^{π/2} R² cos²θ / (d₋ d₊ (d₋ + d₊)) dθ.
///
/// Diverges logarithmically at R = 1.
pub fn g_derivative(big_r: f64, spec: &QuadratureSpec) -> Result<f64> {
    if big_r <= 0.0 {
        return Ok(0.0);
    }
    // d₋² = (R − 1)² + 4R sin²(θ/2): a peak of width |R − 1| at θ = 0
    let delta = (big_r - 1.0).abs();
    let mut breaks = vec![];
    let mut b = delta;
    while b < FRAC_PI_2 {
        breaks.push(b);
        b *= 8.0;
    }
    let res = try_integrate_1d_with_breaks(
        |t| {
            let (s, c) = t.sin_cos();
            let half = (0.5 * t).sin();
            let dm = (big_r - 1.0).hypot(2.0 * half * big_r.sqrt());
            let dp = (big_r + c).hypot(s);
            Ok(folded(big_r, c, dm, dp))
        },
        0.0,
        FRAC_PI_2,
        &breaks,
        spec,
    )?;
    Ok(res.value)
}

/// Cached g on [1, ∞).
///
/// Nodes are uniform in x = ln(R − 1); values and exact derivatives are
/// joined by monotone (Fritsch-Carlson limited) cubic Hermite pieces.
/// Beyond the last node the large-R expansion
/// g' = 1/(4R) + 3/(32R³) + O(R⁻⁵) is integrated in closed form.
#[derive(Debug, Clone)]
pub struct GTable {
    x0: f64,
    step: f64,
    values: Vec<f64>,
    slopes: Vec<f64>,
    g_one: f64,
}

/// Table layout: ln(R − 1) from −23 to 14.5 in steps of 0.05.
const X_MIN: f64 = -23.0;
const X_MAX: f64 = 14.5;
const X_STEP: f64 = 0.05;

impl GTable {
    pub fn build(spec: &QuadratureSpec) -> Result<Self> {
        let n = ((X_MAX - X_MIN) / X_STEP).round() as usize + 1;
        let nodes: Vec<Result<(f64, f64)>> = (0..n)
            .into_par_iter()
            .map(|i| {
                let x = X_MIN + i as f64 * X_STEP;
                let d = x.exp();
                let r = 1.0 + d;
                let g = g_kernel(r, spec)?;
                // dg/dx = (R − 1) g'(R)
                let s = d * g_derivative(r, spec)?;
                Ok((g, s))
            })
            .collect();
        let mut values = Vec::with_capacity(n);
        let mut slopes = Vec::with_capacity(n);
        for node in nodes {
            let (g, s) = node?;
            values.push(g);
            slopes.push(s);
        }
        limit_slopes(&values, &mut slopes, X_STEP);
        Ok(Self {
            x0: X_MIN,
            step: X_STEP,
            values,
            slopes,
            g_one: g_kernel(1.0, spec)?,
        })
    }

    pub fn r_max(&self) -> f64 {
        1.0 + (self.x0 + self.step * (self.values.len() - 1) as f64).exp()
    }

    /// g(R) for R ≥ 1. Arguments below 1 are clamped to 1.
    pub fn eval(&self, big_r: f64) -> f64 {
        let d = big_r - 1.0;
        if d <= 0.0 {
            return self.g_one;
        }
        let last = self.values.len() - 1;
        let x = d.ln();
        if x < self.x0 {
            // g(1 + d) − g(1) = O(d log d) below the first node
            let d0 = self.x0.exp();
            return self.g_one + (self.values[0] - self.g_one) * d / d0;
        }
        let r_max = self.r_max();
        if big_r >= r_max {
            let tail = 0.25 * (big_r / r_max).ln() - (3.0 / 64.0) * (big_r.powi(-2) - r_max.powi(-2));
            return self.values[last] + tail;
        }
        let pos = (x - self.x0) / self.step;
        let i = (pos.floor() as usize).min(last - 1);
        let t = pos - i as f64;
        let (y0, y1) = (self.values[i], self.values[i + 1]);
        let (m0, m1) = (self.slopes[i] * self.step, self.slopes[i + 1] * self.step);
        let t2 = t * t;
        let t3 = t2 * t;
        (2.0 * t3 - 3.0 * t2 + 1.0) * y0
            + (t3 - 2.0 * t2 + t) * m0
            + (-2.0 * t3 + 3.0 * t2) * y1
            + (t3 - t2) * m1
    }
}

fn limit_slopes(values: &[f64], slopes: &mut [f64], h: f64) {
    for i in 0..values.len() - 1 {
        let delta = (values[i + 1] - values[i]) / h;
        if delta <= 0.0 {
            slopes[i] = 0.0;
            slopes[i + 1] = 0.0;
            continue;
        }
        let a = slopes[i] / delta;
        let b = slopes[i + 1] / delta;
        let s = a * a + b * b;
        if s > 9.0 {
            let tau = 3.0 / s.sqrt();
            slopes[i] = tau * a * delta;
            slopes[i + 1] = tau * b * delta;
        }
    }
}

static G_TABLE: OnceLock<GTable> = OnceLock::new();

/// Tolerances used to build the shared table.
pub fn table_spec() -> QuadratureSpec {
    QuadratureSpec {
        abs_tol: 1e-12,
        rel_tol: 1e-11,
        max_subdivisions: 4000,
    }
}

/// Process-wide g table, built on first use.
pub fn g_table() -> &'static GTable {
    G_TABLE.get_or_init(|| GTable::build(&table_spec()).expect("g table quadrature failed"))
}

/// g(R) through the shared table for R ≥ 1, direct quadrature below.
pub fn g_cached(big_r: f64) -> f64 {
    if big_r >= 1.0 - 1e-12 {
        g_table().eval(big_r)
    } else {
        g_kernel(big_r, &QuadratureSpec::default()).expect("g quadrature failed")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::catalan;

    /// g(R) from the closed-form radial antiderivative
    /// ∫ r/√(r² − 2rc + 1) dr = √(r² − 2rc + 1) + c ln(r − c + √(r² − 2rc + 1)),
    /// leaving a single θ-integral over [0, π].
    fn g_antiderivative_oracle(big_r: f64) -> f64 {
        let prim = |r: f64, c: f64, sn: f64| {
            let s = (r - c).hypot(sn);
            let arg = if r >= c { r - c + s } else { sn * sn / (s - (r - c)) };
            s + c * arg.ln()
        };
        let spec = QuadratureSpec {
            abs_tol: 1e-13,
            rel_tol: 1e-12,
            max_subdivisions: 4000,
        };
        let v = crate::quadrature::integrate_1d(
            |t| {
                let theta = t * t;
                let (sn, c) = theta.sin_cos();
                2.0 * t * c * (prim(big_r, c, sn) - prim(0.0, c, sn))
            },
            0.0,
            PI.sqrt(),
            &spec,
        )
        .unwrap()
        .value;
        v / (2.0 * PI)
    }

    #[test]
    fn g_at_one_matches_catalan() {
        let g1 = g_kernel(1.0, &QuadratureSpec::default()).unwrap();
        let exact = (2.0 * catalan() - 1.0) / (2.0 * PI);
        assert!((g1 - exact).abs() < 1e-9, "{g1} vs {exact}");
    }

    #[test]
    fn g_at_zero_and_below() {
        assert_eq!(g_kernel(0.0, &QuadratureSpec::default()).unwrap(), 0.0);
        let small = g_kernel(0.5, &QuadratureSpec::default()).unwrap();
        assert!((small - g_antiderivative_oracle(0.5)).abs() < 1e-9);
    }

    #[test]
    fn g_agrees_with_antiderivative_route() {
        for &r in &[0.3, 1.0, 1.5, 2.0, 7.0, 100.0] {
            let a = g_kernel(r, &QuadratureSpec::default()).unwrap();
            let b = g_antiderivative_oracle(r);
            assert!((a - b).abs() < 1e-8 * (1.0 + b.abs()), "R = {r}: {a} vs {b}");
        }
    }

    #[test]
    fn derivative_matches_finite_differences() {
        let spec = QuadratureSpec::default();
        for &r in &[1.3, 3.0, 40.0] {
            let h = 1e-4 * r;
            let fd = (g_kernel(r + h, &spec).unwrap() - g_kernel(r - h, &spec).unwrap()) / (2.0 * h);
            let d = g_derivative(r, &spec).unwrap();
            assert!((fd - d).abs() < 1e-6 * d.abs().max(1.0), "R = {r}: {fd} vs {d}");
        }
    }

    #[test]
    fn table_matches_direct_quadrature() {
        let table = g_table();
        let spec = table_spec();
        for &r in &[1.0, 1.0 + 1e-11, 1.0 + 3e-7, 1.01, 1.337, 2.5, 17.0, 1234.5, 9.9e5, 3e6, 1e9] {
            let direct = g_kernel(r, &spec).unwrap();
            let cached = table.eval(r);
            assert!((direct - cached).abs() < 1e-7, "R = {r}: {direct} vs {cached}");
        }
    }

    #[test]
    fn table_is_monotone() {
        let t = g_table();
        let mut prev = t.eval(1.0);
        let mut r = 1.0 + 1e-12;
        while r < 1e8 {
            let v = t.eval(r);
            assert!(v >= prev, "R = {r}");
            prev = v;
            r = 1.0 + (r - 1.0) * 1.37;
        }
    }
}
