//! Adaptive Gauss-Kronrod integration in one and two dimensions.
//!
//! The 1D engine is a globally adaptive bisection scheme on the 21-point
//! Kronrod extension of the 10-point Gauss rule, with the QUADPACK error
//! rescaling. Nodes never touch the interval endpoints, so integrable
//! endpoint singularities are allowed. The 2D engine nests two 1D passes.

use crate::error::{Error, Result};

/// Tolerances and subdivision budget for an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 1e-9,
            max_subdivisions: 2000,
        }
    }
}

impl QuadratureSpec {
    pub fn new(abs_tol: f64, rel_tol: f64, max_subdivisions: usize) -> Result<Self> {
        let spec = Self {
            abs_tol,
            rel_tol,
            max_subdivisions,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Looser tolerances used for nested 2D cross-checks.
    pub fn relaxed() -> Self {
        Self {
            abs_tol: 1e-8,
            rel_tol: 1e-6,
            max_subdivisions: 2000,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol >= 0.0 && self.rel_tol >= 0.0) {
            return Err(Error::InvalidParameter(
                "tolerances must be non-negative".into(),
            ));
        }
        if self.abs_tol == 0.0 && self.rel_tol == 0.0 {
            return Err(Error::InvalidParameter(
                "abs_tol and rel_tol cannot both be zero".into(),
            ));
        }
        if self.max_subdivisions == 0 {
            return Err(Error::InvalidParameter(
                "max_subdivisions must be positive".into(),
            ));
        }
        Ok(())
    }

    fn target(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }

    /// Spec for an inner integral of a nested scheme over an outer range of
    /// length `outer_width`.
    pub fn inner(&self, outer_width: f64) -> Self {
        let w = outer_width.abs().max(1e-300);
        Self {
            abs_tol: self.abs_tol / (10.0 * w.max(1.0)),
            rel_tol: self.rel_tol / 10.0,
            max_subdivisions: self.max_subdivisions,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689,
    0.973_906_528_517_171_720_077_964_012_084,
    0.930_157_491_355_708_226_001_207_180_060,
    0.865_063_366_688_984_510_732_096_688_423,
    0.780_817_726_586_416_897_063_717_578_345,
    0.679_409_568_299_024_406_234_327_365_115,
    0.562_757_134_668_604_683_339_000_099_273,
    0.433_395_394_129_247_190_799_265_943_166,
    0.294_392_862_701_460_198_131_126_603_104,
    0.148_874_338_981_631_210_884_826_001_130,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062,
    0.032_558_162_307_964_727_478_818_972_459,
    0.054_755_896_574_351_996_031_381_300_245,
    0.075_039_674_810_919_952_767_043_140_916,
    0.093_125_454_583_697_605_535_065_465_083,
    0.109_387_158_802_297_641_899_210_590_326,
    0.123_491_976_262_065_851_077_600_525_635,
    0.134_709_217_311_473_325_928_054_001_772,
    0.142_775_938_577_060_080_797_094_273_139,
    0.147_739_104_901_338_491_374_841_515_972,
    0.149_445_554_002_916_905_664_936_468_390,
];

// Gauss weights for the nodes XGK[1], XGK[3], ..., XGK[9].
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893,
    0.149_451_349_150_580_593_145_776_339_658,
    0.219_086_362_515_982_043_995_534_934_228,
    0.269_266_719_309_996_355_091_226_921_569,
    0.295_524_224_714_752_870_173_892_994_651,
];

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    splittable: bool,
}

fn gk21<F>(f: &mut F, a: f64, b: f64) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let eval = |f: &mut F, x: f64| -> Result<f64> {
        let y = f(x)?;
        if y.is_finite() {
            Ok(y)
        } else {
            Err(Error::NonFinite(x))
        }
    };

    let fc = eval(f, center)?;
    let mut res_g = 0.0;
    let mut res_k = fc * WGK[10];
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];

    for j in 0..5 {
        let jt = 2 * j + 1;
        let dx = half * XGK[jt];
        let f1 = eval(f, center - dx)?;
        let f2 = eval(f, center + dx)?;
        fv1[jt] = f1;
        fv2[jt] = f2;
        res_g += WG[j] * (f1 + f2);
        res_k += WGK[jt] * (f1 + f2);
        res_abs += WGK[jt] * (f1.abs() + f2.abs());
    }
    for j in 0..5 {
        let jt = 2 * j;
        let dx = half * XGK[jt];
        let f1 = eval(f, center - dx)?;
        let f2 = eval(f, center + dx)?;
        fv1[jt] = f1;
        fv2[jt] = f2;
        res_k += WGK[jt] * (f1 + f2);
        res_abs += WGK[jt] * (f1.abs() + f2.abs());
    }

    let mean = 0.5 * res_k;
    let mut res_asc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let h = half.abs();
    let result = res_k * half;
    res_abs *= h;
    res_asc *= h;
    let mut err = ((res_k - res_g) * half).abs();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    Ok((result, err))
}

fn segment<F>(f: &mut F, a: f64, b: f64) -> Result<Segment>
where
    F: FnMut(f64) -> Result<f64>,
{
    let (value, error) = gk21(f, a, b)?;
    let tiny = 100.0 * f64::EPSILON * a.abs().max(b.abs()).max(f64::MIN_POSITIVE);
    Ok(Segment {
        a,
        b,
        value,
        error,
        splittable: (b - a).abs() > tiny,
    })
}

/// Adaptive integration of a fallible integrand over `[a, b]`, with
/// optional interior breakpoints (kinks, peaks, known singularities).
///
/// Breakpoints outside `(a, b)` are ignored.
pub fn try_integrate_1d_with_breaks<F>(
    mut f: F,
    a: f64,
    b: f64,
    breaks: &[f64],
    spec: &QuadratureSpec,
) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    spec.validate()?;
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::Domain("integration limits must be finite".into()));
    }
    if a == b {
        return Ok(QuadratureResult {
            value: 0.0,
            error_estimate: 0.0,
            evaluations: 0,
        });
    }
    let (lo, hi, sign) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };

    let mut cuts: Vec<f64> = breaks
        .iter()
        .copied()
        .filter(|x| x.is_finite() && *x > lo && *x < hi)
        .collect();
    cuts.sort_by(|x, y| x.partial_cmp(y).unwrap());
    cuts.dedup();
    let mut edges = Vec::with_capacity(cuts.len() + 2);
    edges.push(lo);
    edges.extend(cuts);
    edges.push(hi);

    let mut segments = Vec::with_capacity(64);
    for w in edges.windows(2) {
        segments.push(segment(&mut f, w[0], w[1])?);
    }
    let mut evaluations = 21 * segments.len();
    let mut subdivisions = 0usize;

    loop {
        let value: f64 = segments.iter().map(|s| s.value).sum();
        let error: f64 = segments.iter().map(|s| s.error).sum();
        if error <= spec.target(value) {
            return Ok(QuadratureResult {
                value: sign * value,
                error_estimate: error,
                evaluations,
            });
        }
        // worst splittable segment; ties resolved by position for determinism
        let worst = segments
            .iter()
            .enumerate()
            .filter(|(_, s)| s.splittable)
            .max_by(|(_, x), (_, y)| x.error.partial_cmp(&y.error).unwrap())
            .map(|(i, _)| i);
        let Some(i) = worst else {
            return Err(Error::NonConvergence {
                value: sign * value,
                error_estimate: error,
                subdivisions,
            });
        };
        if subdivisions >= spec.max_subdivisions {
            return Err(Error::NonConvergence {
                value: sign * value,
                error_estimate: error,
                subdivisions,
            });
        }
        let s = segments[i];
        let mid = 0.5 * (s.a + s.b);
        let left = segment(&mut f, s.a, mid)?;
        let right = segment(&mut f, mid, s.b)?;
        evaluations += 42;
        subdivisions += 1;
        segments[i] = left;
        segments.push(right);
    }
}

pub fn try_integrate_1d<F>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    try_integrate_1d_with_breaks(f, a, b, &[], spec)
}

/// Adaptive integration of `f` over `[a, b]`.
pub fn integrate_1d<F>(mut f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> f64,
{
    try_integrate_1d_with_breaks(|x| Ok(f(x)), a, b, &[], spec)
}

pub fn integrate_1d_with_breaks<F>(
    mut f: F,
    a: f64,
    b: f64,
    breaks: &[f64],
    spec: &QuadratureSpec,
) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> f64,
{
    try_integrate_1d_with_breaks(|x| Ok(f(x)), a, b, breaks, spec)
}

/// Integration domains for [`integrate_2d`]. `x` is the outer variable.
pub enum Domain2d<'a> {
    Rectangle {
        x: (f64, f64),
        y: (f64, f64),
    },
    /// Rectangle restricted to the points where `mask` holds.
    Masked {
        x: (f64, f64),
        y: (f64, f64),
        mask: &'a (dyn Fn(f64, f64) -> bool + Sync),
    },
    /// `y` ranges over `limits(x)` for each `x`.
    Bounded {
        x: (f64, f64),
        limits: &'a (dyn Fn(f64) -> (f64, f64) + Sync),
    },
}

/// Nested adaptive integration over a 2D domain.
///
/// The error estimate combines the outer estimate with the accumulated
/// inner estimates.
pub fn integrate_2d<F>(f: F, domain: &Domain2d<'_>, spec: &QuadratureSpec) -> Result<QuadratureResult>
where
    F: Fn(f64, f64) -> f64,
{
    let (xa, xb) = match domain {
        Domain2d::Rectangle { x, .. } | Domain2d::Masked { x, .. } | Domain2d::Bounded { x, .. } => *x,
    };
    let inner_spec = spec.inner(xb - xa);
    let mut inner_error = 0.0;
    let mut inner_evals = 0usize;
    let outer = try_integrate_1d(
        |x| {
            let r = match domain {
                Domain2d::Rectangle { y, .. } => integrate_1d(|t| f(x, t), y.0, y.1, &inner_spec)?,
                Domain2d::Masked { y, mask, .. } => {
                    let breaks = mask_edges(|t| mask(x, t), y.0, y.1);
                    integrate_1d_with_breaks(
                        |t| if mask(x, t) { f(x, t) } else { 0.0 },
                        y.0,
                        y.1,
                        &breaks,
                        &inner_spec,
                    )?
                }
                Domain2d::Bounded { limits, .. } => {
                    let (lo, hi) = limits(x);
                    if hi <= lo {
                        return Ok(0.0);
                    }
                    integrate_1d(|t| f(x, t), lo, hi, &inner_spec)?
                }
            };
            inner_error = f64::max(inner_error, r.error_estimate);
            inner_evals += r.evaluations;
            Ok(r.value)
        },
        xa,
        xb,
        spec,
    )?;
    Ok(QuadratureResult {
        value: outer.value,
        error_estimate: outer.error_estimate + inner_error * (xb - xa).abs(),
        evaluations: inner_evals,
    })
}

/// Locates the points where `inside` flips on [a, b] by a coarse scan
/// followed by bisection, so the masked integrand is smooth on each piece.
fn mask_edges(inside: impl Fn(f64) -> bool, a: f64, b: f64) -> Vec<f64> {
    const SCAN: usize = 64;
    let h = (b - a) / SCAN as f64;
    let mut edges = Vec::new();
    let mut prev = inside(a);
    for i in 1..=SCAN {
        let t = if i == SCAN { b } else { a + i as f64 * h };
        let cur = inside(t);
        if cur != prev {
            let (mut lo, mut hi) = (t - h, t);
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                if inside(mid) == prev {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            edges.push(0.5 * (lo + hi));
        }
        prev = cur;
    }
    edges
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`, ascending.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n > 0, "need at least one node");
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let m = n.div_ceil(2);
    let nf = n as f64;
    for i in 0..m {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            if n == 1 {
                p0 = 1.0;
                p1 = z;
            }
            dp = nf * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn polynomial_exact() {
        let r = integrate_1d(|x| x, 0.0, 1.0, &QuadratureSpec::default()).unwrap();
        assert!((r.value - 0.5).abs() < 1e-15);
    }

    #[test]
    fn inverse_sqrt_endpoint() {
        let r = integrate_1d(|x| x.powf(-0.5), 0.0, 1.0, &QuadratureSpec::default()).unwrap();
        assert!((r.value - 2.0).abs() < 1e-9, "{}", r.value);
        assert!(r.error_estimate <= 2e-9);
    }

    #[test]
    fn cosine_symmetry() {
        let r = integrate_1d(f64::cos, 0.0, PI, &QuadratureSpec::default()).unwrap();
        assert!(r.value.abs() < 1e-12);
    }

    #[test]
    fn degenerate_interval() {
        let r = integrate_1d(|_| 1.0, 3.0, 3.0, &QuadratureSpec::default()).unwrap();
        assert_eq!(r.value, 0.0);
        assert_eq!(r.error_estimate, 0.0);
    }

    #[test]
    fn reversed_limits_flip_sign() {
        let spec = QuadratureSpec::default();
        let r = integrate_1d(|x| x * x, 1.0, 0.0, &spec).unwrap();
        assert!((r.value + 1.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let spec = QuadratureSpec::new(0.0, 1e-14, 3).unwrap();
        let err = integrate_1d(|x| (1.0 / x).sin() / x.sqrt(), 1e-6, 1.0, &spec).unwrap_err();
        assert!(matches!(err, Error::NonConvergence { .. }));
    }

    #[test]
    fn non_finite_integrand() {
        let err = integrate_1d(|x| 1.0 / (x - 0.5), 0.0, 1.0, &QuadratureSpec::default());
        // 0.5 is the midpoint of the first Kronrod rule
        assert!(matches!(err, Err(Error::NonFinite(_))));
    }

    #[test]
    fn invalid_spec() {
        assert!(QuadratureSpec::new(0.0, 0.0, 10).is_err());
        assert!(QuadratureSpec::new(1e-8, 1e-8, 0).is_err());
        assert!(QuadratureSpec::new(-1.0, 1e-8, 10).is_err());
    }

    #[test]
    fn unit_square() {
        let r = integrate_2d(
            |_, _| 1.0,
            &Domain2d::Rectangle {
                x: (0.0, 1.0),
                y: (0.0, 1.0),
            },
            &QuadratureSpec::default(),
        )
        .unwrap();
        assert!((r.value - 1.0).abs() < 1e-14);
    }

    #[test]
    fn unit_disk_masked_area() {
        let mask = |x: f64, y: f64| x * x + y * y <= 1.0;
        let r = integrate_2d(
            |_, _| 1.0,
            &Domain2d::Masked {
                x: (-1.0, 1.0),
                y: (-1.0, 1.0),
                mask: &mask,
            },
            &QuadratureSpec::relaxed(),
        )
        .unwrap();
        assert!((r.value - PI).abs() < 1e-7, "{}", r.value);
    }

    #[test]
    fn unit_disk_bounded_area() {
        let lim = |x: f64| {
            let h = (1.0 - x * x).max(0.0).sqrt();
            (-h, h)
        };
        let r = integrate_2d(
            |_, _| 1.0,
            &Domain2d::Bounded {
                x: (-1.0, 1.0),
                limits: &lim,
            },
            &QuadratureSpec::default(),
        )
        .unwrap();
        assert!((r.value - PI).abs() < 1e-9);
    }

    #[test]
    fn gauss_legendre_moments() {
        for n in [1, 2, 5, 16, 64] {
            let (x, w) = gauss_legendre(n);
            let total: f64 = w.iter().sum();
            assert!((total - 2.0).abs() < 1e-13);
            // exact up to degree 2n - 1
            let deg = 2 * n - 1;
            let m: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(deg as i32 - 1)).sum();
            let exact = if (deg - 1) % 2 == 0 { 2.0 / deg as f64 } else { 0.0 };
            assert!((m - exact).abs() < 1e-13, "n={n}: {m} vs {exact}");
            assert!(x.windows(2).all(|p| p[0] < p[1]));
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn additivity(c in 0.05f64..0.95, k in 0.5f64..6.0) {
                let spec = QuadratureSpec::default();
                let f = |x: f64| (k * x).sin() + x.sqrt();
                let whole = integrate_1d(f, 0.0, 1.0, &spec).unwrap();
                let l = integrate_1d(f, 0.0, c, &spec).unwrap();
                let r = integrate_1d(f, c, 1.0, &spec).unwrap();
                let slack = whole.error_estimate + l.error_estimate + r.error_estimate + 1e-14;
                prop_assert!((whole.value - l.value - r.value).abs() <= slack);
            }

            #[test]
            fn linearity(a in -3.0f64..3.0, b in -3.0f64..3.0) {
                let spec = QuadratureSpec::default();
                let f = |x: f64| (-x * x).exp();
                let g = |x: f64| 1.0 / (1.0 + x);
                let lhs = integrate_1d(|x| a * f(x) + b * g(x), 0.0, 2.0, &spec).unwrap().value;
                let rhs = a * integrate_1d(f, 0.0, 2.0, &spec).unwrap().value
                    + b * integrate_1d(g, 0.0, 2.0, &spec).unwrap().value;
                prop_assert!((lhs - rhs).abs() <= 1e-9 * (1.0 + rhs.abs()));
            }

            #[test]
            fn deterministic(k in 0.1f64..10.0) {
                let spec = QuadratureSpec::default();
                let f = |x: f64| (k * x).cos() / (1.0 + x * x);
                let r1 = integrate_1d(f, -1.0, 3.0, &spec).unwrap();
                let r2 = integrate_1d(f, -1.0, 3.0, &spec).unwrap();
                prop_assert_eq!(r1.value.to_bits(), r2.value.to_bits());
                prop_assert_eq!(r1.error_estimate.to_bits(), r2.error_estimate.to_bits());
            }
        }
    }
}
