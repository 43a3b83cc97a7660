//! Linear dielectric response of the Dirac sea.
//!
//! With L = Λ/|k|, the polarization function with exchange is
//!
//! ```text
//! B(k) = (2/π) ∫_{1/2}^{L} dw ∫_0^{min(1/2, L−w)} dv √(1/4−v²)/√(w²−1/4)
//!        / [2 v_F w + (v+w) g(L/(v+w)) + (w−v) g(L/(w−v))]
//! ```
//!
//! and B⁰ is the same with g ≡ 0. Integrals in (v, w) are evaluated after
//! w = cosh(u)/2, v = sin(φ)/2, which removes both square-root endpoint
//! singularities.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::cutoff::bump_chi_hat;
use crate::error::{Error, Result};
use crate::model::{g_cached, g_kernel, ModelParams};
use crate::quadrature::{try_integrate_1d, try_integrate_1d_with_breaks, QuadratureSpec};
use crate::special::bessel_j0;

/// External charge distribution of the defect.
#[derive(Debug, Clone, PartialEq)]
pub enum DefectDensity {
    /// ν(x) = q/(2πs²) e^{−|x|²/(2s²)}.
    Gaussian { charge: f64, width: f64 },
    /// Uniform charge q on the disk of the given radius.
    UniformDisk { charge: f64, radius: f64 },
    /// Radial profile ν(r), linear between the nodes and zero beyond the
    /// last one.
    Tabulated { radii: Vec<f64>, values: Vec<f64> },
}

impl DefectDensity {
    pub fn gaussian(charge: f64, width: f64) -> Result<Self> {
        if !(width > 0.0) {
            return Err(Error::InvalidParameter(format!("Gaussian width must be positive, got {width}")));
        }
        Ok(Self::Gaussian { charge, width })
    }

    pub fn uniform_disk(charge: f64, radius: f64) -> Result<Self> {
        if !(radius > 0.0) {
            return Err(Error::InvalidParameter(format!("disk radius must be positive, got {radius}")));
        }
        Ok(Self::UniformDisk { charge, radius })
    }

    pub fn tabulated(radii: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if radii.len() != values.len() || radii.len() < 2 {
            return Err(Error::Shape("need matching radii/values with at least two nodes".into()));
        }
        if radii[0] != 0.0 || radii.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Shape("radii must start at 0 and increase strictly".into()));
        }
        Ok(Self::Tabulated { radii, values })
    }

    /// The zero density.
    pub fn zero() -> Self {
        Self::Gaussian { charge: 0.0, width: 1.0 }
    }

    /// ν(r) in position space.
    pub fn value(&self, r: f64) -> f64 {
        match self {
            Self::Gaussian { charge, width } => {
                charge / (2.0 * PI * width * width) * (-0.5 * r * r / (width * width)).exp()
            }
            Self::UniformDisk { charge, radius } => {
                if r <= *radius {
                    charge / (PI * radius * radius)
                } else {
                    0.0
                }
            }
            Self::Tabulated { radii, values } => {
                let last = radii.len() - 1;
                if r >= radii[last] {
                    return 0.0;
                }
                let i = radii.partition_point(|&x| x <= r).saturating_sub(1);
                let t = (r - radii[i]) / (radii[i + 1] - radii[i]);
                values[i] + t * (values[i + 1] - values[i])
            }
        }
    }

    /// ν̂(k) = ∫ν(x)e^{−ik·x}dx, a function of |k| only.
    pub fn fourier(&self, k_norm: f64) -> Result<f64> {
        let spec = QuadratureSpec::default();
        match self {
            Self::Gaussian { charge, width } => Ok(charge * (-0.5 * (width * k_norm).powi(2)).exp()),
            Self::UniformDisk { radius, .. } => hankel(|r| self.value(r), k_norm, &[0.0, *radius], &spec),
            Self::Tabulated { radii, .. } => {
                // only coarse tables get explicit breakpoints at their nodes
                let ends = [radii[0], radii[radii.len() - 1]];
                let nodes: &[f64] = if radii.len() <= 64 { radii } else { &ends };
                hankel(|r| self.value(r), k_norm, nodes, &QuadratureSpec::relaxed())
            }
        }
    }

    pub fn total_charge(&self) -> Result<f64> {
        self.fourier(0.0)
    }

    /// Coulomb norm ∫|ν̂(k)|²/|k| dk = 2π∫₀^∞ |ν̂(k)|² dk.
    ///
    /// Closed forms for the built-in kinds; tabulated profiles are
    /// integrated up to |k| = 400/r_max.
    pub fn coulomb_norm(&self) -> Result<f64> {
        match self {
            Self::Gaussian { charge, width } => Ok(PI.powf(1.5) * charge * charge / width),
            // ∫₀^∞ J₁(x)²/x² dx = 4/(3π)
            Self::UniformDisk { charge, radius } => Ok(32.0 * charge * charge / (3.0 * radius)),
            Self::Tabulated { radii, .. } => {
                let k_max = 400.0 / radii[radii.len() - 1];
                let r = try_integrate_1d(|k| Ok(self.fourier(k)?.powi(2)), 0.0, k_max, &QuadratureSpec::relaxed())?;
                Ok(2.0 * PI * r.value)
            }
        }
    }

}

/// 2π∫ f(r) J₀(kr) r dr over the piecewise-smooth support given by `nodes`.
fn hankel(f: impl Fn(f64) -> f64, k: f64, nodes: &[f64], spec: &QuadratureSpec) -> Result<f64> {
    let (a, b) = (nodes[0], nodes[nodes.len() - 1]);
    let r = try_integrate_1d_with_breaks(|r| Ok(f(r) * bessel_j0(k * r) * r), a, b, &nodes[1..nodes.len() - 1], spec)?;
    Ok(2.0 * PI * r.value)
}

/// One row of a response table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResponsePoint {
    pub k_norm: f64,
    pub b: f64,
    pub b0: f64,
    pub b1: f64,
    pub b2: f64,
}

fn ratio(k_norm: f64, params: &ModelParams) -> Result<f64> {
    if !(k_norm > 0.0 && k_norm.is_finite()) {
        return Err(Error::Domain(format!("k must be positive, got {k_norm}")));
    }
    Ok(params.cutoff() / k_norm)
}

/// Denominator 2v_F w + (v+w)g(L/(v+w)) + (w−v)g(L/(w−v)).
#[inline]
fn exchange_denominator(v: f64, w: f64, ell: f64, v_f: f64, g: &impl Fn(f64) -> Result<f64>) -> Result<f64> {
    let hi = w + v;
    let lo = w - v;
    let mut d = 2.0 * v_f * w + hi * g(ell / hi)?;
    if lo > 0.0 {
        d += lo * g(ell / lo)?;
    }
    Ok(d)
}

fn cached(big_r: f64) -> Result<f64> {
    Ok(g_cached(big_r))
}

/// (2/π)∫ du over [u_a, u_b] of the inner φ-integral, w = cosh(u)/2.
fn vw_integral(
    ell: f64,
    v_f: f64,
    u_a: f64,
    u_b: f64,
    spec: &QuadratureSpec,
    g: &impl Fn(f64) -> Result<f64>,
) -> Result<f64> {
    if u_b <= u_a {
        return Ok(0.0);
    }
    let inner = spec.inner(u_b - u_a);
    let mut breaks = vec![];
    if ell >= 1.0 {
        // w = L − 1/2: the v-range stops being the full [0, 1/2]
        let kink = (2.0 * ell - 1.0).acosh();
        if kink > u_a && kink < u_b {
            breaks.push(kink);
        }
    }
    let r = try_integrate_1d_with_breaks(
        |u| {
            let w = 0.5 * u.cosh();
            let phi_max = (2.0 * (ell - w)).clamp(0.0, 1.0).asin();
            if phi_max <= 0.0 {
                return Ok(0.0);
            }
            let r = try_integrate_1d(
                |phi| {
                    let (s, c) = phi.sin_cos();
                    let v = 0.5 * s;
                    Ok(0.25 * c * c / exchange_denominator(v, w, ell, v_f, g)?)
                },
                0.0,
                phi_max,
                &inner,
            )?;
            Ok(r.value)
        },
        u_a,
        u_b,
        &breaks,
        spec,
    )?;
    Ok(2.0 / PI * r.value)
}

/// B(k) from the (v, w) representation.
pub fn b_kernel_vw(k_norm: f64, params: &ModelParams, spec: &QuadratureSpec) -> Result<f64> {
    let ell = ratio(k_norm, params)?;
    if ell <= 0.5 {
        return Ok(0.0);
    }
    vw_integral(ell, params.v_f(), 0.0, (2.0 * ell).acosh(), spec, &cached)
}

/// [`b_kernel_vw`] with every g evaluated by direct quadrature instead of
/// the interpolation table. Slow; used to bound the table's contribution
/// to the error.
pub fn b_kernel_vw_direct(k_norm: f64, params: &ModelParams, spec: &QuadratureSpec) -> Result<f64> {
    let ell = ratio(k_norm, params)?;
    if ell <= 0.5 {
        return Ok(0.0);
    }
    let g_spec = QuadratureSpec::relaxed();
    vw_integral(ell, params.v_f(), 0.0, (2.0 * ell).acosh(), spec, &|r| g_kernel(r, &g_spec))
}

/// B(k) by direct quadrature over the lens |p ± e/2| ≤ L.
///
/// Polar coordinates b = p − e/2 = ρ(cos φ, sin φ), a = p + e/2 = b + e,
/// upper half-plane doubled. The integrand numerator 1 − a·b/(|a||b|)
/// becomes 1 − (c+ρ)/|a| with c = cos φ.
pub fn b_kernel_raw(k_norm: f64, params: &ModelParams, spec: &QuadratureSpec) -> Result<f64> {
    let ell = ratio(k_norm, params)?;
    if ell <= 0.5 {
        return Ok(0.0);
    }
    let v_f = params.v_f();
    let integrand = move |rho: f64, c: f64, s: f64| -> f64 {
        let a = (1.0 + rho * c).hypot(rho * s);
        let x = c + rho;
        let num = if x >= 0.0 {
            s * s / (a * (a + x))
        } else {
            1.0 - x / a
        };
        let den = a * (v_f + g_cached(ell / a)) + rho * (v_f + g_cached(ell / rho));
        if den == 0.0 {
            return 0.0;
        }
        num * rho / den
    };
    // ρ-range for a given direction: ρ ≤ L and |e + b| ≤ L
    let radial = move |phi: f64, inner: &QuadratureSpec| -> Result<f64> {
        let (s, c) = phi.sin_cos();
        let disc = c * c + ell * ell - 1.0;
        if disc < 0.0 {
            return Ok(0.0);
        }
        let root = disc.sqrt();
        let (lo, hi) = if ell >= 1.0 {
            (0.0, ell.min(-c + root))
        } else {
            ((-c - root).max(0.0), (-c + root).min(ell))
        };
        if hi <= lo {
            return Ok(0.0);
        }
        let mut total = 0.0;
        let near = hi.min(2.0);
        if near > lo {
            let breaks: Vec<f64> = [1.0].into_iter().filter(|&b| b > lo && b < near).collect();
            total += try_integrate_1d_with_breaks(|r| Ok(integrand(r, c, s)), lo, near, &breaks, inner)?.value;
        }
        if hi > 2.0 {
            let lo2 = lo.max(2.0);
            total += try_integrate_1d(
                |t| {
                    let r = t.exp();
                    Ok(integrand(r, c, s) * r)
                },
                lo2.ln(),
                hi.ln(),
                inner,
            )?
            .value;
        }
        Ok(total)
    };
    let inner = spec.inner(PI);
    let (phi_lo, breaks) = if ell >= 1.0 {
        (0.0, vec![(-1.0 / (2.0 * ell)).acos()])
    } else {
        (((1.0 - ell * ell).sqrt()).acos().max(FRAC_PI_2).max((-(1.0 - ell * ell).sqrt()).acos()), vec![])
    };
    let r = try_integrate_1d_with_breaks(|phi| radial(phi, &inner), phi_lo, PI, &breaks, spec)?;
    Ok(2.0 * r.value / (2.0 * PI))
}

/// B split at w = log²(Λ/|k|) into (B₁, B₂).
pub fn b_split(k_norm: f64, params: &ModelParams, spec: &QuadratureSpec) -> Result<(f64, f64)> {
    let ell = ratio(k_norm, params)?;
    let w_split = ell.ln().powi(2);
    if !(ell > 1.0 && w_split > 0.5) {
        return Err(Error::Domain(format!(
            "split point log²(Λ/|k|) = {w_split} must exceed 1/2"
        )));
    }
    let u_split = (2.0 * w_split.min(ell)).acosh();
    let u_max = (2.0 * ell).acosh();
    let b1 = vw_integral(ell, params.v_f(), 0.0, u_split, spec, &cached)?;
    let b2 = vw_integral(ell, params.v_f(), u_split, u_max, spec, &cached)?;
    Ok((b1, b2))
}

/// B⁰(k) without exchange, from the arccos closed form plus the
/// boundary-strip integral over t ∈ [2L−1, 2L].
pub fn b0_kernel(k_norm: f64, params: &ModelParams) -> Result<f64> {
    let ell = ratio(k_norm, params)?;
    if ell <= 0.5 {
        return Ok(0.0);
    }
    let pre = 1.0 / (2.0 * PI * params.v_f());
    let spec = QuadratureSpec::default();
    // x = 2L − t, the cosine of the lower θ limit
    let strip = |x: f64| {
        let a = x.acos();
        PI - 2.0 * a + (2.0 * a).sin()
    };
    let strip_integral = if ell > 1.0 {
        let head = 0.25 * PI * (1.0 / (2.0 * ell - 1.0)).acos();
        let r = try_integrate_1d(
            |x| {
                let t = 2.0 * ell - x;
                Ok(strip(x) / (4.0 * t * ((t - 1.0) * (t + 1.0)).sqrt()))
            },
            0.0,
            1.0,
            &spec,
        )?;
        head + r.value
    } else {
        // t = 1 + y² on the strip t ∈ [1, 2L] removes the 1/√(t−1) endpoint
        let m = 2.0 * ell - 1.0;
        let r = try_integrate_1d(
            |y| {
                let t = 1.0 + y * y;
                let x = m - y * y;
                Ok(strip(x) * 2.0 / (4.0 * t * (t + 1.0).sqrt()))
            },
            0.0,
            m.sqrt(),
            &spec,
        )?;
        r.value
    };
    Ok(pre * strip_integral)
}

/// First-order induced density ρ̂(k) = λ B/(1+B) ν̂(k).
pub fn linear_density(nu: &DefectDensity, lambda: f64, k_norm: f64, params: &ModelParams) -> Result<f64> {
    linear_density_with(nu, lambda, k_norm, params, &response_spec())
}

pub fn linear_density_with(
    nu: &DefectDensity,
    lambda: f64,
    k_norm: f64,
    params: &ModelParams,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let nu_hat = nu.fourier(k_norm)?;
    if lambda == 0.0 || nu_hat == 0.0 {
        return Ok(0.0);
    }
    let b = b_kernel_vw(k_norm, params, spec)?;
    Ok(lambda * b / (1.0 + b) * nu_hat)
}

/// Tolerances for B evaluations nested inside other integrals.
pub fn response_spec() -> QuadratureSpec {
    QuadratureSpec {
        abs_tol: 1e-10,
        rel_tol: 1e-7,
        max_subdivisions: 2000,
    }
}

/// Upper end of the q-integral in [`screening_charge`]; the bump transform
/// is below 1e-7 of its peak beyond it.
const SCREENING_Q_MAX: f64 = 120.0;

/// First-order polarization charge ∫ρ(x)χ(|x|/R)dx inside a smooth ball of
/// radius R, computed as (1/2π)∫₀^∞ ρ̂(q/R) χ̂(q) q dq with the default bump χ.
pub fn screening_charge(
    nu: &DefectDensity,
    lambda: f64,
    big_r: f64,
    params: &ModelParams,
    spec: &QuadratureSpec,
) -> Result<f64> {
    if !(big_r > 0.0 && big_r.is_finite()) {
        return Err(Error::Domain(format!("radius must be positive, got {big_r}")));
    }
    if lambda == 0.0 {
        return Ok(0.0);
    }
    let inner = response_spec();
    let chi_spec = QuadratureSpec::default();
    // the χ̂ oscillation has period ≈ 2π/1.5 in q
    let breaks: Vec<f64> = (1..40).map(|i| 3.0 * i as f64).collect();
    let r = try_integrate_1d_with_breaks(
        |q| {
            if q <= 0.0 {
                return Ok(0.0);
            }
            let rho = linear_density_with(nu, lambda, q / big_r, params, &inner)?;
            Ok(rho * bump_chi_hat(q, &chi_spec)? * q)
        },
        0.0,
        SCREENING_Q_MAX,
        &breaks,
        spec,
    )?;
    Ok(r.value / (2.0 * PI))
}

/// λπν_tot/(4 log(RΛ)), the large-R asymptote of [`screening_charge`].
pub fn screening_asymptote(nu: &DefectDensity, lambda: f64, big_r: f64, params: &ModelParams) -> Result<f64> {
    Ok(lambda * PI * nu.total_charge()? / (4.0 * (big_r * params.cutoff()).ln()))
}

/// All four kernels at one momentum. B₁, B₂ are NaN where the split is
/// undefined.
pub fn response_point(k_norm: f64, params: &ModelParams, spec: &QuadratureSpec) -> Result<ResponsePoint> {
    let b = b_kernel_vw(k_norm, params, spec)?;
    let b0 = b0_kernel(k_norm, params)?;
    let (b1, b2) = match b_split(k_norm, params, spec) {
        Ok(pair) => pair,
        Err(Error::Domain(_)) => (f64::NAN, f64::NAN),
        Err(e) => return Err(e),
    };
    Ok(ResponsePoint { k_norm, b, b0, b1, b2 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::{integrate_2d, Domain2d};
    use crate::special::bessel_j1;

    fn graphene() -> ModelParams {
        ModelParams::graphene()
    }

    /// B⁰ integrated directly in (w, v), with w = 1/2 + s² to tame the
    /// 1/√(w − 1/2) endpoint.
    fn b0_direct(ell: f64, v_f: f64) -> f64 {
        let spec = QuadratureSpec {
            abs_tol: 1e-12,
            rel_tol: 1e-10,
            max_subdivisions: 4000,
        };
        let limits = |s: f64| (0.0, 0.5f64.min(ell - 0.5 - s * s));
        let r = integrate_2d(
            |s, v| {
                let w = 0.5 + s * s;
                2.0 * (0.25 - v * v).sqrt() / (w * (w + 0.5).sqrt())
            },
            &Domain2d::Bounded {
                x: (0.0, (ell - 0.5).sqrt()),
                limits: &limits,
            },
            &spec,
        )
        .unwrap();
        r.value / (PI * v_f)
    }

    #[test]
    fn empty_domain() {
        let p = graphene();
        let s = QuadratureSpec::default();
        assert_eq!(b_kernel_vw(2.0, &p, &s).unwrap(), 0.0);
        assert_eq!(b_kernel_raw(2.0, &p, &s).unwrap(), 0.0);
        assert_eq!(b0_kernel(2.0, &p).unwrap(), 0.0);
        assert!(b_kernel_vw(0.0, &p, &s).is_err());
    }

    #[test]
    fn b0_matches_direct_quadrature() {
        let p = graphene();
        for &ell in &[0.7, 1.0, 1.6, 5.0, 40.0] {
            let closed = b0_kernel(1.0 / ell, &p).unwrap();
            let direct = b0_direct(ell, 2.2);
            assert!((closed - direct).abs() < 1e-6 * direct, "L = {ell}: {closed} vs {direct}");
        }
    }

    #[test]
    fn b0_small_k_limit() {
        let p = graphene();
        let lim = PI / (16.0 * 2.2);
        let b = b0_kernel(1e-6, &p).unwrap();
        assert!((b - lim).abs() < 1e-5, "{b}");
    }

    #[test]
    fn lens_integral_is_twice_the_vw_integral() {
        // The (v, w) map sends the upper half-plane onto |v| ≤ 1/2, w ≥ 1/2,
        // so the lens integral carries an extra v → −v factor of two.
        let p = graphene();
        let s = QuadratureSpec::relaxed();
        for &ell in &[0.8, 2.0, 10.0] {
            let a = b_kernel_vw(1.0 / ell, &p, &s).unwrap();
            let b = b_kernel_raw(1.0 / ell, &p, &s).unwrap();
            assert!((b - 2.0 * a).abs() < 1e-5 * a, "L = {ell}: {a} vs {b}");
        }
    }

    #[test]
    fn exchange_suppresses_response() {
        let p = graphene();
        let s = QuadratureSpec::relaxed();
        for &ell in &[0.9, 3.0, 30.0, 1e4] {
            let b = b_kernel_vw(1.0 / ell, &p, &s).unwrap();
            let b0 = b0_kernel(1.0 / ell, &p).unwrap();
            assert!(b > 0.0 && b < b0, "L = {ell}: {b} vs {b0}");
        }
    }

    #[test]
    fn scale_invariance() {
        let s = QuadratureSpec::relaxed();
        let base = b_kernel_vw(0.1, &ModelParams::new(2.2, 1.0).unwrap(), &s).unwrap();
        for &scale in &[0.37, 4.0, 91.0] {
            let p = ModelParams::new(2.2, scale).unwrap();
            let b = b_kernel_vw(0.1 * scale, &p, &s).unwrap();
            assert!((b - base).abs() < 1e-12 * base.max(1.0) + 1e-9, "{scale}");
        }
    }

    #[test]
    fn split_partitions_b() {
        let p = graphene();
        let s = QuadratureSpec::default();
        let b = b_kernel_vw(1e-3, &p, &s).unwrap();
        let (b1, b2) = b_split(1e-3, &p, &s).unwrap();
        assert!((b1 + b2 - b).abs() < 1e-6 * b);
        assert!(matches!(b_split(0.6, &p, &s), Err(Error::Domain(_))));
    }

    #[test]
    fn defect_transforms() {
        let g = DefectDensity::gaussian(2.0, 0.5).unwrap();
        assert_eq!(g.total_charge().unwrap(), 2.0);
        let disk = DefectDensity::uniform_disk(1.5, 2.0).unwrap();
        for &k in &[0.0, 0.4, 3.3] {
            let exact = if k == 0.0 {
                1.5
            } else {
                1.5 * 2.0 * bessel_j1(2.0 * k) / (2.0 * k)
            };
            assert!((disk.fourier(k).unwrap() - exact).abs() < 1e-9);
        }
        // a tabulated Gaussian reproduces the closed form
        let radii: Vec<f64> = (0..=4000).map(|i| i as f64 * 0.002).collect();
        let values: Vec<f64> = radii.iter().map(|&r| g.value(r)).collect();
        let tab = DefectDensity::tabulated(radii, values).unwrap();
        for &k in &[0.0, 1.0, 5.0] {
            assert!((tab.fourier(k).unwrap() - g.fourier(k).unwrap()).abs() < 1e-5);
        }
        let direct = 2.0
            * PI
            * crate::quadrature::integrate_1d(|k| disk.fourier(k).unwrap().powi(2), 0.0, 100.0, &QuadratureSpec::relaxed())
                .unwrap()
                .value;
        // the k > K tail is about 4q²/(a³K²) ≈ 1.1e-4
        assert!((disk.coulomb_norm().unwrap() - direct).abs() < 5e-4, "{direct}");
    }

    #[test]
    fn gaussian_coulomb_norm() {
        let g = DefectDensity::gaussian(1.0, 0.7).unwrap();
        let spec = QuadratureSpec::default();
        let direct = 2.0 * PI * crate::quadrature::integrate_1d(|k| g.fourier(k).unwrap().powi(2), 0.0, 60.0, &spec).unwrap().value;
        assert!((g.coulomb_norm().unwrap() - direct).abs() < 1e-8);
    }

    #[test]
    fn linear_density_sign_and_zero() {
        let p = graphene();
        let nu = DefectDensity::gaussian(1.0, 1.0).unwrap();
        assert_eq!(linear_density(&DefectDensity::zero(), 0.1, 0.1, &p).unwrap(), 0.0);
        let pos = linear_density(&nu, 0.1, 0.1, &p).unwrap();
        let neg = linear_density(&nu, -0.1, 0.1, &p).unwrap();
        assert!(pos > 0.0 && neg < 0.0);
        let b = b_kernel_vw(0.1, &p, &response_spec()).unwrap();
        let expect = 0.1 * b / (1.0 + b) * (-0.005f64).exp();
        assert!((pos - expect).abs() < 1e-14);
    }

    #[test]
    fn screening_zero_coupling() {
        let p = graphene();
        let nu = DefectDensity::gaussian(1.0, 1.0).unwrap();
        assert_eq!(screening_charge(&nu, 0.0, 100.0, &p, &QuadratureSpec::relaxed()).unwrap(), 0.0);
    }
}
