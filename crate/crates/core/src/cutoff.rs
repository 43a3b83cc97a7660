//! Smooth radial partition of unity χ² + η² = 1 with χ = 1 on [0, 1] and
//! χ = 0 on [2, ∞), built from the C^∞ step S(t) = ψ(t−1)/(ψ(t−1)+ψ(2−t)),
//! ψ(x) = e^{−1/x}, as χ = cos(πS/2), η = sin(πS/2).

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::Result;
use crate::quadrature::{try_integrate_1d, QuadratureSpec};
use crate::special::bessel_j1;

fn psi(x: f64) -> f64 {
    if x > 0.0 {
        (-1.0 / x).exp()
    } else {
        0.0
    }
}

fn dpsi(x: f64) -> f64 {
    if x > 0.0 {
        psi(x) / (x * x)
    } else {
        0.0
    }
}

/// The smooth step S and its derivative.
fn step(t: f64) -> (f64, f64) {
    if t <= 1.0 {
        return (0.0, 0.0);
    }
    if t >= 2.0 {
        return (1.0, 0.0);
    }
    let a = psi(t - 1.0);
    let b = psi(2.0 - t);
    let s = a + b;
    let da = dpsi(t - 1.0);
    let db = -dpsi(2.0 - t);
    (a / s, (da * b - a * db) / (s * s))
}

/// Which profile pair a [`CutoffPair`] uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutoffKind {
    /// The C^∞ bump described in the module docs.
    Bump,
    /// χ ≡ 1, η ≡ 0 (degenerate partition).
    Trivial,
}

/// A radial partition of unity at scale R: χ_R(x) = χ(|x|/R).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CutoffPair {
    pub kind: CutoffKind,
    pub scale: f64,
}

impl CutoffPair {
    pub fn bump(scale: f64) -> Self {
        Self {
            kind: CutoffKind::Bump,
            scale,
        }
    }

    pub fn trivial(scale: f64) -> Self {
        Self {
            kind: CutoffKind::Trivial,
            scale,
        }
    }

    pub fn with_scale(&self, scale: f64) -> Self {
        Self { scale, ..*self }
    }

    /// χ(t) for the unscaled profile.
    pub fn chi(&self, t: f64) -> f64 {
        match self.kind {
            CutoffKind::Bump if t >= 2.0 => 0.0,
            CutoffKind::Bump => (FRAC_PI_2 * step(t).0).cos(),
            CutoffKind::Trivial => 1.0,
        }
    }

    pub fn eta(&self, t: f64) -> f64 {
        match self.kind {
            CutoffKind::Bump if t >= 2.0 => 1.0,
            CutoffKind::Bump => (FRAC_PI_2 * step(t).0).sin(),
            CutoffKind::Trivial => 0.0,
        }
    }

    /// (χ'(t), η'(t)) for the unscaled profile.
    pub fn derivatives(&self, t: f64) -> (f64, f64) {
        match self.kind {
            CutoffKind::Bump => {
                let (s, ds) = step(t);
                let (sn, cs) = (FRAC_PI_2 * s).sin_cos();
                (-FRAC_PI_2 * sn * ds, FRAC_PI_2 * cs * ds)
            }
            CutoffKind::Trivial => (0.0, 0.0),
        }
    }

    pub fn chi_scaled(&self, r: f64) -> f64 {
        self.chi(r / self.scale)
    }

    pub fn eta_scaled(&self, r: f64) -> f64 {
        self.eta(r / self.scale)
    }
}

/// Radial 2D Fourier transform of a profile u with u = 1 on [0, 1] and u = 0
/// beyond 2, from its derivative on [1, 2]:
/// û(q) = 2π∫u J₀(qr) r dr = −(2π/q)∫₁² u'(s) s J₁(qs) ds.
fn hat_from_derivative(du: impl Fn(f64) -> f64, q: f64, spec: &QuadratureSpec) -> Result<f64> {
    if q == 0.0 {
        // û(0) = 2π∫u r dr = −π∫u'(s) s² ds
        let r = try_integrate_1d(|s| Ok(du(s) * s * s), 1.0, 2.0, spec)?;
        return Ok(-PI * r.value);
    }
    let r = try_integrate_1d(|s| Ok(du(s) * s * bessel_j1(q * s)), 1.0, 2.0, spec)?;
    Ok(-2.0 * PI / q * r.value)
}

/// Unscaled χ̂(q) of the bump, χ̂(q) = ∫χ(|x|)e^{−iq·x}dx.
pub fn bump_chi_hat(q: f64, spec: &QuadratureSpec) -> Result<f64> {
    let pair = CutoffPair::bump(1.0);
    hat_from_derivative(|s| pair.derivatives(s).0, q.abs(), spec)
}

/// Unscaled Fourier transform of 1 − η for the bump (compactly supported).
pub fn bump_one_minus_eta_hat(q: f64, spec: &QuadratureSpec) -> Result<f64> {
    let pair = CutoffPair::bump(1.0);
    hat_from_derivative(|s| -pair.derivatives(s).1, q.abs(), spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::integrate_1d;
    use crate::special::bessel_j0;

    #[test]
    fn partition_of_unity() {
        let p = CutoffPair::bump(1.0);
        for i in 0..=3000 {
            let t = i as f64 / 1000.0;
            let (c, e) = (p.chi(t), p.eta(t));
            assert!((c * c + e * e - 1.0).abs() < 1e-14);
        }
        assert_eq!(p.chi(0.5), 1.0);
        assert_eq!(p.chi(1.0), 1.0);
        assert_eq!(p.chi(2.0), 0.0);
        assert_eq!(p.eta(3.0), 1.0);
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let p = CutoffPair::bump(1.0);
        let h = 1e-6;
        for &t in &[1.1, 1.37, 1.5, 1.81, 1.97] {
            let (dc, de) = p.derivatives(t);
            let fc = (p.chi(t + h) - p.chi(t - h)) / (2.0 * h);
            let fe = (p.eta(t + h) - p.eta(t - h)) / (2.0 * h);
            assert!((dc - fc).abs() < 1e-7, "{t}");
            assert!((de - fe).abs() < 1e-7, "{t}");
        }
    }

    #[test]
    fn hat_matches_direct_hankel_transform() {
        let p = CutoffPair::bump(1.0);
        let spec = QuadratureSpec::default();
        for &q in &[0.0, 0.3, 2.0, 7.5, 31.0] {
            let direct = 2.0
                * PI
                * integrate_1d(|r| p.chi(r) * bessel_j0(q * r) * r, 0.0, 2.0, &spec)
                    .unwrap()
                    .value;
            let via = bump_chi_hat(q, &spec).unwrap();
            assert!((direct - via).abs() < 1e-8, "q = {q}: {direct} vs {via}");
        }
    }

    #[test]
    fn inverse_transform_at_origin_is_one() {
        // (1/2π)∫χ̂(q) q dq = χ(0) = 1
        let spec = QuadratureSpec::relaxed();
        let v = integrate_1d(|q| bump_chi_hat(q, &spec).unwrap() * q, 0.0, 150.0, &spec)
            .unwrap()
            .value;
        assert!((v / (2.0 * PI) - 1.0).abs() < 1e-4, "{}", v / (2.0 * PI));
    }
}
