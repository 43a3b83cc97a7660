use std::ops::{Add, Mul, Sub};

use nalgebra::Matrix2;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// A 2D momentum (or position) vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentumVec {
    pub x: f64,
    pub y: f64,
}

impl MomentumVec {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn from_polar(r: f64, theta: f64) -> Self {
        Self::new(r * theta.cos(), r * theta.sin())
    }

    pub fn norm(&self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// The direction ω_p = p/|p|.
    pub fn unit(&self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 {
            return Err(Error::DegenerateMomentum);
        }
        Ok(Self::new(self.x / n, self.y / n))
    }

    pub fn rotated(&self, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Self::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self::new(s * self.x, s * self.y)
    }
}

impl Add for MomentumVec {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for MomentumVec {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y)
    }
}

/// A 2×2 complex matrix acting on the sublattice (pseudo-spin) index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinorMatrix(pub Matrix2<Complex64>);

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

impl SpinorMatrix {
    pub fn identity() -> Self {
        Self(Matrix2::identity())
    }

    pub fn zero() -> Self {
        Self(Matrix2::zeros())
    }

    pub fn sigma1() -> Self {
        Self(Matrix2::new(ZERO, ONE, ONE, ZERO))
    }

    pub fn sigma2() -> Self {
        Self(Matrix2::new(ZERO, -I, I, ZERO))
    }

    pub fn sigma3() -> Self {
        Self(Matrix2::new(ONE, ZERO, ZERO, -ONE))
    }

    pub fn scale(&self, s: f64) -> Self {
        Self(self.0 * Complex64::new(s, 0.0))
    }

    pub fn trace(&self) -> Complex64 {
        self.0.trace()
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.0[(i, j)]
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (self.0 - other.0).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.max_abs_diff(&self.adjoint()) <= tol
    }
}

impl Add for SpinorMatrix {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self(self.0 + o.0)
    }
}

impl Sub for SpinorMatrix {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self(self.0 - o.0)
    }
}

impl Mul for SpinorMatrix {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self(self.0 * o.0)
    }
}

/// σ·v = v₁σ¹ + v₂σ².
pub fn pauli_dot(v: MomentumVec) -> SpinorMatrix {
    let off = Complex64::new(v.x, -v.y);
    SpinorMatrix(Matrix2::new(ZERO, off, off.conj(), ZERO))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Band {
    /// Positive-energy projector (I + σ·ω_p)/2.
    Plus,
    /// Negative-energy (Dirac sea) projector (I − σ·ω_p)/2.
    Minus,
}

/// Spectral projector of σ·p onto the given band.
pub fn projector(p: MomentumVec, band: Band) -> Result<SpinorMatrix> {
    let s = pauli_dot(p.unit()?);
    let half = SpinorMatrix::identity().scale(0.5);
    Ok(match band {
        Band::Plus => half + s.scale(0.5),
        Band::Minus => half - s.scale(0.5),
    })
}

/// The renormalized free Dirac sea symbol P₋(p) − I/2 = −σ·ω_p/2.
pub fn free_sea_symbol(p: MomentumVec) -> Result<SpinorMatrix> {
    Ok(pauli_dot(p.unit()?).scale(-0.5))
}

/// Tr[P₊(p)P₋(q)] in closed form, (1 − ω_p·ω_q)/2.
pub fn band_overlap(p: MomentumVec, q: MomentumVec) -> Result<f64> {
    Ok(0.5 * (1.0 - p.unit()?.dot(&q.unit()?)))
}
