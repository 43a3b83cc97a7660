//! Band-limited operators on a periodic box.
//!
//! The one-body space is spanned by plane waves e^{ip·x}/L with p in the
//! lattice (2π/L)ℤ² and |p| ≤ Λ, optionally tensored with a spin index.
//! Multiplication by a function u is compressed to the retained modes,
//! ⟨p|u|q⟩ = û(p − q)/L².

use std::collections::HashMap;
use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::cutoff::{bump_chi_hat, bump_one_minus_eta_hat, CutoffKind, CutoffPair};
use crate::error::{Error, Result};
use crate::model::{band_overlap, MomentumVec};
use crate::quadrature::{integrate_2d, try_integrate_1d, Domain2d, QuadratureSpec};

/// Periodic box of side L with the modes |p| ≤ Λ, in lexicographic order.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierBox {
    side: f64,
    cutoff: f64,
    spin: usize,
    modes: Vec<(i32, i32)>,
}

impl FourierBox {
    /// Box with LΛ/(2π) = `ratio`; needs ratio ≥ 4.
    pub fn new(ratio: f64, cutoff: f64, spin: usize) -> Result<Self> {
        if !(ratio >= 4.0 && ratio.is_finite()) {
            return Err(Error::InvalidParameter(format!("LΛ/2π must be at least 4, got {ratio}")));
        }
        if !(cutoff > 0.0) || !(spin == 1 || spin == 2) {
            return Err(Error::InvalidParameter("need Λ > 0 and spin 1 or 2".into()));
        }
        let side = 2.0 * PI * ratio / cutoff;
        let m = ratio.floor() as i32;
        let mut modes = Vec::new();
        for a in -m..=m {
            for b in -m..=m {
                if ((a * a + b * b) as f64) <= ratio * ratio * (1.0 + 1e-14) {
                    modes.push((a, b));
                }
            }
        }
        Ok(Self { side, cutoff, spin, modes })
    }

    /// LΛ/(2π) = 24 (about 1800 modes), Λ = 1, spinless.
    pub fn default_box() -> Self {
        Self::new(24.0, 1.0, 1).expect("valid default box")
    }

    pub fn side(&self) -> f64 {
        self.side
    }

    pub fn cutoff(&self) -> f64 {
        self.cutoff
    }

    pub fn spin(&self) -> usize {
        self.spin
    }

    pub fn mode_count(&self) -> usize {
        self.modes.len()
    }

    /// Matrix dimension, modes × spin.
    pub fn dim(&self) -> usize {
        self.modes.len() * self.spin
    }

    pub fn modes(&self) -> &[(i32, i32)] {
        &self.modes
    }

    pub fn momentum(&self, mode: usize) -> MomentumVec {
        let (a, b) = self.modes[mode];
        let k = 2.0 * PI / self.side;
        MomentumVec::new(k * a as f64, k * b as f64)
    }

    /// Density of Π_Λ per spin, #modes/L².
    pub fn projector_density(&self) -> f64 {
        self.modes.len() as f64 / (self.side * self.side)
    }

    /// Continuum limit Λ²/(4π) of [`Self::projector_density`].
    pub fn continuum_density(&self) -> f64 {
        self.cutoff * self.cutoff / (4.0 * PI)
    }
}

/// Hermitian operator on the retained modes; index = mode · spin + s.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteOperator {
    pub matrix: DMatrix<Complex64>,
}

impl DiscreteOperator {
    pub fn new(matrix: DMatrix<Complex64>, fbox: &FourierBox) -> Result<Self> {
        if matrix.nrows() != fbox.dim() || matrix.ncols() != fbox.dim() {
            return Err(Error::Shape(format!("operator must be {0}×{0}", fbox.dim())));
        }
        let op = Self { matrix };
        let dev = op.hermiticity_defect();
        if dev > 1e-12 * op.max_entry().max(1.0) {
            return Err(Error::Shape(format!("operator is not Hermitian (defect {dev:e})")));
        }
        Ok(op)
    }

    pub fn zero(fbox: &FourierBox) -> Self {
        Self {
            matrix: DMatrix::zeros(fbox.dim(), fbox.dim()),
        }
    }

    /// Π_Λ, the identity on the retained modes.
    pub fn projector(fbox: &FourierBox) -> Self {
        Self {
            matrix: DMatrix::identity(fbox.dim(), fbox.dim()),
        }
    }

    /// Diagonal operator 1(|p| ≤ μ).
    pub fn fermi_sea(fbox: &FourierBox, mu: f64) -> Self {
        let mut m = DMatrix::zeros(fbox.dim(), fbox.dim());
        for mode in 0..fbox.mode_count() {
            if fbox.momentum(mode).norm() <= mu {
                for s in 0..fbox.spin() {
                    let i = mode * fbox.spin() + s;
                    m[(i, i)] = Complex64::new(1.0, 0.0);
                }
            }
        }
        Self { matrix: m }
    }

    /// Q = U D U† with U a product of `reflections` random Householder
    /// reflections and D uniform in [lo, hi]. Returns Q and ‖Q‖ = max|D|.
    pub fn random(fbox: &FourierBox, rng: &mut ChaCha8Rng, lo: f64, hi: f64, reflections: usize) -> (Self, f64) {
        let n = fbox.dim();
        let d: Vec<f64> = (0..n).map(|_| rng.random_range(lo..hi)).collect();
        let norm = d.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let mut m = DMatrix::from_diagonal(&DVector::from_iterator(n, d.iter().map(|&v| Complex64::new(v, 0.0))));
        for _ in 0..reflections {
            let v = DVector::from_iterator(
                n,
                (0..n).map(|_| Complex64::new(rng.sample::<f64, _>(StandardNormal), rng.sample::<f64, _>(StandardNormal))),
            );
            let vv = v.norm_squared();
            // H M H with H = I − 2vv†/|v|², as rank-one updates; v†M = (Mv)†
            let mv = &m * &v;
            let vmv = v.dotc(&mv);
            let c = 2.0 / vv;
            let cc = Complex64::new(c * c, 0.0) * vmv;
            for j in 0..n {
                let vj = v[j].conj();
                let wj = mv[j].conj();
                for i in 0..n {
                    m[(i, j)] += -c * (mv[i] * vj + v[i] * wj) + cc * v[i] * vj;
                }
            }
        }
        // restore exact Hermiticity lost to rounding
        let m = (&m + m.adjoint()) * Complex64::new(0.5, 0.0);
        (Self { matrix: m }, norm)
    }

    pub fn hermiticity_defect(&self) -> f64 {
        (&self.matrix - self.matrix.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    fn max_entry(&self) -> f64 {
        self.matrix.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    fn is_diagonal(&self) -> bool {
        let n = self.matrix.nrows();
        (0..n).all(|i| (0..n).all(|j| i == j || self.matrix[(i, j)] == Complex64::new(0.0, 0.0)))
    }

    /// Eigenvalues (ascending).
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = if self.is_diagonal() {
            self.matrix.diagonal().iter().map(|z| z.re).collect()
        } else {
            self.matrix.clone().symmetric_eigenvalues().iter().copied().collect()
        };
        ev.sort_by(f64::total_cmp);
        ev
    }
}

/// ρ_Q(x) = (1/L²) Σ_{p,q} tr_spin Q(p, q) e^{i(p−q)·x} (real and imaginary
/// part).
pub fn density_complex(q: &DiscreteOperator, fbox: &FourierBox, x: MomentumVec) -> Complex64 {
    let spin = fbox.spin();
    let n = fbox.dim();
    let mut total = Complex64::new(0.0, 0.0);
    for s in 0..spin {
        let mut u = DVector::zeros(n);
        for m in 0..fbox.mode_count() {
            let p = fbox.momentum(m);
            u[m * spin + s] = Complex64::from_polar(1.0, -(p.x * x.x + p.y * x.y));
        }
        total += u.dotc(&(&q.matrix * &u));
    }
    total / (fbox.side() * fbox.side())
}

pub fn density_of(q: &DiscreteOperator, fbox: &FourierBox, x: MomentumVec) -> f64 {
    density_complex(q, fbox, x).re
}

/// ξ(x) = A e^{−|x|²/(2s²)} e^{ik₀·x}, with ξ̂(k) = 2πs²A e^{−s²|k−k₀|²/2}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianWave {
    pub amplitude: f64,
    pub width: f64,
    pub k0: MomentumVec,
}

impl GaussianWave {
    pub fn fourier(&self, k: MomentumVec) -> f64 {
        let d = k - self.k0;
        2.0 * PI * self.width * self.width * self.amplitude * (-0.5 * self.width * self.width * d.dot(&d)).exp()
    }
}

/// Ratio of ‖P₊|p|^{−1/4} ξ P₋|p|^{−1/4}‖²_HS on the box to
/// (2π)⁻²∫|ξ̂(k)|²|k| dk. The p = 0 mode is left out.
pub fn hs_offdiag_ratio(xi: &GaussianWave, fbox: &FourierBox) -> Result<f64> {
    if xi.amplitude == 0.0 {
        return Ok(0.0);
    }
    let l2 = fbox.side() * fbox.side();
    let moms: Vec<MomentumVec> = (0..fbox.mode_count())
        .map(|m| fbox.momentum(m))
        .filter(|p| p.norm() > 0.0)
        .collect();
    let rows: Vec<Result<f64>> = moms
        .par_iter()
        .map(|&p| {
            let np = p.norm().sqrt();
            let mut s = 0.0;
            for &q in &moms {
                let f = xi.fourier(p - q);
                s += f * f / l2 / l2 * band_overlap(p, q)? / (np * q.norm().sqrt());
            }
            Ok(s)
        })
        .collect();
    let mut lhs = 0.0;
    for r in rows {
        lhs += r?;
    }
    let k0 = xi.k0.norm();
    let reach = k0 + 14.0 / xi.width;
    let rhs = integrate_2d(
        |k, phi| {
            let f = xi.fourier(MomentumVec::from_polar(k, phi + xi.k0.y.atan2(xi.k0.x)));
            2.0 * f * f * k * k
        },
        &Domain2d::Rectangle {
            x: (0.0, reach),
            y: (0.0, PI),
        },
        &QuadratureSpec::relaxed(),
    )?
    .value
        / (4.0 * PI * PI);
    Ok(lhs / rhs)
}

/// Gradient norms of a cutoff pair at scale R.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GradientNorms {
    /// ‖∇χ_R‖²_{L²}.
    pub chi_l2: f64,
    /// ‖∇χ_R‖²_{L⁴} = (∫|∇χ_R|⁴)^{1/2}.
    pub chi_l4_sq: f64,
    pub eta_l2: f64,
    pub eta_l4_sq: f64,
}

pub fn gradient_norms(pair: &CutoffPair, big_r: f64) -> Result<GradientNorms> {
    if !(big_r > 0.0) {
        return Err(Error::Domain(format!("scale must be positive, got {big_r}")));
    }
    let spec = QuadratureSpec {
        abs_tol: 0.0,
        rel_tol: 1e-12,
        max_subdivisions: 2000,
    };
    // |∇u_R|(r) = |u'(r/R)|/R, supported on R ≤ r ≤ 2R
    let moment = |which: usize, power: i32| -> Result<f64> {
        let r = try_integrate_1d(
            |r| {
                let d = pair.derivatives(r / big_r);
                let g = if which == 0 { d.0 } else { d.1 } / big_r;
                Ok(g.abs().powi(power) * r)
            },
            big_r,
            2.0 * big_r,
            &spec,
        );
        match r {
            Ok(v) => Ok(2.0 * PI * v.value),
            // an identically zero integrand never meets a pure relative tolerance
            Err(Error::NonConvergence { value: 0.0, .. }) => Ok(0.0),
            Err(e) => Err(e),
        }
    };
    Ok(GradientNorms {
        chi_l2: moment(0, 2)?,
        chi_l4_sq: moment(0, 4)?.sqrt(),
        eta_l2: moment(1, 2)?,
        eta_l4_sq: moment(1, 4)?.sqrt(),
    })
}

/// (‖∇χ_R‖²_{L²}, ‖∇χ_R‖²_{L⁴}).
pub fn partition_norms(pair: &CutoffPair, big_r: f64) -> Result<(f64, f64)> {
    let n = gradient_norms(pair, big_r)?;
    Ok((n.chi_l2, n.chi_l4_sq))
}

/// Compressed multiplication operators (X, Y) for χ_R and η_R as real
/// symmetric matrices over modes.
fn localization_matrices(pair: &CutoffPair, big_r: f64, fbox: &FourierBox) -> Result<(DMatrix<f64>, DMatrix<f64>)> {
    let n = fbox.mode_count();
    let modes = fbox.modes();
    if pair.kind == CutoffKind::Trivial {
        return Ok((DMatrix::identity(n, n), DMatrix::zeros(n, n)));
    }
    if 4.0 * big_r > fbox.side() {
        return Err(Error::Domain(format!(
            "cutoff diameter 4R = {} exceeds the box side {}",
            4.0 * big_r,
            fbox.side()
        )));
    }
    // transforms depend on |p − q|² only, an integer in lattice units
    let mut keys: Vec<i64> = Vec::new();
    for &(a, b) in modes {
        for &(c, d) in modes {
            let (da, db) = ((a - c) as i64, (b - d) as i64);
            keys.push(da * da + db * db);
        }
    }
    keys.sort_unstable();
    keys.dedup();
    let unit = 2.0 * PI / fbox.side();
    let spec = QuadratureSpec::default();
    let scale = big_r * big_r / (fbox.side() * fbox.side());
    let values: Vec<Result<(f64, f64)>> = keys
        .par_iter()
        .map(|&k2| {
            let q = big_r * unit * (k2 as f64).sqrt();
            Ok((scale * bump_chi_hat(q, &spec)?, scale * bump_one_minus_eta_hat(q, &spec)?))
        })
        .collect();
    let mut table = HashMap::with_capacity(keys.len());
    for (k, v) in keys.into_iter().zip(values) {
        table.insert(k, v?);
    }
    let mut x = DMatrix::zeros(n, n);
    let mut y = DMatrix::identity(n, n);
    for (i, &(a, b)) in modes.iter().enumerate() {
        for (j, &(c, d)) in modes.iter().enumerate() {
            let (da, db) = ((a - c) as i64, (b - d) as i64);
            let (cx, ce) = table[&(da * da + db * db)];
            x[(i, j)] = cx;
            y[(i, j)] -= ce;
        }
    }
    Ok((x, y))
}

/// tr(|p| M γ M) for a real symmetric mode-space M acting blockwise on spin.
fn localized_kinetic(m: &DMatrix<f64>, gamma: &DiscreteOperator, fbox: &FourierBox, abs_p: &[f64]) -> f64 {
    let spin = fbox.spin();
    let n = fbox.mode_count();
    if gamma.is_diagonal() {
        let g: Vec<f64> = gamma.matrix.diagonal().iter().map(|z| z.re).collect();
        let rows: Vec<f64> = (0..n)
            .into_par_iter()
            .map(|i| {
                let mut s = 0.0;
                for j in 0..n {
                    let mij = m[(i, j)];
                    if mij != 0.0 {
                        let mut occ = 0.0;
                        for sp in 0..spin {
                            occ += g[j * spin + sp];
                        }
                        s += mij * mij * occ;
                    }
                }
                abs_p[i] * s
            })
            .collect();
        return rows.iter().sum();
    }
    // general γ: expand M to spin and form the diagonal of MγM
    let big = m.kronecker(&DMatrix::<f64>::identity(spin, spin)).map(|v| Complex64::new(v, 0.0));
    let mg = &big * &gamma.matrix;
    let mut total = 0.0;
    for i in 0..fbox.dim() {
        let mut d = Complex64::new(0.0, 0.0);
        for k in 0..fbox.dim() {
            d += mg[(i, k)] * big[(k, i)];
        }
        total += abs_p[i / spin] * d.re;
    }
    total
}

/// (defect, bound_shape) of the IMS localization of tr|p|γ by the pair
/// (χ_R, η_R): defect = tr|p|γ − tr|p|χγχ − tr|p|ηγη and bound_shape is
/// the d = 2 error term without its universal constant.
pub fn ims_defect(gamma: &DiscreteOperator, pair: &CutoffPair, big_r: f64, fbox: &FourierBox) -> Result<(f64, f64)> {
    if gamma.matrix.nrows() != fbox.dim() {
        return Err(Error::Shape(format!("γ must be {0}×{0}", fbox.dim())));
    }
    let ev = gamma.eigenvalues();
    if ev.first().is_some_and(|&e| e < -1e-10) || ev.last().is_some_and(|&e| e > 1.0 + 1e-10) {
        return Err(Error::Shape("γ must satisfy 0 ≤ γ ≤ 1".into()));
    }
    let abs_p: Vec<f64> = (0..fbox.mode_count()).map(|m| fbox.momentum(m).norm()).collect();
    let spin = fbox.spin();
    let mut kinetic = 0.0;
    for i in 0..fbox.dim() {
        kinetic += abs_p[i / spin] * gamma.matrix[(i, i)].re;
    }
    let (x, y) = localization_matrices(pair, big_r, fbox)?;
    let inside = localized_kinetic(&x, gamma, fbox, &abs_p);
    let outside = localized_kinetic(&y, gamma, fbox, &abs_p);
    let defect = kinetic - inside - outside;
    let norms = gradient_norms(pair, big_r)?;
    let bound = kinetic.sqrt() * (norms.chi_l2 + norms.eta_l2).sqrt() * (norms.chi_l4_sq + norms.eta_l4_sq).sqrt();
    Ok((defect, bound))
}

/// Sup over `points` seeded sample points of |ρ_Q| for `count` seeded
/// random operators, each compared with ‖Q‖ρ_Π. Returns the largest ratio.
pub fn density_bound_ratio(fbox: &FourierBox, count: usize, points: usize, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rho_pi = fbox.spin() as f64 * fbox.projector_density();
    let mut worst = 0.0f64;
    for _ in 0..count {
        let (q, norm) = DiscreteOperator::random(fbox, &mut rng, -1.0, 1.0, 4);
        for _ in 0..points {
            let x = MomentumVec::new(rng.random_range(0.0..fbox.side()), rng.random_range(0.0..fbox.side()));
            worst = worst.max(density_of(&q, fbox, x).abs() / (norm * rho_pi));
        }
    }
    worst
}
