//! Translation-invariant Hartree-Fock energy on the radial ansatz
//! f(p) = −h(|p|) σ·ω_p / 2, |h| ≤ 1, where h ≡ 1 is the free Dirac sea.
//!
//! On a radial grid with ∫₀^Λ φ(r) r dr ≈ Σ wᵢ rᵢ φ(rᵢ) the energy is
//!
//! ```text
//! F(h) = (v_F/2π) Σ wᵢ rᵢ (−hᵢ rᵢ) − (1/16π²) hᵀ E h
//! ```
//!
//! with E the singularity-subtracted exchange matrix built on the angular
//! kernel K(r, s) = ∫₀^{2π} cos θ / |r − s e^{iθ}| dθ.

pub mod polar;

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{g_at_one, kato_constant_2d, v_eff, ModelParams};
use crate::quadrature::{gauss_legendre, try_integrate_1d, try_integrate_1d_with_breaks, QuadratureSpec};
use crate::special::bessel_j0;

/// Kinetic prefactor 1/(2π).
pub const C_KIN: f64 = 1.0 / (2.0 * PI);
/// Exchange prefactor −1/(16π²).
pub const C_EX: f64 = -1.0 / (16.0 * PI * PI);

/// Radial quadrature nodes on (0, Λ] for the measure r dr.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialGrid {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    cutoff: f64,
}

impl RadialGrid {
    /// `n`-point Gauss-Legendre rule mapped to [0, Λ]; wᵢ are the plain
    /// dr-weights so that Σ wᵢ rᵢ φ(rᵢ) ≈ ∫ φ r dr.
    pub fn gauss_legendre(n: usize, cutoff: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("radial grid needs at least one node".into()));
        }
        Self::from_panels(&[0.0, cutoff], n, cutoff)
    }

    /// Composite Gauss-Legendre on the geometric panels
    /// [0, Λ2^{−m}], …, [Λ/4, Λ/2], [Λ/2, Λ], refining towards r = 0.
    pub fn graded(per_panel: usize, panels: usize, cutoff: f64) -> Result<Self> {
        if per_panel == 0 || panels == 0 {
            return Err(Error::InvalidParameter("graded grid needs panels and nodes".into()));
        }
        let mut edges = vec![0.0];
        for k in (0..panels).rev() {
            edges.push(cutoff * 0.5f64.powi(k as i32));
        }
        Self::from_panels(&edges, per_panel, cutoff)
    }

    fn from_panels(edges: &[f64], per_panel: usize, cutoff: f64) -> Result<Self> {
        if !(cutoff > 0.0 && cutoff.is_finite()) {
            return Err(Error::InvalidParameter(format!("cutoff must be positive, got {cutoff}")));
        }
        let (x, w) = gauss_legendre(per_panel);
        let mut nodes = Vec::new();
        let mut weights = Vec::new();
        for pair in edges.windows(2) {
            let (a, b) = (pair[0], pair[1]);
            let half = 0.5 * (b - a);
            for (xi, wi) in x.iter().zip(&w) {
                nodes.push(a + half * (xi + 1.0));
                weights.push(half * wi);
            }
        }
        Ok(Self { nodes, weights, cutoff })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn cutoff(&self) -> f64 {
        self.cutoff
    }
}

/// Occupation profile h on a radial grid.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialOccupation {
    pub h: Vec<f64>,
}

impl RadialOccupation {
    pub fn constant(n: usize, value: f64) -> Self {
        Self { h: vec![value; n] }
    }

    /// Checks |hᵢ| ≤ 1 up to 1e-12.
    pub fn validate(&self) -> Result<()> {
        for (node, &value) in self.h.iter().enumerate() {
            if !(value.abs() <= 1.0 + 1e-12) {
                return Err(Error::ConstraintViolation { node, value });
            }
        }
        Ok(())
    }

    /// sup |hᵢ − 1|.
    pub fn distance_to_sea(&self) -> f64 {
        self.h.iter().map(|h| (h - 1.0).abs()).fold(0.0, f64::max)
    }
}

/// K(r, s) = ∫₀^{2π} cos θ / √(r² + s² − 2rs cos θ) dθ for r ≠ s.
///
/// Uses |r − s e^{iθ}|² = (r − s)² + 4rs sin²(θ/2); the integrand has a
/// peak of angular width |r − s|/√(rs) at θ = 0, resolved by geometric
/// breakpoints.
pub fn angular_kernel(r: f64, s: f64, spec: &QuadratureSpec) -> Result<f64> {
    if !(r > 0.0 && s > 0.0) {
        return Err(Error::Domain(format!("kernel needs positive radii, got ({r}, {s})")));
    }
    let diff = r - s;
    if diff == 0.0 {
        return Err(Error::Domain("K(r, r) diverges logarithmically".into()));
    }
    let rs = r * s;
    let width = diff.abs() / rs.sqrt();
    let mut breaks = Vec::new();
    let mut b = width;
    while b < PI {
        breaks.push(b);
        b *= 8.0;
    }
    let res = try_integrate_1d_with_breaks(
        |t| {
            let half = (0.5 * t).sin();
            let d = diff.hypot(2.0 * half * rs.sqrt());
            Ok(t.cos() / d)
        },
        0.0,
        PI,
        &breaks,
        spec,
    )?;
    Ok(2.0 * res.value)
}

/// S(r) = ∫₀^Λ s K(r, s) ds, which equals 4π r g(Λ/r).
pub fn kernel_row_integral(r: f64, cutoff: f64, spec: &QuadratureSpec) -> Result<f64> {
    let inner = spec.inner(cutoff);
    let breaks: Vec<f64> = [r].into_iter().filter(|&b| b < cutoff).collect();
    let res = try_integrate_1d_with_breaks(
        |s| {
            if s == r {
                return Ok(0.0);
            }
            Ok(s * angular_kernel(r, s, &inner)?)
        },
        0.0,
        cutoff,
        &breaks,
        spec,
    )?;
    Ok(res.value)
}

/// Discretized exchange form on a radial grid.
#[derive(Debug, Clone)]
pub struct ExchangeMatrix {
    /// K(rᵢ, rⱼ) off the diagonal, 0 on it.
    pub kernel: DMatrix<f64>,
    /// Sᵢ = ∫₀^Λ s K(rᵢ, s) ds.
    pub row_integrals: Vec<f64>,
    /// Eᵢⱼ = wᵢrᵢwⱼrⱼKᵢⱼ off the diagonal; Eᵢᵢ = wᵢrᵢ(Sᵢ − Σⱼ≠ᵢ wⱼrⱼKᵢⱼ).
    pub form: DMatrix<f64>,
}

impl ExchangeMatrix {
    pub fn build(grid: &RadialGrid, spec: &QuadratureSpec) -> Result<Self> {
        let n = grid.len();
        let r = grid.nodes();
        let w = grid.weights();
        let rows: Vec<Result<(Vec<f64>, f64)>> = (0..n)
            .into_par_iter()
            .map(|i| {
                let mut row = vec![0.0; n];
                for j in 0..n {
                    if j != i {
                        row[j] = angular_kernel(r[i], r[j], spec)?;
                    }
                }
                let s = kernel_row_integral(r[i], grid.cutoff(), spec)?;
                Ok((row, s))
            })
            .collect();
        let mut kernel = DMatrix::zeros(n, n);
        let mut row_integrals = Vec::with_capacity(n);
        for (i, row) in rows.into_iter().enumerate() {
            let (row, s) = row?;
            for (j, v) in row.into_iter().enumerate() {
                kernel[(i, j)] = v;
            }
            row_integrals.push(s);
        }
        // the quadrature of K is symmetric only to tolerance
        let kernel = (&kernel + kernel.transpose()) * 0.5;
        let mut form = DMatrix::zeros(n, n);
        for i in 0..n {
            let mut off = 0.0;
            for j in 0..n {
                if j != i {
                    form[(i, j)] = w[i] * r[i] * w[j] * r[j] * kernel[(i, j)];
                    off += w[j] * r[j] * kernel[(i, j)];
                }
            }
            form[(i, i)] = w[i] * r[i] * (row_integrals[i] - off);
        }
        Ok(Self {
            kernel,
            row_integrals,
            form,
        })
    }
}

/// Energy, gradient and minimizer for the radial ansatz.
#[derive(Debug, Clone)]
pub struct TiProblem {
    params: ModelParams,
    grid: RadialGrid,
    exchange: ExchangeMatrix,
}

/// Result of [`TiProblem::minimize`].
#[derive(Debug, Clone)]
pub struct MinimizeOutcome {
    pub occupation: RadialOccupation,
    pub energies: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
}

impl MinimizeOutcome {
    /// The outcome, or `MaxItersExceeded` if the tolerance was not met.
    pub fn into_result(self) -> Result<Self> {
        if self.converged {
            Ok(self)
        } else {
            Err(Error::MaxItersExceeded {
                iterations: self.iterations,
            })
        }
    }
}

impl TiProblem {
    pub fn new(params: ModelParams, grid: RadialGrid, spec: &QuadratureSpec) -> Result<Self> {
        if (grid.cutoff() - params.cutoff()).abs() > 1e-12 * params.cutoff() {
            return Err(Error::InvalidParameter("grid cutoff differs from the model cutoff".into()));
        }
        let exchange = ExchangeMatrix::build(&grid, spec)?;
        Ok(Self { params, grid, exchange })
    }

    /// Gauss-Legendre grid with `n` nodes and the default tolerances.
    pub fn with_nodes(params: ModelParams, n: usize) -> Result<Self> {
        let grid = RadialGrid::gauss_legendre(n, params.cutoff())?;
        Self::new(params, grid, &QuadratureSpec::default())
    }

    pub fn grid(&self) -> &RadialGrid {
        &self.grid
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn exchange(&self) -> &ExchangeMatrix {
        &self.exchange
    }

    fn check(&self, occ: &RadialOccupation) -> Result<()> {
        if occ.h.len() != self.grid.len() {
            return Err(Error::Shape(format!(
                "occupation has {} entries for a {}-node grid",
                occ.h.len(),
                self.grid.len()
            )));
        }
        occ.validate()
    }

    fn kinetic(&self, h: &[f64]) -> f64 {
        let (r, w) = (self.grid.nodes(), self.grid.weights());
        let mut s = 0.0;
        for i in 0..h.len() {
            s += w[i] * r[i] * (-h[i] * r[i]);
        }
        C_KIN * self.params.v_f() * s
    }

    fn quadratic(&self, h: &[f64]) -> f64 {
        let v = DVector::from_column_slice(h);
        v.dot(&(&self.exchange.form * &v))
    }

    pub fn energy(&self, occ: &RadialOccupation) -> Result<f64> {
        self.check(occ)?;
        Ok(self.kinetic(&occ.h) + C_EX * self.quadratic(&occ.h))
    }

    /// ∂F/∂hᵢ.
    pub fn gradient(&self, occ: &RadialOccupation) -> Result<Vec<f64>> {
        self.check(occ)?;
        let (r, w) = (self.grid.nodes(), self.grid.weights());
        let v = DVector::from_column_slice(&occ.h);
        let eh = &self.exchange.form * &v;
        Ok((0..occ.h.len())
            .map(|i| -C_KIN * self.params.v_f() * w[i] * r[i] * r[i] + 2.0 * C_EX * eh[i])
            .collect())
    }

    /// Diagonal metric c_kin wᵢ rᵢ², under which the gradient at h ≡ 1 is
    /// −v_eff(rᵢ).
    pub fn metric(&self) -> Vec<f64> {
        let (r, w) = (self.grid.nodes(), self.grid.weights());
        (0..r.len()).map(|i| C_KIN * w[i] * r[i] * r[i]).collect()
    }

    /// Projected gradient descent h ← clip(h − τ D⁻¹∇F, [−1, 1]) in the
    /// metric D of [`Self::metric`], halving τ whenever the energy would
    /// rise. Stops once sup |Δh| ≤ `tol`.
    pub fn minimize(&self, init: &RadialOccupation, step: f64, max_iters: usize, tol: f64) -> Result<MinimizeOutcome> {
        if !(step > 0.0) {
            return Err(Error::InvalidParameter(format!("step must be positive, got {step}")));
        }
        self.check(init)?;
        let metric = self.metric();
        let mut h = init.clone();
        let mut f = self.energy(&h)?;
        let mut energies = vec![f];
        let mut tau = step;
        for it in 1..=max_iters {
            let g = self.gradient(&h)?;
            let mut accepted = None;
            for _ in 0..60 {
                let trial = RadialOccupation {
                    h: h.h
                        .iter()
                        .zip(&g)
                        .zip(&metric)
                        .map(|((hi, gi), di)| (hi - tau * gi / di).clamp(-1.0, 1.0))
                        .collect(),
                };
                let ft = self.energy(&trial)?;
                if ft <= f + 1e-15 * f.abs() {
                    accepted = Some((trial, ft));
                    break;
                }
                tau *= 0.5;
            }
            let Some((trial, ft)) = accepted else {
                // no descent direction left: a constrained critical point
                return Ok(MinimizeOutcome {
                    occupation: h,
                    energies,
                    iterations: it,
                    converged: true,
                });
            };
            let change = trial.h.iter().zip(&h.h).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            h = trial;
            f = ft;
            energies.push(f);
            if change <= tol {
                return Ok(MinimizeOutcome {
                    occupation: h,
                    energies,
                    iterations: it,
                    converged: true,
                });
            }
        }
        Ok(MinimizeOutcome {
            occupation: h,
            energies,
            iterations: max_iters,
            converged: false,
        })
    }

    /// (exchange, bound): the exchange energy of the state and the Kato
    /// bound Γ(1/4)²/(4Γ(3/4)²(v_F + g(1))) · tr(|𝒟⁰| f²) on the ansatz.
    pub fn exchange_vs_kinetic(&self, occ: &RadialOccupation) -> Result<(f64, f64)> {
        self.check(occ)?;
        let exchange = -C_EX * self.quadratic(&occ.h);
        let (r, w) = (self.grid.nodes(), self.grid.weights());
        let mut trace = 0.0;
        for i in 0..r.len() {
            trace += w[i] * r[i] * r[i] * v_eff(r[i], &self.params)? * occ.h[i] * occ.h[i];
        }
        trace /= 4.0 * PI;
        let bound = 0.5 * kato_constant_2d() / (self.params.v_f() + g_at_one()) * trace;
        Ok((exchange, bound))
    }
}

/// Both sides of the 2D Kato inequality ∫|F|²/|x| ≤ C⟨F, √(−Δ)F⟩ for a
/// radial F supported (numerically) in [0, r_max] whose transform is
/// negligible beyond k_max.
pub fn kato_quadratic_check(
    profile: impl Fn(f64) -> f64 + Sync,
    r_max: f64,
    k_max: f64,
    spec: &QuadratureSpec,
) -> Result<(f64, f64)> {
    let lhs = 2.0 * PI * try_integrate_1d(|r| Ok(profile(r).powi(2)), 0.0, r_max, spec)?.value;
    let inner = spec.inner(k_max);
    let hat = |k: f64| -> Result<f64> {
        let r = try_integrate_1d(|r| Ok(profile(r) * bessel_j0(k * r) * r), 0.0, r_max, &inner)?;
        Ok(2.0 * PI * r.value)
    };
    // ⟨F, |p|F⟩ = (2π)⁻² ∫|F̂(k)|²|k| dk = (2π)⁻¹ ∫₀^∞ F̂(k)² k² dk
    let kin = try_integrate_1d(|k| Ok(hat(k)?.powi(2) * k * k), 0.0, k_max, spec)?.value / (2.0 * PI);
    Ok((lhs, kato_constant_2d() * kin))
}
