//! Brute-force check of the radial ansatz against general 2×2 Hermitian
//! fields f(p) = a₀(p) I + a(p)·σ on a coarse polar grid of the cutoff disk.
//!
//! The constraint −I/2 ≤ f ≤ I/2 reads |a₀| + |a| ≤ 1/2 and zero charge
//! reads ∫a₀ = 0. The energy is
//!
//! ```text
//! F(f) = (v_F/4π²) ∫ Tr(σ·p f) dp − (1/16π³) ∬ Tr(f(p) f(q)) / |p − q| dp dq
//! ```
//!
//! discretized by Nyström with the exact cell integral of 1/|p − q| on the
//! diagonal. F restricted to f = −hσ·ω/2 coincides with the radial energy.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::ModelParams;
use crate::quadrature::{gauss_legendre, integrate_2d, Domain2d, QuadratureSpec};

/// Per-node field components (a₀, a₁, a₂, a₃).
pub type Field = Vec<[f64; 4]>;

/// Polar product grid: Gauss-Legendre in r, uniform in θ.
#[derive(Debug, Clone)]
pub struct PolarGrid {
    n_r: usize,
    n_theta: usize,
    /// (x, y) of each node, radial index major.
    points: Vec<(f64, f64)>,
    weights: Vec<f64>,
    /// ∫_cell dq / |pₙ − q| for each radial index.
    self_cell: Vec<f64>,
}

impl PolarGrid {
    pub fn new(n_r: usize, n_theta: usize, cutoff: f64) -> Result<Self> {
        if n_r == 0 || n_theta == 0 || n_r * n_theta > 256 {
            return Err(Error::InvalidParameter(format!(
                "polar grid {n_r}×{n_theta} must be non-empty and at most 16×16"
            )));
        }
        let (x, w) = gauss_legendre(n_r);
        let half = 0.5 * cutoff;
        let radii: Vec<f64> = x.iter().map(|xi| half * (xi + 1.0)).collect();
        let dr: Vec<f64> = w.iter().map(|wi| half * wi).collect();
        let dtheta = 2.0 * PI / n_theta as f64;
        // Cells: radial edges from the cumulative weights, angular cells
        // centred on the nodes.
        let mut edges = vec![0.0];
        for wi in &dr {
            edges.push(edges[edges.len() - 1] + wi);
        }
        let spec = QuadratureSpec::relaxed();
        let self_cell: Vec<f64> = (0..n_r)
            .into_par_iter()
            .map(|i| cell_integral(radii[i], edges[i], edges[i + 1], dtheta, &spec))
            .collect::<Result<_>>()?;
        let mut points = Vec::with_capacity(n_r * n_theta);
        let mut weights = Vec::with_capacity(n_r * n_theta);
        for i in 0..n_r {
            for j in 0..n_theta {
                let t = j as f64 * dtheta;
                points.push((radii[i] * t.cos(), radii[i] * t.sin()));
                weights.push(dr[i] * radii[i] * dtheta);
            }
        }
        Ok(Self {
            n_r,
            n_theta,
            points,
            weights,
            self_cell,
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The free Dirac sea f⁰ = −σ·ω/2.
    pub fn free_sea(&self) -> Field {
        self.points
            .iter()
            .map(|&(x, y)| {
                let n = x.hypot(y);
                [0.0, -0.5 * x / n, -0.5 * y / n, 0.0]
            })
            .collect()
    }

    /// Checks the operator bound and charge neutrality.
    pub fn validate(&self, f: &Field) -> Result<()> {
        if f.len() != self.len() {
            return Err(Error::Shape(format!("field has {} nodes, grid has {}", f.len(), self.len())));
        }
        let mut charge = 0.0;
        for (node, a) in f.iter().enumerate() {
            let norm = a[0].abs() + (a[1] * a[1] + a[2] * a[2] + a[3] * a[3]).sqrt();
            if norm > 0.5 + 1e-12 {
                return Err(Error::ConstraintViolation { node, value: 2.0 * norm });
            }
            charge += self.weights[node] * a[0];
        }
        if charge.abs() > 1e-10 {
            return Err(Error::Shape(format!("field carries charge {charge:e}")));
        }
        Ok(())
    }

    pub fn energy(&self, f: &Field, params: &ModelParams) -> Result<f64> {
        self.validate(f)?;
        let n = self.len();
        let mut kinetic = 0.0;
        for k in 0..n {
            let (x, y) = self.points[k];
            // Tr(σ·p f) = 2 a·p
            kinetic += self.weights[k] * 2.0 * (f[k][1] * x + f[k][2] * y);
        }
        let tr = |a: &[f64; 4], b: &[f64; 4]| 2.0 * (a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3]);
        let rows: Vec<f64> = (0..n)
            .into_par_iter()
            .map(|k| {
                let (xk, yk) = self.points[k];
                let mut s = self.self_cell[k / self.n_theta] * tr(&f[k], &f[k]);
                for m in 0..n {
                    if m != k {
                        let (xm, ym) = self.points[m];
                        s += self.weights[m] * tr(&f[k], &f[m]) / (xk - xm).hypot(yk - ym);
                    }
                }
                self.weights[k] * s
            })
            .collect();
        let exchange: f64 = rows.iter().sum();
        Ok(params.v_f() / (4.0 * PI * PI) * kinetic - exchange / (16.0 * PI * PI * PI))
    }

    /// A random admissible field of one of three families: fully random,
    /// a perturbation of f⁰, or a random radial profile with a rotated
    /// pseudo-spin direction.
    pub fn random_field(&self, rng: &mut ChaCha8Rng) -> Field {
        let n = self.len();
        let family = rng.random_range(0..3u8);
        let mut a0: Vec<f64> = (0..n).map(|_| rng.random_range(-0.25..0.25)).collect();
        if family == 1 {
            let scale: f64 = rng.random_range(0.0..0.1);
            a0.iter_mut().for_each(|v| *v *= scale);
        }
        let total: f64 = self.weights.iter().sum();
        let mean = a0.iter().zip(&self.weights).map(|(a, w)| a * w).sum::<f64>() / total;
        a0.iter_mut().for_each(|v| *v -= mean);
        let twist: f64 = rng.random_range(-PI..PI);
        let profile: Vec<f64> = (0..self.n_r).map(|_| rng.random_range(-1.0..1.0)).collect();
        let eps: f64 = rng.random_range(0.0..0.2);
        (0..n)
            .map(|k| {
                let room = 0.5 - a0[k].abs();
                let (x, y) = self.points[k];
                let t = y.atan2(x);
                let v: [f64; 3] = match family {
                    0 => {
                        let z: f64 = rng.random_range(-1.0..1.0);
                        let phi: f64 = rng.random_range(0.0..2.0 * PI);
                        let s = (1.0 - z * z).sqrt();
                        let len = room * rng.random::<f64>();
                        [len * s * phi.cos(), len * s * phi.sin(), len * z]
                    }
                    1 => {
                        let d = [
                            -t.cos() + eps * rng.random_range(-1.0..1.0),
                            -t.sin() + eps * rng.random_range(-1.0..1.0),
                            eps * rng.random_range(-1.0..1.0),
                        ];
                        let len = (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt();
                        let shrink = room * (1.0 - eps * rng.random::<f64>());
                        [d[0] / len * shrink, d[1] / len * shrink, d[2] / len * shrink]
                    }
                    _ => {
                        let h = profile[k / self.n_theta] * room;
                        let u = t + twist;
                        [-h * u.cos(), -h * u.sin(), 0.0]
                    }
                };
                [a0[k], v[0], v[1], v[2]]
            })
            .collect()
    }
}

/// ∫ over the annular cell [r_lo, r_hi] × [−Δθ/2, Δθ/2] of 1/|p − q| with p
/// at radius `r` and angle 0, split at p so the singularity sits on corners.
fn cell_integral(r: f64, r_lo: f64, r_hi: f64, dtheta: f64, spec: &QuadratureSpec) -> Result<f64> {
    let f = |s: f64, t: f64| {
        let half = (0.5 * t).sin();
        let d = (r - s).hypot(2.0 * half * (r * s).sqrt());
        if d == 0.0 {
            0.0
        } else {
            s / d
        }
    };
    let mut total = 0.0;
    for (a, b) in [(r_lo, r), (r, r_hi)] {
        let v = integrate_2d(
            f,
            &Domain2d::Rectangle {
                x: (a, b),
                y: (0.0, 0.5 * dtheta),
            },
            spec,
        )?;
        total += 2.0 * v.value;
    }
    Ok(total)
}

/// Outcome of [`brute_force_check`].
#[derive(Debug, Clone, PartialEq)]
pub struct BruteForceReport {
    pub free_sea_energy: f64,
    pub best_energy: f64,
    pub samples: usize,
    pub violations: usize,
}

/// Samples `samples` seeded random fields and counts those whose energy is
/// below that of f⁰ by more than 1e-12 (relative).
pub fn brute_force_check(grid: &PolarGrid, params: &ModelParams, samples: usize, seed: u64) -> Result<BruteForceReport> {
    let f0 = grid.energy(&grid.free_sea(), params)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = f64::INFINITY;
    let mut violations = 0;
    for _ in 0..samples {
        let f = grid.random_field(&mut rng);
        let e = grid.energy(&f, params)?;
        best = best.min(e);
        if e < f0 - 1e-12 * f0.abs() {
            violations += 1;
        }
    }
    Ok(BruteForceReport {
        free_sea_energy: f0,
        best_energy: best,
        samples,
        violations,
    })
}
