//! Model constants, spinor algebra, the exchange kernel g, the effective
//! velocity and dispersion, and the direct-term response kernel M(p, q).

mod exchange_kernel;
mod spinor;

pub use exchange_kernel::{g_cached, g_derivative, g_kernel, g_table, table_spec, GTable};
pub use spinor::{band_overlap, free_sea_symbol, pauli_dot, projector, Band, MomentumVec, SpinorMatrix};

use crate::error::{Error, Result};
use crate::special::{catalan, gamma};

/// Bare Fermi velocity and ultraviolet cutoff, in atomic units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    v_f: f64,
    cutoff: f64,
}

/// Fermi velocity of graphene in atomic units.
pub const GRAPHENE_VF: f64 = 2.2;

impl ModelParams {
    pub fn new(v_f: f64, cutoff: f64) -> Result<Self> {
        if !(v_f.is_finite() && v_f > 0.0) {
            return Err(Error::InvalidParameter(format!("v_F must be positive, got {v_f}")));
        }
        if !(cutoff.is_finite() && cutoff > 0.0) {
            return Err(Error::InvalidParameter(format!("cutoff must be positive, got {cutoff}")));
        }
        Ok(Self { v_f, cutoff })
    }

    /// v_F = 2.2 with the cutoff as the unit of momentum.
    pub fn graphene() -> Self {
        Self {
            v_f: GRAPHENE_VF,
            cutoff: 1.0,
        }
    }

    pub fn v_f(&self) -> f64 {
        self.v_f
    }

    pub fn cutoff(&self) -> f64 {
        self.cutoff
    }
}

/// g(1) = (2G − 1)/(2π), G Catalan's constant.
pub fn g_at_one() -> f64 {
    (2.0 * catalan() - 1.0) / (2.0 * std::f64::consts::PI)
}

/// Sharp constant of the 2D Kato inequality, Γ(1/4)²/(2Γ(3/4)²).
pub fn kato_constant_2d() -> f64 {
    0.5 * (gamma(0.25) / gamma(0.75)).powi(2)
}

/// Smallest bare velocity for which the free Dirac sea is the
/// translation-invariant ground state: Γ(1/4)²/(4Γ(3/4)²) − g(1).
pub fn vf_threshold() -> f64 {
    0.5 * kato_constant_2d() - g_at_one()
}

fn check_momentum(p_norm: f64, params: &ModelParams) -> Result<()> {
    if !(p_norm >= 0.0) {
        return Err(Error::Domain(format!("momentum norm must be non-negative, got {p_norm}")));
    }
    if p_norm > params.cutoff * (1.0 + 1e-12) {
        return Err(Error::OutOfCutoff {
            p: p_norm,
            cutoff: params.cutoff,
        });
    }
    Ok(())
}

/// Exchange-enhanced velocity v_F + g(Λ/|p|).
pub fn v_eff(p_norm: f64, params: &ModelParams) -> Result<f64> {
    check_momentum(p_norm, params)?;
    if p_norm == 0.0 {
        return Err(Error::DegenerateMomentum);
    }
    Ok(params.v_f + g_cached(params.cutoff / p_norm))
}

/// Quasi-particle energy E(p) = |p| v_eff(p), with E(0) = 0.
pub fn dispersion(p_norm: f64, params: &ModelParams) -> Result<f64> {
    check_momentum(p_norm, params)?;
    if p_norm == 0.0 {
        return Ok(0.0);
    }
    Ok(p_norm * v_eff(p_norm, params)?)
}

/// M(p, q) = (σ·ω_p σ·ω_q − I)/(E(p) + E(q)).
pub fn m_kernel(p: MomentumVec, q: MomentumVec, params: &ModelParams) -> Result<SpinorMatrix> {
    let (np, nq) = (p.norm(), q.norm());
    if np == 0.0 || nq == 0.0 {
        return Err(Error::DegenerateMomentum);
    }
    let denom = dispersion(np, params)? + dispersion(nq, params)?;
    let prod = pauli_dot(p.unit()?) * pauli_dot(q.unit()?);
    Ok((prod - SpinorMatrix::identity()).scale(1.0 / denom))
}
