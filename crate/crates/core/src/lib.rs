//! Hartree-Fock theory of graphene.
//!
//! Massless 2D Dirac fermions with an ultraviolet cutoff Λ and Coulomb
//! interactions, treated in mean-field theory: the exchange-enhanced Fermi
//! velocity, the translation-invariant ground state, the linear dielectric
//! response of the Dirac sea, and numerical checks of the operator
//! inequalities that control the model.

pub mod checks;
pub mod cutoff;
pub mod error;
pub mod ground_state;
pub mod model;
pub mod operator_lab;
pub mod quadrature;
pub mod response;
pub mod special;

pub use error::{Error, Result};
pub use model::{ModelParams, MomentumVec, SpinorMatrix};
pub use quadrature::{QuadratureResult, QuadratureSpec};
