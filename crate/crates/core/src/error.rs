use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("quadrature did not converge after {subdivisions} subdivisions (value {value:e}, error estimate {error_estimate:e})")]
    NonConvergence {
        value: f64,
        error_estimate: f64,
        subdivisions: usize,
    },

    #[error("integrand returned a non-finite value at x = {0:e}")]
    NonFinite(f64),

    #[error("momentum {p:e} lies outside the cutoff ball of radius {cutoff:e}")]
    OutOfCutoff { p: f64, cutoff: f64 },

    #[error("quantity is undefined at zero momentum")]
    DegenerateMomentum,

    #[error("occupation violates |h| <= 1 at node {node} (h = {value})")]
    ConstraintViolation { node: usize, value: f64 },

    #[error("argument outside the domain of definition: {0}")]
    Domain(String),

    #[error("operator is not a valid density matrix: {0}")]
    Shape(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("projected gradient reached {iterations} iterations without meeting the tolerance")]
    MaxItersExceeded { iterations: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
