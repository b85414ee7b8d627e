use alloc::string::String;

/// Errors raised by the numerical core.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("series did not converge within {terms} terms (|z| = {modulus})")]
    NonConvergence { terms: usize, modulus: f64 },
    #[error("quadrature failed to converge: {0}")]
    QuadratureFailure(String),
    #[error("argument outside the decay sector: |arg z| = {arg}")]
    SectorViolation { arg: f64 },
    #[error("fractional order {0} violates 0<alpha<1")]
    OrderOutOfRange(f64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("singular point: {0}")]
    SingularPoint(String),
    #[error("grid too coarse: {0}")]
    GridTooCoarse(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("instantaneous matrix is singular")]
    SingularMatrix,
    #[error("solution exceeded the overflow guard at step {step}")]
    Instability { step: usize },
    #[error("fixed-point iteration stalled after {iterations} iterations (last contraction ratio {ratio})")]
    NoConvergence { iterations: usize, ratio: f64 },
    #[error("incompatible data: {0}")]
    IncompatibleData(String),
}

pub type Result<T> = core::result::Result<T, Error>;
