use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("eigenvalue iteration failed: {0}")]
    ConvergenceFailure(String),
    #[error("structure constants violate the Jacobi identity ({0} failing triples)")]
    JacobiViolation(usize),
    #[error("invalid label: {0}")]
    InvalidLabel(String),
    #[error("no scalar closes the algebra: {0}")]
    NoClosure(String),
    #[error("representation synthesis failed: {0}")]
    SynthesisFailure(String),
    #[error("velocity {0} is not below the speed of light")]
    SuperluminalVelocity(f64),
    #[error("invalid four-velocity: {0}")]
    InvalidVelocity(String),
    #[error("matrix is not a rotation: {0}")]
    NotARotation(String),
    #[error("plane-wave solutions have different eigenvalues: {0}")]
    MixedEigenvalues(String),
    #[error("conjugated generator leaves the algebra span (residual {0:.3e})")]
    DecompositionResidual(f64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
