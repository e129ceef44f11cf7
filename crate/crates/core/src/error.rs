use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Usage(String),
    #[error("length mismatch: expected {expected}, got {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("grid mismatch between fields")]
    GridMismatch,
    #[error("singular potential between filaments {j} and {k} at node {index}")]
    SingularPotential { j: usize, k: usize, index: usize },
    #[error("vanishing profile at node {index}")]
    Vanishing { index: usize },
    #[error("non-finite value produced{0}")]
    NonFinite(String),
    #[error("point vortices {j} and {k} coincide")]
    Coincident { j: usize, k: usize },
    #[error("root not bracketed on [{a}, {b}]")]
    NotBracketed { a: f64, b: f64 },
    #[error("iteration did not converge: {0}")]
    NoConvergence(String),
    #[error("evaluation outside the domain: {0}")]
    Domain(String),
    #[error("configuration is not an equilibrium (residual {residual:e})")]
    NotAnEquilibrium { residual: f64 },
    #[error("inadmissible data: {0}")]
    Inadmissible(String),
    #[error("curve is degenerate: {0}")]
    DegenerateCurve(String),
    #[error("step failed: {0}")]
    StepFailure(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Usage(msg.into()))
}
