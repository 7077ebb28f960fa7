use crate::algebra::AlgebraError;

/// Errors raised by the numerical modules.
#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum LabError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("matrix has non-finite entries")]
    NonFinite,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("{0}")]
    Empty(String),
    #[error("symbol {0} is not bound in this representation")]
    Unbound(&'static str),
    #[error("delta {delta} exceeds the spectral gap {gap} at lambda = {lambda}")]
    GapExceeded { lambda: f64, delta: f64, gap: f64 },
    #[error("{value} is not in the computed spectrum")]
    NotInSpectrum { value: f64 },
    #[error("cutoff {cutoff} is smaller than the alpha-degree {degree}")]
    CutoffTooSmall { cutoff: usize, degree: usize },
    #[error("iterative method did not converge: {0}")]
    NoConvergence(String),
}
