use thiserror::Error;

use crate::scalar::Field;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("arity must be at least 1")]
    InvalidArity,
    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: Field, right: Field },
    #[error("axis {axis} out of range for arity {arity}")]
    AxisOutOfRange { axis: usize, arity: usize },
    #[error("expected a vector of length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix shape mismatch: {0}")]
    Shape(String),
    #[error("image monomial {monomial} lies outside the target basis")]
    Overflow { monomial: String },
    #[error("polynomial is not in the span of the basis")]
    NotInBasis,
    #[error("psi must be non-constant")]
    ConstantPsi,
    #[error("differential operator must be non-constant")]
    ConstantOperator,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("phi must be non-constant")]
    ConstantPhi,
    #[error("khavinson construction needs {0}")]
    Khavinson(String),
    #[error("no decomposition found up to slack {slack} (inconclusive)")]
    NoDecompositionFound { slack: u32 },
    #[error("slice system F(q) = Laplacian(f) is inconsistent")]
    UnsolvableSlice,
    #[error("no boundary point found after {attempts} rays")]
    NoBoundaryHit { attempts: usize },
    #[error("domain polynomial must have degree exactly 2")]
    NotQuadric,
    #[error("domain is not ellipsoidal")]
    NotEllipsoidal,
    #[error("interior point must satisfy psi < 0 (psi = {value})")]
    InteriorNotInside { value: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid polynomial data: {0}")]
    InvalidData(String),
}
