use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("matrix is not square")]
    NotSquare,
    #[error("invalid index: {0}")]
    InvalidIndex(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix is not antisymmetric")]
    NotAntisymmetric,
    #[error("matrix is not orthogonal (deviation {0:e})")]
    NotOrthogonal(f64),
    #[error("(cos, sin) pair is not a unit vector")]
    NonUnitRotation,
    #[error("point is too close to the grid boundary")]
    Boundary,
    #[error("non-finite state at step {step}")]
    NonFinite { step: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
