//! Verification kernels for jet-space gauge constructions: exact arithmetic,
//! so(N) algebra, Proca forms, electroweak mixing, octonions and g₂, weak-field
//! dynamics and the phenomenological number tables.

pub mod dynamics;
pub mod electroweak;
pub mod error;
pub mod exactnum;
pub mod jetspace;
pub mod liealg;
pub mod octonion;
pub mod pheno;
pub mod proca;
pub mod report;
pub mod suites;

pub use error::{Error, Result};
pub use exactnum::{ExactMatrix, FloatMatrix, QuadScalar, Rational};
pub use report::{Check, Report, Status};
