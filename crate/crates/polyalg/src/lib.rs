//! Exact linear algebra over `Q(i)(z)`.
//!
//! Vectors and matrices have polynomial entries; ranks, kernels and span
//! membership are taken over the field of rational functions. Ranks and
//! membership use fraction-free elimination; kernels are minimal polynomial
//! bases.

mod echelon;
mod matrix;
mod minimal;
mod modular;
mod poly;
mod random;
mod scalar;
mod vector;

use std::sync::OnceLock;

pub use echelon::{in_span, rank_ff, scalar_rank, EchelonBasis};
pub use matrix::PolyMatrix;
pub use minimal::{generic_rank, kernel_ff};
pub use poly::Poly;
pub use random::{random_poly_vector, random_poly_vector_with};
pub use scalar::ExactScalar;
pub use vector::{ddz, PolyVector};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("polynomial degree {degree} exceeds cap {cap}")]
    DegreeCap { degree: usize, cap: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("cannot parse `{0}`")]
    Parse(String),
    #[error("division by zero")]
    DivisionByZero,
}

/// Maximum intermediate degree, from `UNITON_DEGREE_CAP` (default 512).
pub fn degree_cap() -> usize {
    static CAP: OnceLock<usize> = OnceLock::new();
    *CAP.get_or_init(|| std::env::var("UNITON_DEGREE_CAP").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(512))
}
