//! Grassmannian models `W` of extended solutions: a finite list of
//! `lambda`-Laurent generators over `Q(i)(z)` plus the implicit tail `lambda^k H_+`.
//!
//! Segal's equations, the `SU(n)` condition and the involution condition are
//! checked exactly on the window `[-s, k-1]`. Floating point only appears when
//! the harmonic map `phi = Phi_{-1}` is evaluated at a point.

pub mod fixtures;
mod frenet;
mod laurent;
mod model;
mod phi;
mod verify;

use thiserror::Error;

pub use frenet::{
    adapted_frame, assemble_frenet_frame, cell_model, frenet_generate, AdaptedFrame, FrameVector, FrenetFrame, Origin,
};
pub use laurent::{LaurentVector, Term};
pub use model::{graded_type, s1_invariant_model, u_xi, GradedDims, GradedModel, WindowSpace};
pub use phi::{evaluate_phi, extract_loop, matches_target, plus_eigenspace_dim, PhiOptions, PhiReport, UnitaryLoop};
pub use verify::{verify, Check, VerificationReport, VerifyOptions, Witness};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExtsolError {
    #[error(transparent)]
    Poly(#[from] polyalg::PolyError),
    #[error(transparent)]
    Bundle(#[from] bundles::BundleError),
    #[error(transparent)]
    Lattice(#[from] lattice_core::LatticeError),
    #[error("malformed model: {0}")]
    Malformed(String),
    #[error("member {index} of the flag has rank {got}, expected {expected}")]
    RankMismatch { index: i64, expected: usize, got: usize },
    #[error("flag is not super-horizontal")]
    NotSuperhorizontal,
    #[error("expected {expected} entries, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("frame drops rank at z = {z} ({got} < {expected}); choose another point")]
    RankDrop { z: String, expected: usize, got: usize },
    #[error("{what} residual {residual:.3e} exceeds tolerance {tol:.1e}")]
    Tolerance { what: String, residual: f64, tol: f64 },
}
