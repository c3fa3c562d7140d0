//! Holomorphic subbundles of the trivial bundle over the sphere, given by
//! polynomial frames, and the construction of super-horizontal flags.

mod bundle;
mod construct;
mod flag;

use thiserror::Error;

pub use bundle::{annihilator, osculate_down, osculate_up, osculation_stats, MeromorphicBundle, OsculationStats};
pub use construct::{
    build_canonical_flag, build_canonical_flag_with, build_subflag, interpolate_flag, FlagOptions, Interpolation,
    MAX_RETRIES,
};
pub use flag::{is_superhorizontal, HoloFlag};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BundleError {
    #[error(transparent)]
    Poly(#[from] polyalg::PolyError),
    #[error(transparent)]
    Lattice(#[from] lattice_core::LatticeError),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("random choices degenerate at {step} after {attempts} attempts")]
    RetryExhausted { step: String, attempts: usize },
}
