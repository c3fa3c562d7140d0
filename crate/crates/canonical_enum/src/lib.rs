//! Canonical and symmetric canonical elements of the `su(n)` lattice.
//!
//! A canonical element is a maximal lattice element (for the dominance order)
//! inside a support cone; a symmetric canonical element is maximal for the
//! order that additionally asks coefficient differences to be even.

mod oracle;
mod orbits;
mod search;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use lattice_core::LatticeError;

pub use oracle::maximality_oracle;
pub use orbits::{quotient_by_symmetry, CanonicalSet, Orbit};
pub use search::{
    canonical_set, enumerate_all_canonical, enumerate_i_canonical, enumerate_symmetric_canonical, search_bounds,
};

/// Largest rank handled; residues are tracked in a 64-bit set.
pub const MAX_N: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Plain,
    Symmetric,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::Plain => "plain",
            Mode::Symmetric => "symmetric",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("support must be non-empty")]
    EmptySupport,
    #[error("support index {i} outside 1..={max}")]
    BadSupport { i: usize, max: usize },
    #[error("n = {0} is outside the supported range 2..=64")]
    UnsupportedN(usize),
    #[error("elements of a canonical set must share n = {expected}, found {got}")]
    MixedN { expected: usize, got: usize },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

pub(crate) fn check_n(n: usize) -> Result<(), EnumError> {
    if (2..=MAX_N).contains(&n) {
        Ok(())
    } else {
        Err(EnumError::UnsupportedN(n))
    }
}
