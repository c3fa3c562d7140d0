//! Integer lattice of `su(n)` in the basis of fundamental coweights `H_1..H_{n-1}`.
//!
//! An element `xi = sum n_i H_i` is stored by its integer coefficient vector.
//! Expanding in the diagonal basis `E_1..E_n` gives rational coordinates that
//! are integral exactly when `xi` lies in the lattice of the simply connected group.

mod element;
mod expansion;
mod flag;
mod order;

pub use element::{LatticeElement, ParseLatticeError};
pub use expansion::{h_to_e, in_lattice, loop_exponents, min_multiple, EExpansion, LoopExponents};
pub use flag::{eigenspace_dims, flag_type, grassmannian_target, su_balance, EigenDims, FlagType, Target};
pub use order::{chi1, chi2, leq, leq_root_oracle, symmetric_leq, symmetric_leq_with, TwoTorsion};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("rank parameter n must be at least 2, got {0}")]
    BadRank(usize),
    #[error("expected {expected} coefficients for n = {n}, got {got}")]
    BadLength { n: usize, expected: usize, got: usize },
    #[error("index {i} out of range 1..={max}")]
    IndexOutOfRange { i: usize, max: usize },
    #[error("mismatched rank parameters {0} and {1}")]
    MismatchedN(usize, usize),
    #[error("element {0} is not dominant")]
    NotDominant(String),
    #[error("element {0} is not in the integer lattice")]
    NotInLattice(String),
    #[error("chi2 is only defined for odd n, got n = {0}")]
    EvenN(usize),
    #[error("the zero element has no flag")]
    ZeroElement,
    #[error("invalid flag type: {0}")]
    BadFlagType(String),
}
