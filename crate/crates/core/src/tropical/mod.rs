//! Min-plus matrix computations: permanent, singularity, rank, Θ-sets,
//! scaling and tropical dependence witnesses.

pub(crate) mod dbm;
mod matrix;
mod perm;
mod witness;

pub use matrix::TropMatrix;
pub(crate) use matrix::{IntGrid, ScaledGrid, Weight};
pub use perm::{
    combinations, has_nonsingular_minor, is_trop_singular, parity, perm_table, trop_perm, trop_perm_with_cap,
    trop_rank, trop_rank_with_cap, PermOutcome, PermTable, DEFAULT_PERM_CAP, MAX_PERM_CAP,
};
pub use witness::{
    find_witness, find_witness_pattern, find_witness_with, pattern_of, theta, witness_feasible, ExtVector, TiePattern,
    Witness,
};
pub(crate) use witness::{extend, local_pairs};

use crate::scalars::Rational;

/// Tropical sum `min(a, b)`.
pub fn trop_add(a: &Rational, b: &Rational) -> Rational {
    a.min(b).clone()
}

/// Tropical product `a + b`.
pub fn trop_mul(a: &Rational, b: &Rational) -> Rational {
    a + b
}
