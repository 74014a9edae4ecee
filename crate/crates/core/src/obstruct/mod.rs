//! First-order obstructions to low Kapranov rank over finite fields.
//!
//! A lift of rank at most `r` has every `(r+1)`-minor equal to zero, so the
//! lowest-order coefficient of each minor's determinant vanishes under the
//! lift's leading coefficients. When no assignment of units makes all of
//! them vanish, no such lift exists. Row and column scaling by field units
//! keeps the degree matrix and the rank, which lets a spanning tree of
//! positions be fixed to 1 before the search.

mod engine;
mod minors;
mod search;

pub use minors::{first_order_coeff, singular_minors, singular_minors_with_cap, Assignment, MinorInfo};
pub use engine::MAX_TABLE_FIELD;
pub use search::{
    certify_lower_bound, certify_lower_bound_with, default_budget, CertifyOptions, Gauge, ObstructionReport, Verdict,
    BUDGET_ENV, DEFAULT_BUDGET,
};
