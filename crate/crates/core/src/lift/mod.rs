//! Rank-3 lifts of 5-row tropical matrices over fields with at least four
//! elements.
//!
//! Every construction ends in [`build_lift_from_pair`]: a 5×2 frame `A`
//! whose 2×2 minors keep their expected degrees, and a matrix whose columns
//! have large enough Θ-sets against both frame columns, yield a lift `C`
//! with `Σ a_i1 C_(i) = Σ a_i2 C_(i) = 0`, hence `rank C ≤ 3`.

mod block;
mod certificate;
mod cramer;
mod driver;
mod frame;
mod search;

pub use block::{build_lift_3zeros, build_lift_block, three_zeros_frame, BlockShape};
pub use certificate::{relation_vanishes, CertificateCheck, ColumnData, LiftCertificate, LiftMethod};
pub use cramer::{build_lift_from_pair, column_violations, frame_thetas, ColumnViolation};
pub use driver::{kapranov_upper, kapranov_upper_with};
pub use frame::{check_pair_premise, choose_xi, PairFrame, PremiseReport};
pub use search::{generic_pair_search, generic_pair_search_with, repeated_rows_lift};
