//! Finite-support generalized power series with rational exponents, their
//! fractions, and exact linear algebra over them.

mod frac;
mod matrix;
mod poly;

pub use frac::GenFrac;
pub use matrix::{mono, verify_lift, LiftCheck, SeriesMatrix};
pub use poly::GenPoly;
