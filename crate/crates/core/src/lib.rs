//! Exact tropical rank computations, Kapranov-rank-3 lifts of 5-row tropical
//! matrices over fields with at least four elements, and first-order
//! lower-bound certificates over small finite fields.

pub mod cli;
pub mod corpus;
pub mod error;
pub mod golden;
pub mod hahn;
pub mod io;
pub mod lift;
pub mod obstruct;
pub mod par;
pub mod scalars;
pub mod tropical;

pub use error::{Error, Result};
