//! Exact-arithmetic machinery for obstructing untwisting number one.
//!
//! The pipeline: parse an alternating knot diagram, form its negative
//! definite Goeritz matrix, compute the correction-term table of the
//! branched double cover, and search for a positive, even matching against
//! the candidate intersection form forced by a single generalized crossing
//! change. Separate helpers bound the p-untwisting numbers from the tau and
//! s concordance invariants.
//!
//! Everything is integer or rational arithmetic of arbitrary precision;
//! no operation produces a floating-point value.

pub mod bounds;
pub mod correction;
pub mod diagram;
pub mod error;
pub mod form;
pub mod group;
pub mod jsonio;
pub mod matrix;
pub mod obstruct;
pub mod record;
pub mod snf;

pub use error::{Error, Result};
