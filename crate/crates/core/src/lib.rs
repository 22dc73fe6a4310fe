//! Dempster–Shafer belief functions on small finite frames, with the
//! isopignistic decomposition of a mass function into a possibility
//! distribution and a commitment map.

pub mod ben;
pub mod classic;
pub mod error;
pub mod fusion;
pub mod iso;
pub mod json;
pub mod lattice;
pub mod mass;
pub mod measures;
pub mod random;
pub mod sweep;
pub mod transforms;

pub use error::{BeliefError, Result};
pub use lattice::{Frame, Subset};
pub use mass::MassFunction;
