//! Degree-reverse-lexicographic initial ideals of generic homogeneous
//! ideals, the incremental matrix construction of `in(I, g)` from `in(I)`,
//! and checkers for the Fröberg, Moreno-Socías and Pardue predicates on
//! randomized instances over a prime field.

pub mod algebra;
pub mod conjectures;
pub mod error;
pub mod generic;
pub mod series;
pub mod structure;

pub use error::{Error, Result};
