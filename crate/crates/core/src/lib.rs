//! Finite monomial models of the Hardy, Bergman and Dirichlet spaces over
//! the unit polydisc, and numerical verification of wandering subspaces for
//! doubly commuting tuples of coordinate shifts.

pub mod cli;
pub mod error;
pub mod linalg;
pub mod operators;
pub mod spaces;
pub mod subspaces;
pub mod suites;
pub mod tolerance;

pub use error::{Error, Result};
