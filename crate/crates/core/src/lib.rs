//! Homological and geometric invariants of modules over bound quiver
//! algebras, over the rationals.

pub mod error;
pub mod fixtures;
pub mod matrix;
pub mod quiver;
pub mod rep;

pub use error::{Error, Result};
pub mod algebra;
pub mod homology;
pub mod shod;
pub mod variety;
pub mod cli;

pub use algebra::{Algebra, ModuleKind};
