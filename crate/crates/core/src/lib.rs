//! Exact computations with rational polyhedra, affine semigroup pairs and their universal
//! co-Cartesian extensions.

pub mod cli;
pub mod error;
pub mod etaspace;
pub mod exactcore;
pub mod extension;
pub mod minkowski;
pub mod polyhedron;
pub mod semigroup;

pub use error::{Error, Result};
