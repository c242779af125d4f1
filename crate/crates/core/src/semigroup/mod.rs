//! Affine semigroups, pairs `T ⊆ S`, and extensions of pairs.

pub mod affine;
pub mod diagram;
pub mod pair;
pub mod quotient;
pub mod samples;

pub use affine::{AffineSemigroup, SemigroupJson};
pub use diagram::{CocartesianReport, Condition, DiagramJson, ExtensionDiagram};
pub use pair::{Collision, Freeness, FreenessWitness, PairJson, SemigroupPair};
pub use quotient::QuotientGroup;

/// Default degree cap for bounded searches.
pub const DEFAULT_BOUND: u32 = 6;
