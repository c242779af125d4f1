use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("region is unbounded")]
    UnboundedRegion,
    #[error("linear form is unbounded below on the polyhedron")]
    UnboundedDirection,
    #[error("polyhedron has no vertex")]
    NoVertex,
    #[error("polyhedron is empty")]
    Empty,
    #[error("tail cones differ")]
    TailMismatch,
    #[error("the given set is not a face")]
    NotAFace,
    #[error("cone is not pointed")]
    NotPointed,
    #[error("integrality constraints do not cut out a lattice")]
    NotDiscrete,
    #[error("pair is not free: {0}")]
    NotFreePair(String),
    #[error("element is not in the semigroup")]
    NotAMember,
    #[error("diagram is not co-Cartesian: {0}")]
    NotCocartesian(String),
    #[error("dependency set incomplete: minimal dependent {0:?} lies beyond the cap")]
    IncompleteDependencySet(Vec<u32>),
    #[error("target is not co-Cartesian: {0}")]
    TargetNotCocartesian(String),
    #[error("relation images disagree for multisets {m:?} and {m2:?}")]
    WellDefinednessFailure { m: Vec<u32>, m2: Vec<u32> },
    #[error("no suitable direction for vertex {0}")]
    NoSuitableC(usize),
    #[error("non-integral entry at ({row}, {col})")]
    NonIntegralEntry { row: usize, col: usize },
    #[error("vector does not lie in T(P)")]
    NotInTP,
    #[error("not a Minkowski summand: {0}")]
    NotASummand(String),
    #[error("summands do not add up to the polyhedron")]
    SumMismatch,
    #[error("projection is not surjective onto the target cone")]
    NotSurjective,
    #[error("integer overflow")]
    Overflow,
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
