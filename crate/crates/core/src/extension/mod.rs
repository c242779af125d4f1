//! The universal co-Cartesian extension `(T̃, S̃)` and the morphisms out of it.

pub mod kodaira;
pub mod morphism;
pub mod relations;
pub mod upper;

pub use kodaira::kodaira_dual_map;
pub use morphism::{
    initial_morphism, recover_parameters, BoundarySection, CheckStatus, MorphismData, RecoveredParameters, RelationCheck,
};
pub use relations::{multisets, DependencySet, RelationOracle};
pub use upper::{verify_upper_pair, ExtensionReport, RelationWitness, UpperPair, UpperPairReport};

/// Default total degree up to which minimal dependents are recorded.
pub const DEFAULT_CAP: u32 = 4;
/// Default total degree up to which the dependency set is certified complete.
pub const DEFAULT_VERIFY_DEGREE: u32 = 6;
