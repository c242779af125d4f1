//! The support data `η`, edge lattice data, the parameter space `T(P)` with its lattice, and the
//! liftings `η̃`, `η̃_ℤ` into its dual.

pub mod eta;
pub mod functional;
pub mod space;
pub mod tspace;

pub use eta::{edge_data, EdgeData, EtaOracle};
pub use functional::Functional;
pub use space::EtaSpace;
pub use tspace::{build_tlattice, build_tspace, PerpKind, TLattice, TSpace};
