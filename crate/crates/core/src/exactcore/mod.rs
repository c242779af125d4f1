//! Exact arithmetic: rationals, matrices, integer normal forms, lattices and lattice points.

pub mod dd;
pub mod enumerate;
pub mod hnf;
pub mod lattice;
pub mod matrix;
pub mod rat;

pub use dd::{double_description, ConeGenerators};
pub use enumerate::enumerate_lattice_points;
pub use hnf::{hermite_normal_form, int_kernel, smith_invariants, IMat};
pub use lattice::{preimage_lattice, IntLattice};
pub use matrix::QMat;
pub use rat::{int, qvec, rat, QVec, Rat};
