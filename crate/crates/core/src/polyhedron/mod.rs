//! Rational polyhedra and cones: dual representations, faces, normal cones and Minkowski sums.

pub mod cone;
#[allow(clippy::module_inception)]
pub mod polyhedron;

pub use cone::Cone;
pub use polyhedron::{CompactEdge, Face, Halfspace, OrientedFaceCycle, Polyhedron, PolyhedronJson};
