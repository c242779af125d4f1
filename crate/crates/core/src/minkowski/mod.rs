//! Minkowski summands: `P_ξ`, summand and tautological cones, Cayley cones, the Kodaira–Spencer
//! vector and lattice friendly decompositions.

pub mod cones;
pub mod friendly;
pub mod linearity;
pub mod summand;

pub use cones::{cayley_cone, cayley_diagram, check_fiber_product, same_cone, summand_cone, TautologicalCone};
pub use friendly::{
    correspondence, enumerate_lattice_friendly, is_lattice_friendly, kodaira_spencer, kodaira_spencer_of, lattice_friendly_set,
    DecompositionJson, DecompositionReport, EnumeratedDecomposition, KSVector, LatticeFriendlyCatalog,
};
pub use linearity::ConeMap;
pub use summand::{psi, psi_matrix, psi_summand, summand_from_t, SummandJson, SummandResult, Xi};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::etaspace::EtaSpace;
use crate::exactcore::rat::primitive_int;
use crate::polyhedron::Polyhedron;

/// `dim T(P) - 1`, the dimension of the space of infinitesimal deformations.
pub fn t1_dimension(space: &EtaSpace) -> usize {
    space.tspace().dim().saturating_sub(1)
}

/// Whether every compact edge `[v, w]` spans a cone `ℝ_{≥0}(v,1) + ℝ_{≥0}(w,1)` that is
/// unimodular, i.e. its primitive generators extend to a lattice basis.
pub fn smooth_in_codim_two(p: &Polyhedron) -> bool {
    p.compact_edges().iter().all(|e| {
        let lift = |v: &[crate::exactcore::rat::Rat]| {
            let mut x = v.to_vec();
            x.push(crate::exactcore::rat::Rat::one());
            primitive_int(&x)
        };
        let (a, b) = (lift(p.vertex(e.i)), lift(p.vertex(e.j)));
        let mut g = BigInt::zero();
        for i in 0..a.len() {
            for j in i + 1..a.len() {
                g = g.gcd(&(&a[i] * &b[j] - &a[j] * &b[i]));
            }
        }
        g.is_one()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::rat::{qvec, rat};

    #[test]
    fn pinkham_t1_and_smoothness() {
        let p = Polyhedron::polytope(1, &[vec![rat(-1, 2)], vec![rat(1, 2)]]).unwrap();
        assert_eq!(t1_dimension(&EtaSpace::new(&p).unwrap()), 2);
        assert!(!smooth_in_codim_two(&p));
        let unit = Polyhedron::polytope(1, &[qvec(&[0]), qvec(&[1])]).unwrap();
        assert!(smooth_in_codim_two(&unit));
    }
}
