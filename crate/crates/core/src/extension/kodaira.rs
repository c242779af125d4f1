//! The dual of the Kodaira–Spencer map on the generators of `T̃`.

use num_traits::ToPrimitive;

use super::upper::UpperPair;
use crate::error::{Error, Result};
use crate::exactcore::rat::{add, dot, QVec, Rat};

/// The matrix `(⟨g, ξᵢ⟩)` with one row per summand `ξᵢ` and one column per generator `g` of
/// `T̃`.
///
/// The `ξᵢ` are raw `(t, s)` vectors in `T₊(P)` adding up to `[P]`. A non-integral entry means
/// that the decomposition is not lattice friendly.
pub fn kodaira_dual_map(upper: &UpperPair, xis: &[QVec]) -> Result<Vec<Vec<i64>>> {
    let space = upper.oracle().space();
    let ts = space.tspace();
    let mut total = vec![Rat::from_integer(0.into()); ts.ambient()];
    let mut coords = Vec::with_capacity(xis.len());
    for xi in xis {
        if !ts.contains_positive(xi) {
            return Err(Error::NotInTP);
        }
        total = add(&total, xi);
        coords.push(space.tlattice().lattice.coordinates(xi).ok_or(Error::NotInTP)?);
    }
    if total != ts.oneone {
        return Err(Error::Invariant("summands do not add up to [P]".into()));
    }
    coords
        .iter()
        .enumerate()
        .map(|(row, y)| {
            upper
                .t_generators()
                .iter()
                .enumerate()
                .map(|(col, g)| {
                    let v = dot(g.coords(), y);
                    if !v.is_integer() {
                        return Err(Error::NonIntegralEntry { row, col });
                    }
                    v.to_integer().to_i64().ok_or(Error::Overflow)
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::etaspace::Functional;
    use crate::exactcore::rat::{int, qvec, rat};
    use crate::extension::RelationOracle;
    use crate::polyhedron::Polyhedron;

    fn pinkham() -> UpperPair {
        let p = Polyhedron::polytope(1, &[vec![rat(-1, 2)], vec![rat(1, 2)]]).unwrap();
        UpperPair::build(RelationOracle::new(&p).unwrap(), 4, 6).unwrap()
    }

    /// Column order `(s₁, s₂, A, B)`.
    fn reorder(u: &UpperPair, m: &[Vec<i64>]) -> Vec<Vec<i64>> {
        let sp = u.oracle().space();
        let h = rat(1, 2);
        let order: Vec<Functional> = vec![
            sp.functional(vec![int(0), int(1), int(0)]),
            sp.functional(vec![int(0), int(0), int(1)]),
            sp.functional(vec![int(1), h.clone(), -h.clone()]),
            sp.functional(vec![int(1), -h.clone(), h]),
        ];
        let cols: Vec<usize> = order.iter().map(|f| u.t_generators().iter().position(|g| g == f).unwrap()).collect();
        m.iter().map(|row| cols.iter().map(|&c| row[c]).collect()).collect()
    }

    #[test]
    fn pinkham_matrices() {
        let u = pinkham();
        let artin = kodaira_dual_map(&u, &[vec![rat(1, 2), int(1), int(0)], vec![rat(1, 2), int(0), int(1)]]).unwrap();
        assert_eq!(reorder(&u, &artin), vec![vec![1, 0, 1, 0], vec![0, 1, 0, 1]]);
        let qg = kodaira_dual_map(&u, &[qvec(&[0, 1, 1]), qvec(&[1, 0, 0])]).unwrap();
        assert_eq!(reorder(&u, &qg), vec![vec![1, 1, 0, 0], vec![0, 0, 1, 1]]);
        let trivial = kodaira_dual_map(&u, &[qvec(&[1, 1, 1])]).unwrap();
        assert_eq!(trivial, vec![vec![1, 1, 1, 1]]);
    }

    #[test]
    fn non_lattice_summand_gives_non_integral_entry() {
        let u = pinkham();
        let r = kodaira_dual_map(&u, &[vec![rat(1, 2), rat(1, 2), rat(1, 2)], vec![rat(1, 2), rat(1, 2), rat(1, 2)]]);
        assert!(matches!(r, Err(Error::NonIntegralEntry { .. })));
        assert_eq!(kodaira_dual_map(&u, &[qvec(&[1, 1, 0])]), Err(Error::Invariant("summands do not add up to [P]".into())));
    }
}
