//! Lattices inside rational vector spaces.

use num_bigint::BigInt;
use num_traits::Zero;

use super::hnf::{hermite_normal_form, hnf_rank, int_kernel, IMat};
use super::matrix::{orthogonal_complement, row_space_basis, QMat};
use super::rat::{clear_denominators, common_denominator, dot, is_integral_vec, QVec, Rat};
use crate::error::{Error, Result};

/// A discrete subgroup of `ℚⁿ`, stored through a canonical basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntLattice {
    ambient_dim: usize,
    basis: Vec<QVec>,
}

fn to_imat(rows: &[QVec], scale: &BigInt) -> IMat {
    let s = Rat::from_integer(scale.clone());
    rows.iter().map(|r| r.iter().map(|x| (x * &s).to_integer()).collect()).collect()
}

impl IntLattice {
    /// The standard lattice `ℤⁿ`.
    pub fn standard(n: usize) -> Self {
        let basis = (0..n).map(|i| super::rat::unit(n, i)).collect();
        IntLattice { ambient_dim: n, basis }
    }

    /// The group generated by `gens`, with a Hermite-reduced basis.
    pub fn from_generators(ambient_dim: usize, gens: &[QVec]) -> Self {
        let all: Vec<Rat> = gens.iter().flatten().cloned().collect();
        let d = common_denominator(&all);
        let (h, _) = hermite_normal_form(&to_imat(gens, &d), ambient_dim);
        let r = hnf_rank(&h);
        let dr = Rat::from_integer(d);
        let basis = h.into_iter().take(r).map(|row| row.into_iter().map(|x| Rat::from_integer(x) / &dr).collect()).collect();
        IntLattice { ambient_dim, basis }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[QVec] {
        &self.basis
    }

    /// Coordinates of `x` in the basis, if `x` lies in the rational span.
    pub fn coordinates(&self, x: &[Rat]) -> Option<QVec> {
        if self.basis.is_empty() {
            return x.iter().all(Zero::is_zero).then(Vec::new);
        }
        QMat::from_rows(self.ambient_dim, self.basis.clone()).solve_left(x)
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.coordinates(x).is_some_and(|c| is_integral_vec(&c))
    }

    /// The point with the given integer coordinates.
    pub fn point(&self, coords: &[Rat]) -> QVec {
        let mut out = vec![Rat::zero(); self.ambient_dim];
        for (c, b) in coords.iter().zip(&self.basis) {
            for (o, bi) in out.iter_mut().zip(b) {
                *o += c * bi;
            }
        }
        out
    }

    /// Whether `other` is a sublattice of `self`.
    pub fn contains_lattice(&self, other: &IntLattice) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }
}

/// `{x ∈ span(V) : C·x ∈ ℤᵏ}` for the rows of `C` and a spanning set `V`.
///
/// Fails with [`Error::NotDiscrete`] if some nonzero direction of `span(V)` is annihilated by `C`.
pub fn preimage_lattice(ambient_dim: usize, c: &[QVec], v: &[QVec]) -> Result<IntLattice> {
    let vb = row_space_basis(ambient_dim, v);
    let p = vb.len();
    if p == 0 {
        return Ok(IntLattice { ambient_dim, basis: vec![] });
    }
    // M[i][j] = ⟨C_i, V_j⟩, so C·(Σ λ_j V_j) = M·λ.
    let m = QMat::from_rows(p, c.iter().map(|ci| vb.iter().map(|vj| dot(ci, vj)).collect()).collect());
    if m.rank() < p {
        return Err(Error::NotDiscrete);
    }
    // Integer points of the column space of M: integer kernel of its annihilator.
    let k = c.len();
    let cols = m.transpose();
    let annihilator = orthogonal_complement(k, cols.rows());
    let ann: Vec<Vec<BigInt>> = annihilator.iter().map(|r| clear_denominators(r)).collect();
    let image_points: Vec<QVec> = if ann.is_empty() {
        (0..k).map(|i| super::rat::unit(k, i)).collect()
    } else {
        int_kernel(&ann, k).into_iter().map(|r| r.into_iter().map(Rat::from_integer).collect()).collect()
    };
    let mut gens = Vec::with_capacity(image_points.len());
    for y in &image_points {
        let lambda = m.solve(y).ok_or_else(|| Error::Invariant("image point outside column space".into()))?;
        let mut x = vec![Rat::zero(); ambient_dim];
        for (l, vj) in lambda.iter().zip(&vb) {
            for (o, b) in x.iter_mut().zip(vj) {
                *o += l * b;
            }
        }
        gens.push(x);
    }
    let lat = IntLattice::from_generators(ambient_dim, &gens);
    debug_assert_eq!(lat.rank(), p);
    Ok(lat)
}

/// Index of the sublattice `sub` in `sup` (both of full rank in the same span).
pub fn lattice_index(sup: &IntLattice, sub: &IntLattice) -> Option<BigInt> {
    let coords: Option<Vec<QVec>> = sub.basis().iter().map(|b| sup.coordinates(b)).collect();
    let coords = coords?;
    if coords.len() != sup.rank() {
        return None;
    }
    let m: IMat = coords
        .iter()
        .map(|r| r.iter().map(|x| x.is_integer().then(|| x.to_integer())).collect::<Option<Vec<_>>>())
        .collect::<Option<_>>()?;
    let d = super::hnf::det(&m);
    Some(if d < BigInt::zero() { -d } else { d })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::rat::{int, qvec, rat, unit};

    #[test]
    fn identity_constraints_give_standard_lattice() {
        let c: Vec<QVec> = (0..3).map(|i| unit(3, i)).collect();
        let l = preimage_lattice(3, &c, &c).unwrap();
        assert_eq!(l, IntLattice::standard(3));
    }

    #[test]
    fn restricted_to_subspace() {
        let c: Vec<QVec> = (0..2).map(|i| unit(2, i)).collect();
        let v = vec![qvec(&[2, 2])];
        let l = preimage_lattice(2, &c, &v).unwrap();
        assert_eq!(l.basis(), &[qvec(&[1, 1])]);
    }

    #[test]
    fn single_rational_row_is_not_discrete() {
        let c = vec![vec![rat(7, 12), rat(-1, 3), rat(-1, 4)]];
        let v: Vec<QVec> = (0..3).map(|i| unit(3, i)).collect();
        assert_eq!(preimage_lattice(3, &c, &v), Err(Error::NotDiscrete));
    }

    #[test]
    fn rational_row_with_integral_coordinates() {
        let c = vec![vec![rat(7, 12), rat(-1, 3), rat(-1, 4)], unit(3, 1), unit(3, 2)];
        let v: Vec<QVec> = (0..3).map(|i| unit(3, i)).collect();
        let l = preimage_lattice(3, &c, &v).unwrap();
        assert!(l.contains(&[rat(1, 7), int(1), int(-1)]));
        assert!(!l.contains(&[rat(1, 2), int(1), int(-1)]));
    }

    #[test]
    fn from_generators_reduces() {
        let l = IntLattice::from_generators(2, &[qvec(&[2, 0]), qvec(&[0, 2]), qvec(&[1, 1])]);
        assert_eq!(l.rank(), 2);
        assert!(l.contains(&qvec(&[1, 1])));
        assert!(!l.contains(&qvec(&[1, 0])));
        assert_eq!(lattice_index(&IntLattice::standard(2), &l), Some(BigInt::from(2)));
    }
}
