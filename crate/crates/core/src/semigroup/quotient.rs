//! The quotient group `Q = (S - S) / (T - T)` of a pair.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::pair::SemigroupPair;
use crate::exactcore::hnf::{hermite_normal_form, hnf_rank, IMat};
use crate::exactcore::rat::{from_i64_vec, QVec};
use crate::exactcore::{smith_invariants, IntLattice};

/// `Q = (S - S)/(T - T)`, presented by the coordinates of a basis of `T - T` in a basis of
/// `S - S`.
#[derive(Debug, Clone)]
pub struct QuotientGroup {
    group_s: IntLattice,
    group_t: IntLattice,
    /// Hermite form of the relation rows, in `S - S` coordinates.
    relations: IMat,
    /// Free rank of `Q`.
    pub rank: usize,
    /// Invariant factors greater than one.
    pub torsion: Vec<BigInt>,
}

fn integral_coords(l: &IntLattice, x: &[num_rational::BigRational]) -> Option<Vec<BigInt>> {
    let c = l.coordinates(x)?;
    c.iter().all(|v| v.is_integer()).then(|| c.iter().map(|v| v.to_integer()).collect())
}

impl QuotientGroup {
    pub fn new(pair: &SemigroupPair) -> Self {
        let group_s = pair.s().group();
        let group_t = pair.t().group();
        let k = group_s.rank();
        let rows: IMat = group_t.basis().iter().map(|b| integral_coords(&group_s, b).expect("T - T lies in S - S")).collect();
        let (h, _) = hermite_normal_form(&rows, k);
        let relations: IMat = h.into_iter().take_while(|r| r.iter().any(|x| !x.is_zero())).collect();
        let inv = if relations.is_empty() { vec![] } else { smith_invariants(&relations, k) };
        let rank = k - hnf_rank(&relations);
        let torsion = inv.into_iter().filter(|d| !d.is_one()).collect();
        QuotientGroup { group_s, group_t, relations, rank, torsion }
    }

    /// The canonical representative of `q(x)` in `S - S` coordinates, or `None` if
    /// `x ∉ S - S`.
    pub fn class_of(&self, x: &[i64]) -> Option<Vec<BigInt>> {
        let mut c = integral_coords(&self.group_s, &from_i64_vec(x))?;
        for row in &self.relations {
            let p = row.iter().position(|v| !v.is_zero()).expect("nonzero relation row");
            let q = c[p].div_floor(&row[p]);
            for (ci, ri) in c.iter_mut().zip(row) {
                *ci -= &q * ri;
            }
        }
        Some(c)
    }

    /// Whether `a - b ∈ T - T`.
    pub fn same_class(&self, a: &[i64], b: &[i64]) -> bool {
        let d: QVec = from_i64_vec(&super::affine::sub_i(a, b));
        self.group_t.contains(&d)
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}
