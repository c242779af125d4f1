//! Finitely generated pointed affine semigroups in `ℤⁿ`.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactcore::rat::{clear_denominators, from_i64_vec, QVec};
use crate::exactcore::IntLattice;
use crate::polyhedron::Cone;

/// The semigroup `ℕ·g₁ + … + ℕ·g_k ⊆ ℤⁿ`, required to be pointed.
///
/// Membership and degree are decided by memoized search over the generators; the search
/// terminates because a fixed integral grading is positive on every generator.
#[derive(Debug, Clone)]
pub struct AffineSemigroup {
    rank: usize,
    gens: Vec<Vec<i64>>,
    cone: Cone,
    grading: Vec<i64>,
    member: RefCell<HashMap<Vec<i64>, bool>>,
    degree: RefCell<HashMap<Vec<i64>, Option<u32>>>,
}

/// JSON form `{"rank": n, "generators": [[…], …]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemigroupJson {
    pub rank: usize,
    pub generators: Vec<Vec<i64>>,
}

pub(crate) fn dot_i(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn add_i(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn sub_i(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// `M·x` for a row-major integer matrix.
pub(crate) fn apply(m: &[Vec<i64>], x: &[i64]) -> Vec<i64> {
    m.iter().map(|row| dot_i(row, x)).collect()
}

impl AffineSemigroup {
    /// Builds the semigroup; zero and repeated generators are dropped.
    pub fn new(rank: usize, generators: &[Vec<i64>]) -> Result<Self> {
        let mut gens: Vec<Vec<i64>> = Vec::new();
        for g in generators {
            if g.len() != rank {
                return Err(Error::DimensionMismatch { expected: rank, got: g.len() });
            }
            if g.iter().any(|&x| x != 0) && !gens.contains(g) {
                gens.push(g.clone());
            }
        }
        gens.sort();
        let qgens: Vec<QVec> = gens.iter().map(|g| from_i64_vec(g)).collect();
        let cone = Cone::from_generators(rank, &qgens, &[]);
        let form = cone.positive_form()?;
        let grading = clear_denominators(&form)
            .iter()
            .map(|x| i64::try_from(x).map_err(|_| Error::Overflow))
            .collect::<Result<Vec<i64>>>()?;
        Ok(AffineSemigroup {
            rank,
            gens,
            cone,
            grading,
            member: RefCell::new(HashMap::new()),
            degree: RefCell::new(HashMap::new()),
        })
    }

    /// The trivial semigroup `{0}`.
    pub fn zero(rank: usize) -> Self {
        Self::new(rank, &[]).expect("the zero semigroup is pointed")
    }

    pub fn from_json(j: &SemigroupJson) -> Result<Self> {
        Self::new(j.rank, &j.generators)
    }

    pub fn to_json(&self) -> SemigroupJson {
        SemigroupJson { rank: self.rank, generators: self.gens.clone() }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        &self.gens
    }

    /// The real cone spanned by the generators.
    pub fn cone(&self) -> &Cone {
        &self.cone
    }

    /// An integral linear form positive on every nonzero element.
    pub fn grading(&self) -> &[i64] {
        &self.grading
    }

    pub fn weight(&self, x: &[i64]) -> i64 {
        dot_i(&self.grading, x)
    }

    /// The group `S - S`.
    pub fn group(&self) -> IntLattice {
        let q: Vec<QVec> = self.gens.iter().map(|g| from_i64_vec(g)).collect();
        IntLattice::from_generators(self.rank, &q)
    }

    /// Whether `x` is a nonnegative integer combination of the generators.
    pub fn contains(&self, x: &[i64]) -> bool {
        if x.len() != self.rank {
            return false;
        }
        if x.iter().all(|&v| v == 0) {
            return true;
        }
        if self.weight(x) <= 0 || !self.cone.contains_i64(x) {
            return false;
        }
        if let Some(&b) = self.member.borrow().get(x) {
            return b;
        }
        let found = self.gens.iter().any(|g| self.contains(&sub_i(x, g)));
        self.member.borrow_mut().insert(x.to_vec(), found);
        found
    }

    /// Minimal number of generators summing to `x`, or `None` if `x ∉ S`.
    pub fn degree(&self, x: &[i64]) -> Option<u32> {
        if x.iter().all(|&v| v == 0) {
            return Some(0);
        }
        if !self.contains(x) {
            return None;
        }
        if let Some(&d) = self.degree.borrow().get(x) {
            return d;
        }
        let d = self.gens.iter().filter_map(|g| self.degree(&sub_i(x, g))).min().map(|d| d + 1);
        self.degree.borrow_mut().insert(x.to_vec(), d);
        d
    }

    /// All elements of degree at most `bound`, with their degrees, sorted by degree then
    /// lexicographically.
    pub fn elements_up_to_degree(&self, bound: u32) -> Vec<(Vec<i64>, u32)> {
        let mut seen: BTreeMap<Vec<i64>, u32> = BTreeMap::new();
        let mut layer = vec![vec![0; self.rank]];
        seen.insert(layer[0].clone(), 0);
        for d in 1..=bound {
            let mut next = Vec::new();
            for x in &layer {
                for g in &self.gens {
                    let y = add_i(x, g);
                    if !seen.contains_key(&y) {
                        seen.insert(y.clone(), d);
                        next.push(y);
                    }
                }
            }
            layer = next;
        }
        let mut out: Vec<(Vec<i64>, u32)> = seen.into_iter().collect();
        out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
        out
    }

    /// All elements `x` with `⟨w, x⟩ ≤ max`, sorted. `w` must be positive on every generator.
    pub fn elements_with_weight_at_most(&self, w: &[i64], max: i64) -> Result<Vec<Vec<i64>>> {
        if self.gens.iter().any(|g| dot_i(w, g) <= 0) {
            return Err(Error::Invariant("weight is not positive on the generators".into()));
        }
        let mut seen = std::collections::BTreeSet::new();
        let mut stack = vec![vec![0; self.rank]];
        while let Some(x) = stack.pop() {
            if dot_i(w, &x) > max || !seen.insert(x.clone()) {
                continue;
            }
            for g in &self.gens {
                stack.push(add_i(&x, g));
            }
        }
        Ok(seen.into_iter().collect())
    }

    /// The image under an integer matrix, when it is again pointed.
    pub fn image(&self, m: &[Vec<i64>]) -> Result<AffineSemigroup> {
        let gens: Vec<Vec<i64>> = self.gens.iter().map(|g| apply(m, g)).collect();
        AffineSemigroup::new(m.len(), &gens)
    }

    /// The semigroup of lattice points of a pointed rational cone, via its Hilbert basis.
    pub fn saturated(cone: &Cone) -> Result<Self> {
        Self::new(cone.ambient_dim(), &cone.hilbert_basis()?)
    }
}

impl PartialEq for AffineSemigroup {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.gens == other.gens
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cone_s() -> AffineSemigroup {
        AffineSemigroup::new(2, &[vec![-2, 1], vec![-1, 1], vec![0, 1], vec![1, 1], vec![2, 1]]).unwrap()
    }

    #[test]
    fn membership_and_degree() {
        let s = cone_s();
        assert!(s.contains(&[4, 2]));
        assert!(s.contains(&[0, 0]));
        assert!(!s.contains(&[5, 2]));
        assert!(!s.contains(&[0, -1]));
        assert_eq!(s.degree(&[3, 2]), Some(2));
        assert_eq!(s.degree(&[0, 5]), Some(5));
        assert_eq!(s.degree(&[5, 2]), None);
    }

    #[test]
    fn numerical_semigroup_has_gaps() {
        let s = AffineSemigroup::new(1, &[vec![2], vec![3]]).unwrap();
        assert!(!s.contains(&[1]));
        assert!(s.contains(&[5]));
        assert!(s.contains(&[7]));
        assert_eq!(s.degree(&[6]), Some(2));
        let els: Vec<Vec<i64>> = s.elements_up_to_degree(2).into_iter().map(|e| e.0).collect();
        assert_eq!(els, vec![vec![0], vec![2], vec![3], vec![4], vec![5], vec![6]]);
    }

    #[test]
    fn rejects_non_pointed() {
        assert_eq!(AffineSemigroup::new(1, &[vec![1], vec![-1]]).unwrap_err(), Error::NotPointed);
    }

    #[test]
    fn enumeration_agrees_with_membership() {
        let s = cone_s();
        let by_degree: Vec<Vec<i64>> = s.elements_up_to_degree(3).into_iter().map(|e| e.0).collect();
        for x in -7..=7 {
            for y in 0..=3 {
                let p = vec![x, y];
                assert_eq!(by_degree.contains(&p), s.contains(&p), "{p:?}");
            }
        }
        let by_weight = s.elements_with_weight_at_most(&[0, 1], 3).unwrap();
        let mut sorted = by_degree.clone();
        sorted.sort();
        assert_eq!(by_weight, sorted);
    }

    #[test]
    fn saturation_of_cone() {
        let c = Cone::from_generators(2, &[from_i64_vec(&[-2, 1]), from_i64_vec(&[2, 1])], &[]);
        assert_eq!(AffineSemigroup::saturated(&c).unwrap(), cone_s());
    }
}
