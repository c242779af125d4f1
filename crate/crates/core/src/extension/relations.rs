//! The relations `η_ℤ(c₁,…,c_ℓ)` and `η̃_ℤ(c₁,…,c_ℓ)`, and minimal dependent multisets.

use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::etaspace::{EtaSpace, Functional};
use crate::exactcore::rat::{from_i64_vec, qvec};
use crate::polyhedron::Polyhedron;
use crate::semigroup::{AffineSemigroup, SemigroupPair};

/// The directions `a₁,…,a_k`, i.e. the Hilbert basis of `σ∨` without `[0,1]`, together with
/// the liftings of `η`.
#[derive(Debug, Clone)]
pub struct RelationOracle {
    space: EtaSpace,
    hilbert: Vec<Vec<i64>>,
    dirs: Vec<Vec<i64>>,
    lifted: RefCell<HashMap<Vec<i64>, Functional>>,
}

/// Minimal dependent multisets over the directions, with the bounds used to find them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DependencySet {
    /// Sorted by total degree, then lexicographically.
    pub minimal: Vec<Vec<u32>>,
    pub cap: u32,
    pub verify_degree: u32,
    /// A dependent multiset of degree at most `verify_degree` not dominating any recorded
    /// minimal element.
    pub incomplete: Option<Vec<u32>>,
}

impl DependencySet {
    pub fn is_complete(&self) -> bool {
        self.incomplete.is_none()
    }
}

/// All `m ∈ ℕᵏ` with `|m| = n`, in lexicographically decreasing order.
pub fn multisets(k: usize, n: u32) -> Vec<Vec<u32>> {
    fn rec(k: usize, n: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() + 1 == k {
            cur.push(n);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for x in (0..=n).rev() {
            cur.push(x);
            rec(k, n - x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k == 0 {
        if n == 0 {
            out.push(vec![]);
        }
        return out;
    }
    rec(k, n, &mut Vec::new(), &mut out);
    out
}

/// Whether `m ≥ n` componentwise.
pub fn dominates(m: &[u32], n: &[u32]) -> bool {
    m.iter().zip(n).all(|(a, b)| a >= b)
}

impl RelationOracle {
    pub fn new(p: &Polyhedron) -> Result<Self> {
        Self::from_space(EtaSpace::new(p)?)
    }

    /// Fails with `NotPointed` when `σ∨` contains a line, unless `T(P) = 0` and every relation
    /// vanishes anyway.
    pub fn from_space(space: EtaSpace) -> Result<Self> {
        let dual = space.polyhedron().cone_over().dual();
        let hilbert = match dual.hilbert_basis() {
            Ok(h) => h,
            Err(Error::NotPointed) if space.rank() == 0 => vec![],
            Err(e) => return Err(e),
        };
        let d = space.polyhedron().dim();
        let dirs = hilbert.iter().filter(|h| h[..d].iter().any(|&x| x != 0)).map(|h| h[..d].to_vec()).collect();
        Ok(RelationOracle { space, hilbert, dirs, lifted: RefCell::new(HashMap::new()) })
    }

    pub fn space(&self) -> &EtaSpace {
        &self.space
    }

    /// The Hilbert basis of `σ∨ ⊆ M ⊕ ℤ`, sorted.
    pub fn hilbert_basis(&self) -> &[Vec<i64>] {
        &self.hilbert
    }

    /// The directions `a₁,…,a_k`.
    pub fn directions(&self) -> &[Vec<i64>] {
        &self.dirs
    }

    /// Dimension of `M`.
    pub fn dim(&self) -> usize {
        self.space.polyhedron().dim()
    }

    /// Whether `σ∨` is pointed, i.e. `S` is an affine semigroup with a Hilbert basis.
    pub fn is_pointed(&self) -> bool {
        !self.hilbert.is_empty()
    }

    /// `(ℕ·[0,1], σ∨ ∩ (M ⊕ ℤ))`; [`Error::NotPointed`] when `σ∨` contains a line.
    pub fn lower_pair(&self) -> Result<SemigroupPair> {
        if !self.is_pointed() {
            return Err(Error::NotPointed);
        }
        let d = self.dim();
        let mut unit = vec![0; d + 1];
        unit[d] = 1;
        let s = AffineSemigroup::new(d + 1, &self.hilbert)?;
        SemigroupPair::new(AffineSemigroup::new(d + 1, &[unit])?, s)
    }

    /// Whether `c ∈ tail(P)∨`.
    pub fn in_domain(&self, c: &[i64]) -> bool {
        self.space.oracle().in_domain(&from_i64_vec(c))
    }

    /// The sequence `a₁^{m₁}, a₂^{m₂}, …`.
    pub fn sequence(&self, m: &[u32]) -> Vec<Vec<i64>> {
        m.iter().zip(&self.dirs).flat_map(|(&k, a)| std::iter::repeat_n(a.clone(), k as usize)).collect()
    }

    pub fn eta_z(&self, c: &[i64]) -> Result<BigInt> {
        self.space.oracle().eta_z(&qvec(c))
    }

    /// `η̃_ℤ(c)`, memoized.
    pub fn eta_tilde_z(&self, c: &[i64]) -> Result<Functional> {
        if let Some(f) = self.lifted.borrow().get(c) {
            return Ok(f.clone());
        }
        let f = self.space.eta_tilde_z_i64(c)?;
        self.lifted.borrow_mut().insert(c.to_vec(), f.clone());
        Ok(f)
    }

    /// `Σ η_ℤ(cᵢ) - η_ℤ(Σ cᵢ)`.
    pub fn eta_z_relation(&self, cs: &[Vec<i64>]) -> Result<BigInt> {
        let mut total = -self.eta_z(&sum(self.dim(), cs))?;
        for c in cs {
            total += self.eta_z(c)?;
        }
        Ok(total)
    }

    /// Whether `η_ℤ(c₁,…,c_ℓ) = 0`.
    pub fn is_independent(&self, cs: &[Vec<i64>]) -> Result<bool> {
        Ok(self.eta_z_relation(cs)?.is_zero())
    }

    /// `Σ η̃_ℤ(cᵢ) - η̃_ℤ(Σ cᵢ)`.
    pub fn eta_tilde_z_relation(&self, cs: &[Vec<i64>]) -> Result<Functional> {
        let mut total = -&self.eta_tilde_z(&sum(self.dim(), cs))?;
        for c in cs {
            total = &total + &self.eta_tilde_z(c)?;
        }
        Ok(total)
    }

    /// `η̃_ℤ(m)` of a multiset over the directions.
    pub fn multiset_relation(&self, m: &[u32]) -> Result<Functional> {
        self.eta_tilde_z_relation(&self.sequence(m))
    }

    /// Breadth-first search through the multisets by total degree.
    ///
    /// Minimal dependents up to degree `cap` are recorded. Every dependent multiset up to
    /// `verify_degree` must dominate one of them; the first that does not is reported as
    /// `incomplete`.
    pub fn minimal_dependents(&self, cap: u32, verify_degree: u32) -> Result<DependencySet> {
        let k = self.dirs.len();
        let top = verify_degree.max(cap);
        let mut minimal: Vec<Vec<u32>> = Vec::new();
        let mut incomplete = None;
        let mut prev_independent: BTreeSet<Vec<u32>> = BTreeSet::new();
        for n in 2..=top {
            let mut layer = multisets(k, n);
            layer.reverse();
            let mut independent = BTreeSet::new();
            for m in layer {
                if self.eta_z_relation(&self.sequence(&m))?.is_positive() {
                    let below_independent = n == 2
                        || (0..k).filter(|&j| m[j] > 0).all(|j| {
                            let mut sub = m.clone();
                            sub[j] -= 1;
                            prev_independent.contains(&sub)
                        });
                    if below_independent && n <= cap {
                        minimal.push(m);
                    } else if n <= verify_degree && incomplete.is_none() && !minimal.iter().any(|g| dominates(&m, g)) {
                        incomplete = Some(m);
                    }
                } else {
                    independent.insert(m);
                }
            }
            prev_independent = independent;
        }
        Ok(DependencySet { minimal, cap, verify_degree, incomplete })
    }
}

/// `Σ cᵢ` in `ℤᵈ`.
pub fn sum(d: usize, cs: &[Vec<i64>]) -> Vec<i64> {
    let mut s = vec![0; d];
    for c in cs {
        for (a, b) in s.iter_mut().zip(c) {
            *a += b;
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::rat::{int, rat};

    pub(crate) fn pinkham() -> RelationOracle {
        RelationOracle::new(&Polyhedron::polytope(1, &[vec![rat(-1, 2)], vec![rat(1, 2)]]).unwrap()).unwrap()
    }

    #[test]
    fn pinkham_directions() {
        let o = pinkham();
        assert_eq!(o.hilbert_basis(), &[vec![-2, 1], vec![-1, 1], vec![0, 1], vec![1, 1], vec![2, 1]]);
        assert_eq!(o.directions(), &[vec![-2], vec![-1], vec![1], vec![2]]);
    }

    #[test]
    fn relation_values() {
        let o = pinkham();
        assert_eq!(o.eta_z_relation(&[vec![1], vec![1]]).unwrap(), BigInt::from(1));
        assert_eq!(o.eta_z_relation(&[vec![1], vec![2]]).unwrap(), BigInt::from(0));
        for c in -4..=4 {
            assert!(o.is_independent(&[vec![c], vec![0]]).unwrap());
            assert!(o.eta_tilde_z_relation(&[vec![c], vec![0]]).unwrap().is_zero());
        }
        let sp = o.space();
        let raw = |t: Rat, s1: Rat, s2: Rat| sp.functional(vec![t, s1, s2]);
        use crate::exactcore::rat::Rat;
        let h = rat(1, 2);
        assert_eq!(o.eta_tilde_z_relation(&[vec![1], vec![1]]).unwrap(), raw(int(0), int(1), int(0)));
        assert_eq!(o.eta_tilde_z_relation(&[vec![-1], vec![-1]]).unwrap(), raw(int(0), int(0), int(1)));
        assert_eq!(o.eta_tilde_z_relation(&[vec![-2], vec![2]]).unwrap(), raw(int(2), int(0), int(0)));
        assert_eq!(o.eta_tilde_z_relation(&[vec![-1], vec![1]]).unwrap(), raw(int(1), h.clone(), h.clone()));
        assert_eq!(o.eta_tilde_z_relation(&[vec![-1], vec![2]]).unwrap(), raw(int(1), -h.clone(), h.clone()));
        assert_eq!(o.eta_tilde_z_relation(&[vec![-2], vec![1]]).unwrap(), raw(int(1), h.clone(), -h));
    }

    #[test]
    fn multiset_enumeration() {
        assert_eq!(multisets(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(multisets(4, 3).len(), 20);
        assert_eq!(multisets(0, 0), vec![Vec::<u32>::new()]);
        assert!(multisets(0, 1).is_empty());
    }

    #[test]
    fn pinkham_minimal_dependents_are_pairs() {
        let o = pinkham();
        let deps = o.minimal_dependents(4, 6).unwrap();
        assert!(deps.is_complete());
        // Directions are -2, -1, 1, 2.
        let expected: Vec<Vec<u32>> = vec![
            vec![0, 0, 2, 0], // {1, 1}
            vec![0, 1, 0, 1], // {-1, 2}
            vec![0, 1, 1, 0], // {-1, 1}
            vec![0, 2, 0, 0], // {-1, -1}
            vec![1, 0, 0, 1], // {-2, 2}
            vec![1, 0, 1, 0], // {-2, 1}
        ];
        assert_eq!(deps.minimal, expected);
        assert!(o.is_independent(&[vec![-2], vec![-1]]).unwrap());
        assert!(o.is_independent(&[vec![1], vec![2]]).unwrap());
    }

    #[test]
    fn too_small_cap_is_detected() {
        let o = pinkham();
        let deps = o.minimal_dependents(1, 3).unwrap();
        assert!(deps.minimal.is_empty());
        assert_eq!(deps.incomplete, Some(vec![0, 0, 2, 0]));
    }

    #[test]
    fn point_has_no_directions() {
        let o = RelationOracle::new(&Polyhedron::polytope(2, &[qvec(&[0, 0])]).unwrap()).unwrap();
        assert!(o.directions().is_empty());
        assert!(o.minimal_dependents(4, 6).unwrap().minimal.is_empty());
    }
}
