//! Pairs `T ⊆ S`, relative boundaries, freeness and the retractions `∂`, `λ`.

use serde::{Deserialize, Serialize};

use super::affine::{dot_i, sub_i, AffineSemigroup, SemigroupJson};
use crate::error::{Error, Result};

/// Subsemigroup `T ⊆ S` of a common lattice `ℤⁿ`.
#[derive(Debug, Clone, PartialEq)]
pub struct SemigroupPair {
    t: AffineSemigroup,
    s: AffineSemigroup,
}

/// JSON form `{"t": …, "s": …}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairJson {
    pub t: SemigroupJson,
    pub s: SemigroupJson,
}

/// One element of `S` written in two different ways as boundary element plus element of `T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreenessWitness {
    pub b: Vec<i64>,
    pub t: Vec<i64>,
    pub b2: Vec<i64>,
    pub t2: Vec<i64>,
}

/// Outcome of a bounded freeness check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Freeness {
    /// No element of degree at most the bound has two decompositions.
    FreeWithinBound,
    NotFree(FreenessWitness),
}

impl Freeness {
    pub fn is_free(&self) -> bool {
        matches!(self, Freeness::FreeWithinBound)
    }
}

/// An element of `S` together with all of its decompositions `s = b + t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Collision {
    pub element: Vec<i64>,
    pub decompositions: Vec<(Vec<i64>, Vec<i64>)>,
}

impl SemigroupPair {
    /// Checks that both live in the same lattice and that every generator of `T` lies in `S`.
    pub fn new(t: AffineSemigroup, s: AffineSemigroup) -> Result<Self> {
        if t.rank() != s.rank() {
            return Err(Error::DimensionMismatch { expected: s.rank(), got: t.rank() });
        }
        if let Some(g) = t.generators().iter().find(|g| !s.contains(g)) {
            return Err(Error::Invariant(format!("generator {g:?} of T is not in S")));
        }
        Ok(SemigroupPair { t, s })
    }

    pub fn from_json(j: &PairJson) -> Result<Self> {
        Self::new(AffineSemigroup::from_json(&j.t)?, AffineSemigroup::from_json(&j.s)?)
    }

    pub fn to_json(&self) -> PairJson {
        PairJson { t: self.t.to_json(), s: self.s.to_json() }
    }

    pub fn t(&self) -> &AffineSemigroup {
        &self.t
    }

    pub fn s(&self) -> &AffineSemigroup {
        &self.s
    }

    pub fn rank(&self) -> usize {
        self.s.rank()
    }

    /// `(x - T) ∩ S = {x}`: no generator of `T` can be subtracted inside `S`.
    ///
    /// Testing generators suffices, since `x - t ∈ S` for `t = τ + t'` gives `x - τ ∈ S`.
    pub fn is_boundary(&self, x: &[i64]) -> bool {
        self.s.contains(x) && self.t.generators().iter().all(|g| !self.s.contains(&sub_i(x, g)))
    }

    /// Boundary elements of degree at most `bound` in `S`, sorted by degree then
    /// lexicographically.
    pub fn relative_boundary(&self, bound: u32) -> Vec<Vec<i64>> {
        self.s.elements_up_to_degree(bound).into_iter().map(|(x, _)| x).filter(|x| self.is_boundary(x)).collect()
    }

    /// Elements `t ∈ T` with `x - t ∈ S`, sorted.
    fn t_below(&self, x: &[i64]) -> Vec<Vec<i64>> {
        let w = self.s.grading();
        let max = dot_i(w, x);
        let ts = self.t.elements_with_weight_at_most(w, max).expect("the grading of S is positive on T");
        ts.into_iter().filter(|t| self.s.contains(&sub_i(x, t))).collect()
    }

    /// Every way of writing `x = b + t` with `b` in the boundary and `t ∈ T`, sorted by `t`.
    pub fn decompositions(&self, x: &[i64]) -> Vec<(Vec<i64>, Vec<i64>)> {
        if !self.s.contains(x) {
            return vec![];
        }
        self.t_below(x).into_iter().map(|t| (sub_i(x, &t), t)).filter(|(b, _)| self.is_boundary(b)).collect()
    }

    /// Elements of degree at most `bound` having more than one decomposition.
    pub fn collisions(&self, bound: u32) -> Vec<Collision> {
        self.s
            .elements_up_to_degree(bound)
            .into_iter()
            .filter_map(|(x, _)| {
                let d = self.decompositions(&x);
                (d.len() > 1).then_some(Collision { element: x, decompositions: d })
            })
            .collect()
    }

    /// Injectivity of `∂_T(S) × T → S` on elements of degree at most `bound`.
    ///
    /// The witness is taken at the first colliding element in degree order.
    pub fn is_free(&self, bound: u32) -> Freeness {
        for (x, _) in self.s.elements_up_to_degree(bound) {
            let d = self.decompositions(&x);
            if d.len() > 1 {
                let (b, t) = d[0].clone();
                let (b2, t2) = d[1].clone();
                return Freeness::NotFree(FreenessWitness { b, t, b2, t2 });
            }
        }
        Freeness::FreeWithinBound
    }

    /// The unique decomposition `x = ∂(x) + λ(x)`.
    ///
    /// `∂(x)` is found by greedily subtracting generators of `T`; the result is then checked
    /// against all decompositions of `x`.
    pub fn decompose(&self, x: &[i64]) -> Result<(Vec<i64>, Vec<i64>)> {
        if !self.s.contains(x) {
            return Err(Error::NotAMember);
        }
        let mut b = x.to_vec();
        'outer: loop {
            for g in self.t.generators() {
                let y = sub_i(&b, g);
                if self.s.contains(&y) {
                    b = y;
                    continue 'outer;
                }
            }
            break;
        }
        let lambda = sub_i(x, &b);
        let all = self.decompositions(x);
        if all.len() > 1 {
            return Err(Error::NotFreePair(format!("{x:?} = {:?} + {:?} = {:?} + {:?}", all[0].0, all[0].1, all[1].0, all[1].1)));
        }
        if all.first() != Some(&(b.clone(), lambda.clone())) {
            return Err(Error::Invariant(format!("greedy decomposition of {x:?} is not in T")));
        }
        Ok((b, lambda))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cone_s() -> AffineSemigroup {
        AffineSemigroup::new(2, &[vec![-2, 1], vec![-1, 1], vec![0, 1], vec![1, 1], vec![2, 1]]).unwrap()
    }

    fn ray(g: Vec<i64>) -> AffineSemigroup {
        AffineSemigroup::new(2, &[g]).unwrap()
    }

    fn sorted(mut v: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
        v.sort();
        v
    }

    /// `{[±2b, b]} ∪ {[±(2b-1), b]}` up to height `h`.
    fn closed_form_t0(h: i64) -> Vec<Vec<i64>> {
        let mut v = vec![vec![0, 0]];
        for b in 1..=h {
            v.extend([vec![2 * b, b], vec![-2 * b, b], vec![2 * b - 1, b], vec![1 - 2 * b, b]]);
        }
        sorted(v)
    }

    /// `{[±2b, b]} ∪ {[-2b+1, b], [-2b+2, b]}` up to height `h`.
    fn closed_form_t1(h: i64) -> Vec<Vec<i64>> {
        let mut v = vec![vec![0, 0]];
        for b in 1..=h {
            v.extend([vec![2 * b, b], vec![-2 * b, b], vec![1 - 2 * b, b], vec![2 - 2 * b, b]]);
        }
        sorted(v)
    }

    #[test]
    fn boundaries_of_interior_rays() {
        let t0 = SemigroupPair::new(ray(vec![0, 1]), cone_s()).unwrap();
        let t1 = SemigroupPair::new(ray(vec![1, 1]), cone_s()).unwrap();
        for h in 1..=3 {
            assert_eq!(sorted(t0.relative_boundary(h as u32)), closed_form_t0(h));
            assert_eq!(sorted(t1.relative_boundary(h as u32)), closed_form_t1(h));
        }
        let listed: Vec<Vec<i64>> =
            vec![vec![0, 0], vec![1, 1], vec![-1, 1], vec![2, 1], vec![-2, 1], vec![3, 2], vec![-3, 2], vec![4, 2], vec![-4, 2]];
        assert_eq!(sorted(t0.relative_boundary(2)), sorted(listed));
    }

    #[test]
    fn boundary_of_whole_semigroup_is_zero() {
        let p = SemigroupPair::new(cone_s(), cone_s()).unwrap();
        assert_eq!(p.relative_boundary(4), vec![vec![0, 0]]);
    }

    #[test]
    fn rays_give_free_pairs() {
        let p = SemigroupPair::new(ray(vec![0, 1]), cone_s()).unwrap();
        assert!(p.is_free(6).is_free());
        let p = SemigroupPair::new(AffineSemigroup::zero(2), cone_s()).unwrap();
        assert!(p.is_free(6).is_free());
    }

    #[test]
    fn two_dimensional_t_is_not_free() {
        let t = AffineSemigroup::new(2, &[vec![-1, 1], vec![1, 1]]).unwrap();
        let p = SemigroupPair::new(t, cone_s()).unwrap();
        let Freeness::NotFree(w) = p.is_free(6) else { panic!("expected a collision") };
        assert_eq!(crate::semigroup::affine::add_i(&w.b, &w.t), crate::semigroup::affine::add_i(&w.b2, &w.t2));
        assert_ne!(w.b, w.b2);
        let d = p.decompositions(&[4, 4]);
        assert!(d.contains(&(vec![0, 0], vec![4, 4])));
        assert!(d.contains(&(vec![4, 2], vec![0, 2])));
        assert!(p.collisions(4).iter().any(|c| c.element == vec![4, 4]));
        assert!(matches!(p.decompose(&[4, 4]), Err(Error::NotFreePair(_))));
    }

    #[test]
    fn decompose_along_vertical_ray() {
        let p = SemigroupPair::new(ray(vec![0, 1]), cone_s()).unwrap();
        assert_eq!(p.decompose(&[0, 3]).unwrap(), (vec![0, 0], vec![0, 3]));
        assert_eq!(p.decompose(&[3, 2]).unwrap(), (vec![3, 2], vec![0, 0]));
        assert_eq!(p.decompose(&[1, 2]).unwrap(), (vec![1, 1], vec![0, 1]));
        assert_eq!(p.decompose(&[5, 2]), Err(Error::NotAMember));
    }

    #[test]
    fn rejects_t_outside_s() {
        let s = AffineSemigroup::new(1, &[vec![2], vec![3]]).unwrap();
        let t = AffineSemigroup::new(1, &[vec![1]]).unwrap();
        assert!(SemigroupPair::new(t, s).is_err());
    }
}
