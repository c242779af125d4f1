//! Rational polyhedral cones with integral ray generators.

use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactcore::dd::double_description;
use crate::exactcore::rat::{dot, primitive, QVec, Rat};

/// A polyhedral cone in `ℚⁿ` held in both representations.
///
/// `rays` are primitive integer vectors generating the cone modulo `lineality`; the cone is
/// `{x : f·x ≥ 0 for f in facets, e·x = 0 for e in equations}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cone {
    dim: usize,
    rays: Vec<QVec>,
    lineality: Vec<QVec>,
    facets: Vec<QVec>,
    equations: Vec<QVec>,
}

impl Cone {
    /// The cone generated by `gens` plus the linear span of `lineality_gens`.
    pub fn from_generators(dim: usize, gens: &[QVec], lineality_gens: &[QVec]) -> Self {
        let dual = double_description(dim, gens, lineality_gens);
        Self::from_inequalities(dim, &dual.rays, &dual.lineality)
    }

    /// The cone `{x : a·x ≥ 0, e·x = 0}`.
    pub fn from_inequalities(dim: usize, ineqs: &[QVec], eqs: &[QVec]) -> Self {
        let g = double_description(dim, ineqs, eqs);
        let h = double_description(dim, &g.rays, &g.lineality);
        Cone { dim, rays: g.rays, lineality: g.lineality, facets: h.rays, equations: h.lineality }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[QVec] {
        &self.rays
    }

    pub fn lineality(&self) -> &[QVec] {
        &self.lineality
    }

    pub fn facets(&self) -> &[QVec] {
        &self.facets
    }

    pub fn equations(&self) -> &[QVec] {
        &self.equations
    }

    /// Dimension of the linear span.
    pub fn dimension(&self) -> usize {
        self.dim - self.equations.len()
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    /// The dual cone `{y : ⟨x, y⟩ ≥ 0 for all x in the cone}`.
    pub fn dual(&self) -> Cone {
        Cone {
            dim: self.dim,
            rays: self.facets.clone(),
            lineality: self.equations.clone(),
            facets: self.rays.clone(),
            equations: self.lineality.clone(),
        }
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.facets.iter().all(|f| !dot(f, x).is_negative()) && self.equations.iter().all(|e| dot(e, x).is_zero())
    }

    pub fn contains_i64(&self, x: &[i64]) -> bool {
        let q: QVec = x.iter().map(|&v| Rat::from_integer(v.into())).collect();
        self.contains(&q)
    }

    /// Whether `x` lies in the relative interior.
    pub fn in_relative_interior(&self, x: &[Rat]) -> bool {
        self.facets.iter().all(|f| dot(f, x).is_positive()) && self.equations.iter().all(|e| dot(e, x).is_zero())
    }

    /// A linear form positive on every nonzero element (pointed cones only).
    pub fn positive_form(&self) -> Result<QVec> {
        if !self.is_pointed() {
            return Err(Error::NotPointed);
        }
        let mut w = vec![Rat::zero(); self.dim];
        for f in &self.facets {
            for (a, b) in w.iter_mut().zip(f) {
                *a += b;
            }
        }
        Ok(w)
    }

    /// The Hilbert basis of the semigroup `cone ∩ ℤⁿ`, sorted lexicographically.
    pub fn hilbert_basis(&self) -> Result<Vec<Vec<i64>>> {
        if !self.is_pointed() {
            return Err(Error::NotPointed);
        }
        if self.rays.is_empty() {
            return Ok(vec![]);
        }
        let rays: Vec<Vec<i64>> = self
            .rays
            .iter()
            .map(|r| r.iter().map(|x| x.to_integer().to_i64().ok_or(Error::Overflow)).collect())
            .collect::<Result<_>>()?;
        let mut lo = vec![0i64; self.dim];
        let mut hi = vec![0i64; self.dim];
        for r in &rays {
            for k in 0..self.dim {
                if r[k] < 0 {
                    lo[k] += r[k];
                } else {
                    hi[k] += r[k];
                }
            }
        }
        let w = self.positive_form()?;
        let mut cands: Vec<(Rat, Vec<i64>)> = Vec::new();
        for_each_box_point(&lo, &hi, |x| {
            if x.iter().all(|&v| v == 0) {
                return;
            }
            let q: QVec = x.iter().map(|&v| Rat::from_integer(v.into())).collect();
            if self.contains(&q) {
                cands.push((dot(&w, &q), x.to_vec()));
            }
        })?;
        cands.sort();
        let mut basis: Vec<(Rat, Vec<i64>)> = Vec::new();
        for (wx, x) in cands {
            let reducible = basis.iter().any(|(wh, h)| {
                wh < &wx && {
                    let d: Vec<i64> = x.iter().zip(h).map(|(a, b)| a - b).collect();
                    self.contains_i64(&d)
                }
            });
            if !reducible {
                basis.push((wx, x));
            }
        }
        let mut out: Vec<Vec<i64>> = basis.into_iter().map(|(_, x)| x).collect();
        out.sort();
        Ok(out)
    }
}

/// Calls `f` on every integer point of the box `[lo, hi]`.
pub fn for_each_box_point(lo: &[i64], hi: &[i64], mut f: impl FnMut(&[i64])) -> Result<()> {
    let n = lo.len();
    if lo.iter().zip(hi).any(|(l, h)| l > h) {
        return Ok(());
    }
    let size: f64 = lo.iter().zip(hi).map(|(l, h)| (h - l + 1) as f64).product();
    if size > 5e7 {
        return Err(Error::Invariant(format!("box with {size:.0} points is too large")));
    }
    let mut cur = lo.to_vec();
    loop {
        f(&cur);
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(());
            }
            i -= 1;
            if cur[i] < hi[i] {
                cur[i] += 1;
                cur[i + 1..].copy_from_slice(&lo[i + 1..]);
                break;
            }
        }
    }
}

/// Primitive integer representative of the ray through `v`, as machine integers.
pub fn primitive_i64(v: &[Rat]) -> Result<Vec<i64>> {
    primitive(v).iter().map(|x| x.to_integer().to_i64().ok_or(Error::Overflow)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::rat::qvec;

    #[test]
    fn dual_of_pinkham_cone() {
        let c = Cone::from_generators(2, &[qvec(&[-1, 2]), qvec(&[1, 2])], &[]);
        let d = c.dual();
        assert_eq!(d.rays(), &[qvec(&[-2, 1]), qvec(&[2, 1])]);
        assert_eq!(d.dual(), c);
    }

    #[test]
    fn dual_of_full_space_is_zero() {
        let c = Cone::from_generators(2, &[], &[qvec(&[1, 0]), qvec(&[0, 1])]);
        let d = c.dual();
        assert!(d.rays().is_empty());
        assert!(d.lineality().is_empty());
        assert_eq!(d.dimension(), 0);
    }

    #[test]
    fn dual_of_unit_interval_cone() {
        let c = Cone::from_generators(2, &[qvec(&[0, 1]), qvec(&[1, 1])], &[]);
        let d = c.dual();
        assert_eq!(d.rays(), &[qvec(&[-1, 1]), qvec(&[1, 0])]);
        for f in d.rays() {
            for r in c.rays() {
                assert!(!dot(f, r).is_negative());
            }
        }
    }

    #[test]
    fn hilbert_bases() {
        let c = Cone::from_generators(2, &[qvec(&[-2, 1]), qvec(&[2, 1])], &[]);
        assert_eq!(c.hilbert_basis().unwrap(), vec![vec![-2, 1], vec![-1, 1], vec![0, 1], vec![1, 1], vec![2, 1]]);
        let ray = Cone::from_generators(2, &[qvec(&[1, 1])], &[]);
        assert_eq!(ray.hilbert_basis().unwrap(), vec![vec![1, 1]]);
        // A unimodular cone: [0,1] = [1,0] + [-1,1] is reducible.
        let c2 = Cone::from_generators(2, &[qvec(&[1, 0]), qvec(&[-1, 1])], &[]);
        assert_eq!(c2.hilbert_basis().unwrap(), vec![vec![-1, 1], vec![1, 0]]);
        assert!(c2.contains_i64(&[0, 1]) && c2.contains_i64(&[1, 0]) && c2.contains_i64(&[-1, 1]));
    }

    #[test]
    fn non_pointed_has_no_hilbert_basis() {
        let c = Cone::from_generators(2, &[qvec(&[1, 0])], &[qvec(&[0, 1])]);
        assert_eq!(c.hilbert_basis(), Err(Error::NotPointed));
    }
}
