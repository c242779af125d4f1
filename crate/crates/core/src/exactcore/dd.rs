//! Double description: generators of `{x : a·x ≥ 0, e·x = 0}`.

use num_traits::{Signed, Zero};

use super::matrix::{orthogonal_complement, project_off, row_space_basis};
use super::rat::{dot, primitive, QVec, Rat};

/// A cone given by a lineality basis plus extreme rays modulo the lineality space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeGenerators {
    pub rays: Vec<QVec>,
    pub lineality: Vec<QVec>,
}

#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64).max(1)])
    }

    fn with_len(&self, n: usize) -> Self {
        let mut b = self.0.clone();
        b.resize(n.div_ceil(64).max(1), 0);
        Bits(b)
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn and(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }

    fn subset_of(&self, o: &Bits) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & !b == 0)
    }
}

struct Ray {
    v: QVec,
    zeros: Bits,
}

/// Generators of the cone cut out by `ineqs` (each `a·x ≥ 0`) and `eqs` (each `e·x = 0`).
///
/// Rays are primitive integer vectors, sorted lexicographically; the lineality basis is in
/// reduced echelon form.
pub fn double_description(dim: usize, ineqs: &[QVec], eqs: &[QVec]) -> ConeGenerators {
    let mut lin: Vec<QVec> = orthogonal_complement(dim, eqs);
    let mut rays: Vec<Ray> = Vec::new();
    let n = ineqs.len();
    for (k, a) in ineqs.iter().enumerate() {
        if let Some(p) = lin.iter().position(|l| !dot(a, l).is_zero()) {
            let mut l0 = lin.swap_remove(p);
            let mut al0 = dot(a, &l0);
            if al0.is_negative() {
                l0 = l0.iter().map(|x| -x).collect();
                al0 = -al0;
            }
            for l in lin.iter_mut() {
                let f = dot(a, l) / &al0;
                if !f.is_zero() {
                    for (x, y) in l.iter_mut().zip(&l0) {
                        *x -= &f * y;
                    }
                }
            }
            for r in rays.iter_mut() {
                let f = dot(a, &r.v) / &al0;
                if !f.is_zero() {
                    for (x, y) in r.v.iter_mut().zip(&l0) {
                        *x -= &f * y;
                    }
                    r.v = primitive(&r.v);
                }
                r.zeros.set(k);
            }
            let mut zeros = Bits::new(n);
            for j in 0..k {
                zeros.set(j);
            }
            rays.push(Ray { v: primitive(&l0), zeros });
            continue;
        }
        let vals: Vec<Rat> = rays.iter().map(|r| dot(a, &r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let negs: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        if negs.is_empty() {
            for (r, v) in rays.iter_mut().zip(&vals) {
                if v.is_zero() {
                    r.zeros.set(k);
                }
            }
            continue;
        }
        let mut new_rays = Vec::new();
        for &p in &pos {
            for &q in &negs {
                let common = rays[p].zeros.and(&rays[q].zeros);
                let adjacent = rays.iter().enumerate().all(|(i, r)| i == p || i == q || !common.subset_of(&r.zeros));
                if !adjacent {
                    continue;
                }
                let v: QVec = rays[q].v.iter().zip(&rays[p].v).map(|(x, y)| &vals[p] * x - &vals[q] * y).collect();
                let mut zeros = common.with_len(n);
                zeros.set(k);
                new_rays.push(Ray { v: primitive(&v), zeros });
            }
        }
        let mut kept: Vec<Ray> = Vec::new();
        for (i, mut r) in rays.into_iter().enumerate() {
            if vals[i].is_negative() {
                continue;
            }
            if vals[i].is_zero() {
                r.zeros.set(k);
            }
            kept.push(r);
        }
        kept.extend(new_rays);
        rays = kept;
    }
    let lineality = row_space_basis(dim, &lin);
    let mut out: Vec<QVec> = rays
        .into_iter()
        .map(|r| primitive(&project_off(&r.v, dim, &lineality)))
        .filter(|v| v.iter().any(|x| !x.is_zero()))
        .collect();
    out.sort();
    out.dedup();
    ConeGenerators { rays: out, lineality }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::rat::qvec;

    #[test]
    fn positive_orthant() {
        let ineqs = vec![qvec(&[1, 0]), qvec(&[0, 1])];
        let g = double_description(2, &ineqs, &[]);
        assert_eq!(g.rays, vec![qvec(&[0, 1]), qvec(&[1, 0])]);
        assert!(g.lineality.is_empty());
    }

    #[test]
    fn half_plane_has_lineality() {
        let g = double_description(2, &[qvec(&[1, 0])], &[]);
        assert_eq!(g.rays, vec![qvec(&[1, 0])]);
        assert_eq!(g.lineality.len(), 1);
    }

    #[test]
    fn square_pyramid_cone() {
        // cone over the square [-1,1]^2 at height 1
        let ineqs = vec![qvec(&[1, 0, 1]), qvec(&[-1, 0, 1]), qvec(&[0, 1, 1]), qvec(&[0, -1, 1])];
        let g = double_description(3, &ineqs, &[]);
        assert_eq!(g.rays, vec![qvec(&[-1, -1, 1]), qvec(&[-1, 1, 1]), qvec(&[1, -1, 1]), qvec(&[1, 1, 1])]);
    }

    #[test]
    fn redundant_inequalities_are_harmless() {
        let ineqs = vec![qvec(&[1, 0]), qvec(&[0, 1]), qvec(&[1, 1]), qvec(&[2, 1])];
        let g = double_description(2, &ineqs, &[]);
        assert_eq!(g.rays, vec![qvec(&[0, 1]), qvec(&[1, 0])]);
    }

    #[test]
    fn equations_restrict() {
        let g = double_description(3, &[qvec(&[1, 0, 0]), qvec(&[0, 1, 0])], &[qvec(&[1, 1, -1])]);
        assert_eq!(g.rays, vec![qvec(&[0, 1, 1]), qvec(&[1, 0, 1])]);
    }

    #[test]
    fn trivial_cone() {
        let g = double_description(1, &[qvec(&[1]), qvec(&[-1])], &[]);
        assert!(g.rays.is_empty());
        assert!(g.lineality.is_empty());
    }
}
