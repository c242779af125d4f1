//! Positive fibers of a linear map between cones, Minkowski linearity and the face-map test.

use std::collections::BTreeSet;

use num_traits::Zero;

use super::cones::same_cone;
use crate::error::{Error, Result};
use crate::exactcore::rat::{dot, QVec, Rat};
use crate::polyhedron::{Cone, Halfspace, Polyhedron};

/// A linear map `pr: ℝ^a → ℝ^b` restricted to cones `source ⊆ ℝ^a` and `target ⊆ ℝ^b`.
#[derive(Debug, Clone)]
pub struct ConeMap {
    pub source: Cone,
    pub target: Cone,
    /// One row per output coordinate.
    pub matrix: Vec<QVec>,
}

impl ConeMap {
    pub fn new(source: Cone, target: Cone, matrix: Vec<QVec>) -> Result<Self> {
        if matrix.len() != target.ambient_dim() {
            return Err(Error::DimensionMismatch { expected: target.ambient_dim(), got: matrix.len() });
        }
        if let Some(r) = matrix.iter().find(|r| r.len() != source.ambient_dim()) {
            return Err(Error::DimensionMismatch { expected: source.ambient_dim(), got: r.len() });
        }
        Ok(ConeMap { source, target, matrix })
    }

    /// `pr^∨: (ℝ^b)^* → (ℝ^a)^*` between the duals: the restriction `S^∨ → T^∨` for a pair
    /// `T ⊆ S` where `T` is spanned by the vectors `t_span` (given in coordinates of `S`).
    pub fn dual_restriction(s: &Cone, t: &Cone, t_span: &[QVec]) -> Result<Self> {
        ConeMap::new(s.dual(), t.dual(), t_span.to_vec())
    }

    pub fn apply(&self, x: &[Rat]) -> QVec {
        self.matrix.iter().map(|row| dot(row, x)).collect()
    }

    /// `pr₊^{-1}(ξ) = pr^{-1}(ξ) ∩ source`; [`Error::NotSurjective`] if it is empty.
    pub fn positive_fiber(&self, xi: &[Rat]) -> Result<Polyhedron> {
        let a = self.source.ambient_dim();
        let facets: Vec<Halfspace> = self.source.facets().iter().map(|f| Halfspace { a: f.clone(), b: Rat::zero() }).collect();
        let mut equations: Vec<Halfspace> =
            self.source.equations().iter().map(|e| Halfspace { a: e.clone(), b: Rat::zero() }).collect();
        equations.extend(self.matrix.iter().zip(xi).map(|(row, x)| Halfspace { a: row.clone(), b: x.clone() }));
        match Polyhedron::from_hrep(a, &facets, &equations) {
            Err(Error::Empty) => Err(Error::NotSurjective),
            other => other,
        }
    }

    /// `pr₊` hits every ray of the target.
    pub fn is_surjective(&self) -> bool {
        self.target.rays().iter().all(|r| self.positive_fiber(r).is_ok())
    }

    /// Pairs `(i, j)` of samples with `pr₊^{-1}(ξᵢ) + pr₊^{-1}(ξⱼ) ≠ pr₊^{-1}(ξᵢ + ξⱼ)`.
    pub fn linearity_failures(&self, samples: &[QVec]) -> Result<Vec<(usize, usize)>> {
        let fibers: Vec<Polyhedron> = samples.iter().map(|x| self.positive_fiber(x)).collect::<Result<_>>()?;
        let mut failures = Vec::new();
        for i in 0..samples.len() {
            for j in i..samples.len() {
                let sum: QVec = samples[i].iter().zip(&samples[j]).map(|(a, b)| a + b).collect();
                let whole = self.positive_fiber(&sum)?;
                let parts = fibers[i].minkowski_sum(&fibers[j])?;
                if parts.vertices() != whole.vertices() || parts.tail_rays() != whole.tail_rays() {
                    failures.push((i, j));
                }
            }
        }
        Ok(failures)
    }

    /// Faces of the source (as sets of ray indices) whose image is not a face of the target.
    pub fn face_map_failures(&self) -> Vec<Vec<usize>> {
        let rays = self.source.rays();
        let facets = self.source.facets();
        let mut faces: BTreeSet<Vec<usize>> = BTreeSet::new();
        for mask in 0u64..(1u64 << facets.len().min(20)) {
            let face: Vec<usize> = (0..rays.len())
                .filter(|&k| (0..facets.len()).filter(|&f| mask >> f & 1 == 1).all(|f| dot(&facets[f], &rays[k]).is_zero()))
                .collect();
            faces.insert(face);
        }
        let b = self.target.ambient_dim();
        let lin: Vec<QVec> = self.source.lineality().iter().map(|l| self.apply(l)).collect();
        faces
            .into_iter()
            .filter(|face| {
                let gens: Vec<QVec> = face.iter().map(|&k| self.apply(&rays[k])).collect();
                let image = Cone::from_generators(b, &gens, &lin);
                let mut eqs: Vec<QVec> = self.target.equations().to_vec();
                eqs.extend(self.target.facets().iter().filter(|f| gens.iter().chain(&lin).all(|g| dot(f, g).is_zero())).cloned());
                let smallest_face = Cone::from_inequalities(b, self.target.facets(), &eqs);
                !same_cone(&image, &smallest_face)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::rat::{qvec, rat};

    #[test]
    fn height_map_fiber_is_p() {
        let p = Polyhedron::polytope(1, &[vec![rat(-1, 2)], vec![rat(1, 2)]]).unwrap();
        let target = Cone::from_generators(1, &[qvec(&[1])], &[]);
        let map = ConeMap::new(p.cone_over(), target, vec![qvec(&[0, 1])]).unwrap();
        let fiber = map.positive_fiber(&qvec(&[1])).unwrap();
        assert_eq!(fiber.vertices(), &[vec![rat(-1, 2), rat(1, 1)], vec![rat(1, 2), rat(1, 1)]]);
        assert!(map.is_surjective());
        assert!(map.face_map_failures().is_empty());
        assert!(map.linearity_failures(&[qvec(&[1]), qvec(&[3])]).unwrap().is_empty());
    }

    #[test]
    fn empty_fiber_is_not_surjective() {
        let source = Cone::from_generators(2, &[qvec(&[1, 0])], &[]);
        let target = Cone::from_generators(1, &[qvec(&[1])], &[]);
        let map = ConeMap::new(source, target, vec![qvec(&[0, 1])]).unwrap();
        assert_eq!(map.positive_fiber(&qvec(&[1])).unwrap_err(), Error::NotSurjective);
        assert!(!map.is_surjective());
    }

    /// `S` is the cone over a quadrilateral and `T` the cone over a chord from a vertex to an edge,
    /// so slices of `S` parallel to `T` on one side have two vertices.
    fn chord_pair() -> ConeMap {
        let pts = [[0, 0, 2], [4, -6, 2], [10, -4, 2], [8, 4, 2]];
        let s = Cone::from_generators(3, &pts.iter().map(|p| qvec(p)).collect::<Vec<_>>(), &[]);
        let t = Cone::from_generators(2, &[qvec(&[0, 1]), qvec(&[9, 2])], &[]);
        ConeMap::dual_restriction(&s, &t, &[qvec(&[1, 0, 0]), qvec(&[0, 0, 1])]).unwrap()
    }

    #[test]
    fn chord_pair_fails_face_map() {
        let map = chord_pair();
        assert!(map.is_surjective());
        assert!(!map.face_map_failures().is_empty());
        let samples: Vec<QVec> = map.target.rays().to_vec();
        assert!(!map.linearity_failures(&samples).unwrap().is_empty());
    }
}
