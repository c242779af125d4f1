//! The Kodaira–Spencer vector of a summand, lattice friendly decompositions and their enumeration.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::summand::{psi_summand, Xi};
use crate::error::{Error, Result};
use crate::etaspace::EtaSpace;
use crate::exactcore::enumerate::enumerate_lattice_points;
use crate::exactcore::rat::{add, fmt_rat, fmt_vec, is_integral_vec, scale, sub, unit, QVec, Rat};
use crate::polyhedron::Polyhedron;

/// `κ(Q) = (t(Q); s(Q))`: edge dilation factors and vertex non-latticeness flags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KSVector {
    pub t: Vec<Rat>,
    pub s: Vec<u8>,
}

impl KSVector {
    /// The vector in raw `(t, s)` coordinates.
    pub fn raw(&self) -> QVec {
        self.t.iter().cloned().chain(self.s.iter().map(|&x| Rat::from_integer(x.into()))).collect()
    }

    pub fn display(&self) -> String {
        let t: Vec<String> = self.t.iter().map(fmt_rat).collect();
        let s: Vec<String> = self.s.iter().map(u8::to_string).collect();
        format!("({}; {})", t.join(", "), s.join(", "))
    }
}

/// `v ↦ v(Q)`: the face of `Q` minimized by a direction inside the normal cone of `v` in `P`.
pub fn correspondence(p: &Polyhedron, q: &Polyhedron) -> Result<Vec<QVec>> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch { expected: p.dim(), got: q.dim() });
    }
    (0..p.vertices().len())
        .map(|v| {
            let nc = p.vertex_normal_cone(v);
            let c = nc.rays().iter().fold(vec![Rat::zero(); p.dim()], |acc, r| add(&acc, r));
            let face = q.face_at(&c).map_err(|_| Error::NotASummand(format!("Q is unbounded below at vertex {v}")))?;
            match face.vertices[..] {
                [w] if face.rays.is_empty() => Ok(q.vertex(w).clone()),
                _ => Err(Error::NotASummand(format!("the normal cone of vertex {v} does not pick a vertex of Q"))),
            }
        })
        .collect()
}

/// `κ(Q)` for a positioned summand `Q` of `P` with vertex correspondence `v ↦ v(Q)`.
pub fn kodaira_spencer(p: &Polyhedron, q: &Polyhedron, correspondence: &[QVec]) -> Result<KSVector> {
    if correspondence.len() != p.vertices().len() {
        return Err(Error::DimensionMismatch { expected: p.vertices().len(), got: correspondence.len() });
    }
    if let Some(w) = correspondence.iter().find(|w| q.vertex_index(w).is_none()) {
        return Err(Error::NotASummand(format!("{} is not a vertex of Q", fmt_vec(w))));
    }
    let mut t = Vec::with_capacity(p.compact_edges().len());
    for (k, e) in p.compact_edges().iter().enumerate() {
        let dp = p.edge_vector(k);
        let dq = sub(&correspondence[e.j], &correspondence[e.i]);
        let pivot = dp.iter().position(|x| !x.is_zero()).expect("edges have positive length");
        let factor = &dq[pivot] / &dp[pivot];
        if factor.is_negative() || scale(&factor, &dp) != dq {
            return Err(Error::NotASummand(format!("edge {k} is not dilated by a nonnegative factor")));
        }
        t.push(factor);
    }
    let s = correspondence.iter().map(|w| u8::from(!is_integral_vec(w))).collect();
    Ok(KSVector { t, s })
}

/// `κ(Q)` with the correspondence read off from the normal fan of `P`.
pub fn kodaira_spencer_of(p: &Polyhedron, q: &Polyhedron) -> Result<KSVector> {
    kodaira_spencer(p, q, &correspondence(p, q)?)
}

/// Verdicts on a Minkowski decomposition `P = P₀ + … + P_m`.
#[derive(Debug, Clone)]
pub struct DecompositionReport {
    pub summands: Vec<Polyhedron>,
    /// `correspondences[i][v] = v(P_i)`.
    pub correspondences: Vec<Vec<QVec>>,
    /// The summands whose face at vertex `v` misses the lattice.
    pub exceptions: Vec<Vec<usize>>,
    /// The exception index `μ` at each vertex, if there is exactly one.
    pub mu: Vec<Option<usize>>,
    pub lattice_friendly: bool,
    pub kappa: Vec<KSVector>,
    pub additive: bool,
    pub kappa_in_t: Vec<bool>,
    pub kappa_in_t_z: Vec<bool>,
    /// Additivity together with `κ(P_i) ∈ T_ℤ(P)` for all `i`.
    pub kappa_verdict: bool,
}

impl DecompositionReport {
    /// Whether the direct check and the κ criterion agree.
    pub fn verdicts_agree(&self) -> bool {
        self.lattice_friendly == self.kappa_verdict
    }

    pub fn to_json(&self) -> DecompositionJson {
        DecompositionJson {
            summands: self.summands.iter().map(|q| q.to_json().vertices).collect(),
            exceptions: self.exceptions.clone(),
            mu: self.mu.clone(),
            lattice_friendly: self.lattice_friendly,
            kappa: self.kappa.iter().map(KSVector::display).collect(),
            additive: self.additive,
            kappa_in_t: self.kappa_in_t.clone(),
            kappa_in_t_z: self.kappa_in_t_z.clone(),
            kappa_verdict: self.kappa_verdict,
            verdicts_agree: self.verdicts_agree(),
        }
    }
}

/// JSON form of a [`DecompositionReport`].
#[derive(Debug, Clone, Serialize)]
pub struct DecompositionJson {
    pub summands: Vec<Vec<Vec<String>>>,
    pub exceptions: Vec<Vec<usize>>,
    pub mu: Vec<Option<usize>>,
    pub lattice_friendly: bool,
    pub kappa: Vec<String>,
    pub additive: bool,
    pub kappa_in_t: Vec<bool>,
    pub kappa_in_t_z: Vec<bool>,
    pub kappa_verdict: bool,
    pub verdicts_agree: bool,
}

/// Checks a decomposition both directly (at most one non-lattice face per vertex) and through `κ`.
pub fn is_lattice_friendly(p: &Polyhedron, summands: &[Polyhedron]) -> Result<DecompositionReport> {
    let mut total = summands.first().ok_or(Error::SumMismatch)?.clone();
    for q in &summands[1..] {
        total = total.minkowski_sum(q)?;
    }
    if total.vertices() != p.vertices() || total.tail_rays() != p.tail_rays() {
        return Err(Error::SumMismatch);
    }
    let space = EtaSpace::new(p)?;
    let correspondences: Vec<Vec<QVec>> = summands.iter().map(|q| correspondence(p, q)).collect::<Result<_>>()?;
    let exceptions: Vec<Vec<usize>> = (0..p.vertices().len())
        .map(|v| (0..summands.len()).filter(|&i| !is_integral_vec(&correspondences[i][v])).collect())
        .collect();
    let mu = exceptions.iter().map(|e| if e.len() == 1 { Some(e[0]) } else { None }).collect();
    let lattice_friendly = exceptions.iter().all(|e| e.len() <= 1);
    let kappa: Vec<KSVector> =
        summands.iter().zip(&correspondences).map(|(q, c)| kodaira_spencer(p, q, c)).collect::<Result<_>>()?;
    let n = space.tspace().ambient();
    let sum = kappa.iter().fold(vec![Rat::zero(); n], |acc, k| add(&acc, &k.raw()));
    let additive = sum == space.tspace().oneone;
    let kappa_in_t: Vec<bool> = kappa.iter().map(|k| space.tspace().contains(&k.raw())).collect();
    let kappa_in_t_z: Vec<bool> =
        kappa.iter().zip(&kappa_in_t).map(|(k, &in_t)| in_t && space.tlattice().contains(&k.raw())).collect();
    let kappa_verdict = additive && kappa_in_t_z.iter().all(|&b| b);
    Ok(DecompositionReport {
        summands: summands.to_vec(),
        correspondences,
        exceptions,
        mu,
        lattice_friendly,
        kappa,
        additive,
        kappa_in_t,
        kappa_in_t_z,
        kappa_verdict,
    })
}

/// One decomposition `oneone = ξ₀ + … + ξ_m` with parts in `B`, and its certificates.
#[derive(Debug, Clone)]
pub struct EnumeratedDecomposition {
    pub xis: Vec<QVec>,
    pub report: DecompositionReport,
    /// `w(P_{ξᵢ}) ∉ N ⇔ (w ∉ N and s_w(ξᵢ) = 1)` for all vertices `w` and parts `i`.
    pub vertex_condition: bool,
    /// `κ(P_{ξᵢ}) = ξᵢ` for all parts.
    pub kappa_recovers: bool,
}

impl EnumeratedDecomposition {
    /// All three equivalent conditions hold (membership in `T_ℤ` holds by construction).
    pub fn certified(&self) -> bool {
        self.vertex_condition && self.report.lattice_friendly && self.kappa_recovers
    }

    pub fn is_trivial(&self) -> bool {
        self.xis.len() == 1
    }
}

/// `B = {ξ ∈ T₊(P) ∩ T_ℤ(P) : oneone - ξ ∈ T₊(P)}` and every multiset of nonzero elements of `B`
/// adding up to `oneone`, all for the normalized polyhedron.
#[derive(Debug, Clone)]
pub struct LatticeFriendlyCatalog {
    pub b: Vec<QVec>,
    pub decompositions: Vec<EnumeratedDecomposition>,
}

impl LatticeFriendlyCatalog {
    pub fn nontrivial(&self) -> impl Iterator<Item = &EnumeratedDecomposition> {
        self.decompositions.iter().filter(|d| !d.is_trivial())
    }
}

/// The set `B`, sorted lexicographically.
pub fn lattice_friendly_set(space: &EtaSpace) -> Result<Vec<QVec>> {
    let t = space.tspace();
    let n = t.ambient();
    let mut hrep: Vec<(QVec, Rat)> = (0..n).map(|k| (unit(n, k), Rat::zero())).collect();
    hrep.extend((0..n).map(|k| (unit(n, k).iter().map(|x| -x).collect(), -t.oneone[k].clone())));
    enumerate_lattice_points(&hrep, &space.tlattice().lattice)
}

fn partitions(parts: &[QVec], start: usize, rest: &QVec, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if rest.iter().all(Zero::is_zero) {
        out.push(current.clone());
        return;
    }
    for i in start..parts.len() {
        let next = sub(rest, &parts[i]);
        if next.iter().all(|x| !x.is_negative()) {
            current.push(i);
            partitions(parts, i, &next, current, out);
            current.pop();
        }
    }
}

/// Enumerates `B` and all decompositions of `oneone` inside it, certifying each one.
pub fn enumerate_lattice_friendly(p: &Polyhedron) -> Result<LatticeFriendlyCatalog> {
    let space = EtaSpace::new(p)?;
    let b = lattice_friendly_set(&space)?;
    let parts: Vec<QVec> = b.iter().filter(|x| x.iter().any(|v| !v.is_zero())).cloned().collect();
    let mut index_sets = Vec::new();
    partitions(&parts, 0, &space.tspace().oneone, &mut Vec::new(), &mut index_sets);
    let q = space.polyhedron();
    let r = space.tspace().r;
    let mut decompositions = Vec::with_capacity(index_sets.len());
    for set in index_sets {
        let xis: Vec<QVec> =
            if set.is_empty() { vec![space.tspace().oneone.clone()] } else { set.iter().map(|&i| parts[i].clone()).collect() };
        let results = xis.iter().map(|x| psi_summand(&space, &Xi::new(&space, x.clone())?, true)).collect::<Result<Vec<_>>>()?;
        let summands: Vec<Polyhedron> = results.iter().map(|s| s.polyhedron.clone()).collect();
        let report = is_lattice_friendly(q, &summands)?;
        let vertex_condition = (0..q.vertices().len()).all(|w| {
            results.iter().zip(&xis).all(|(res, xi)| {
                let off = !is_integral_vec(&res.vertex_images[w]);
                off == (!q.is_lattice_vertex(w) && xi[r + w].is_one())
            })
        });
        let kappa_recovers = report.kappa.iter().zip(&xis).all(|(k, xi)| &k.raw() == xi);
        decompositions.push(EnumeratedDecomposition { xis, report, vertex_condition, kappa_recovers });
    }
    Ok(LatticeFriendlyCatalog { b, decompositions })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::rat::{int, qvec, rat};

    fn segment(a: Rat, b: Rat) -> Polyhedron {
        Polyhedron::polytope(1, &[vec![a], vec![b]]).unwrap()
    }

    fn raw(xs: &[(i64, i64)]) -> QVec {
        xs.iter().map(|&(n, d)| rat(n, d)).collect()
    }

    #[test]
    fn kappa_is_not_additive() {
        let p = segment(rat(1, 2), rat(3, 4));
        let q0 = segment(rat(0, 1), rat(1, 4));
        let q1 = segment(rat(1, 2), rat(1, 2));
        assert_eq!(kodaira_spencer_of(&p, &p).unwrap().display(), "(1; 1, 1)");
        assert_eq!(kodaira_spencer_of(&p, &q0).unwrap().display(), "(1; 0, 1)");
        assert_eq!(kodaira_spencer_of(&p, &q1).unwrap().display(), "(0; 1, 1)");
        let rep = is_lattice_friendly(&p, &[q0, q1]).unwrap();
        assert!(!rep.lattice_friendly);
        assert!(!rep.additive);
        assert_eq!(rep.kappa_in_t, vec![false, false]);
        assert!(rep.verdicts_agree());
    }

    #[test]
    fn pinkham_halves_are_friendly() {
        let p = segment(rat(-1, 2), rat(1, 2));
        let rep = is_lattice_friendly(&p, &[segment(rat(-1, 2), rat(0, 1)), segment(rat(0, 1), rat(1, 2))]).unwrap();
        assert!(rep.lattice_friendly && rep.kappa_verdict);
        assert_eq!(rep.mu, vec![Some(0), Some(1)]);
    }

    #[test]
    fn point_summand() {
        let p = segment(rat(-1, 2), rat(1, 2));
        let rep = is_lattice_friendly(&p, &[p.clone(), segment(rat(0, 1), rat(0, 1))]).unwrap();
        assert!(rep.lattice_friendly && rep.kappa_verdict);
        assert_eq!(rep.kappa[1].raw(), qvec(&[0, 0, 0]));
    }

    #[test]
    fn wrong_sum_is_rejected() {
        let p = segment(rat(-1, 2), rat(1, 2));
        let err = is_lattice_friendly(&p, &[segment(rat(0, 1), rat(1, 2))]).unwrap_err();
        assert_eq!(err, Error::SumMismatch);
    }

    #[test]
    fn negative_s_decomposition_is_not_friendly() {
        let p = segment(rat(-1, 3), rat(1, 4));
        let rep = is_lattice_friendly(&p, &[segment(rat(-1, 3), rat(-1, 4)), segment(rat(0, 1), rat(1, 2))]).unwrap();
        assert!(!rep.lattice_friendly);
        assert!(rep.verdicts_agree());
    }

    #[test]
    fn dilation_must_be_nonnegative() {
        let p = segment(rat(0, 1), rat(1, 1));
        let q = segment(rat(0, 1), rat(1, 1));
        let err = kodaira_spencer(&p, &q, &[qvec(&[1]), qvec(&[0])]).unwrap_err();
        assert!(matches!(err, Error::NotASummand(_)));
    }

    #[test]
    fn pinkham_catalog() {
        let cat = enumerate_lattice_friendly(&segment(rat(-1, 2), rat(1, 2))).unwrap();
        assert_eq!(cat.b.len(), 6);
        let mut found: Vec<Vec<QVec>> = cat.nontrivial().map(|d| d.xis.clone()).collect();
        found.sort();
        let mut expected = vec![
            vec![raw(&[(1, 2), (0, 1), (1, 1)]), raw(&[(1, 2), (1, 1), (0, 1)])],
            vec![raw(&[(0, 1), (1, 1), (1, 1)]), raw(&[(1, 1), (0, 1), (0, 1)])],
        ];
        for e in &mut expected {
            e.sort();
        }
        expected.sort();
        for f in &mut found {
            f.sort();
        }
        found.sort();
        assert_eq!(found, expected);
        assert!(cat.decompositions.iter().all(EnumeratedDecomposition::certified));
    }

    #[test]
    fn lattice_segment_catalog() {
        let cat = enumerate_lattice_friendly(&segment(rat(0, 1), rat(2, 1))).unwrap();
        let sums: Vec<Vec<Vec<QVec>>> =
            cat.decompositions.iter().map(|d| d.report.summands.iter().map(|q| q.vertices().to_vec()).collect()).collect();
        assert_eq!(sums.len(), 2);
        assert!(sums.contains(&vec![vec![qvec(&[0]), qvec(&[2])]]));
        assert!(sums.contains(&vec![vec![qvec(&[0]), qvec(&[1])], vec![qvec(&[0]), qvec(&[1])]]));
    }

    #[test]
    fn point_catalog_is_trivial() {
        let cat = enumerate_lattice_friendly(&segment(rat(1, 3), rat(1, 3))).unwrap();
        assert!(cat.nontrivial().next().is_none());
        let lattice_point = enumerate_lattice_friendly(&segment(int(2), int(2))).unwrap();
        assert_eq!(lattice_point.decompositions.len(), 1);
        assert!(lattice_point.decompositions[0].certified());
    }
}
