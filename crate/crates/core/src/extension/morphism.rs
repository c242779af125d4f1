//! The morphism from the universal extension into another co-Cartesian extension of the same
//! base, and the parameters `ℓ_s(v)`, `ℓ_t(e)` it is made of.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};

use super::relations::{multisets, sum, RelationOracle};
use super::upper::{grid_by_norm, UpperPair};
use crate::error::{Error, Result};
use crate::etaspace::{Functional, PerpKind};
use crate::exactcore::rat::{dot, fmt_vec, frac_up, from_i64_vec, qvec, scale, QVec, Rat};
use crate::semigroup::affine::{add_i, dot_i, sub_i};
use crate::semigroup::ExtensionDiagram;

/// `ℓ_∂(c)`: the unique boundary element of the target `S` lying over `(c, η_ℤ(c))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundarySection {
    lifts: BTreeMap<Vec<i64>, Vec<i64>>,
}

impl BoundarySection {
    /// Computes `ℓ_∂` on the given directions by enumerating the target `S` up to the largest
    /// weight needed. Fails if some `(c, η_ℤ(c))` has no or several boundary preimages.
    pub fn new(oracle: &RelationOracle, target: &ExtensionDiagram, cs: &BTreeSet<Vec<i64>>) -> Result<Self> {
        let w = target.lower().s().grading();
        let n = target.upper().rank();
        let pulled: Vec<i64> = (0..n).map(|j| target.pi().iter().zip(w).map(|(row, wi)| row[j] * wi).sum()).collect();
        let mut wanted: HashMap<Vec<i64>, Vec<i64>> = HashMap::new();
        let mut max = 0;
        for c in cs {
            let mut y = c.clone();
            y.push(oracle.eta_z(c)?.to_i64().ok_or(Error::Overflow)?);
            max = max.max(dot_i(w, &y));
            wanted.insert(y, c.clone());
        }
        let mut found: BTreeMap<Vec<i64>, Vec<Vec<i64>>> = BTreeMap::new();
        for x in target.upper().s().elements_with_weight_at_most(&pulled, max)? {
            if let Some(c) = wanted.get(&target.apply(&x)) {
                if target.upper().is_boundary(&x) {
                    found.entry(c.clone()).or_default().push(x);
                }
            }
        }
        let mut lifts = BTreeMap::new();
        for c in cs {
            match found.remove(c) {
                Some(mut xs) if xs.len() == 1 => {
                    lifts.insert(c.clone(), xs.remove(0));
                }
                xs => {
                    let k = xs.map_or(0, |v| v.len());
                    return Err(Error::Invariant(format!("{k} boundary elements lie over direction {c:?}")));
                }
            }
        }
        Ok(BoundarySection { lifts })
    }

    pub fn get(&self, c: &[i64]) -> Result<&[i64]> {
        self.lifts.get(c).map(|x| x.as_slice()).ok_or_else(|| Error::Invariant(format!("boundary section not computed at {c:?}")))
    }

    /// `ℓ(c₁,…,c_ℓ) = Σ ℓ_∂(cᵢ) - ℓ_∂(Σ cᵢ)`.
    pub fn relation(&self, cs: &[Vec<i64>]) -> Result<Vec<i64>> {
        let d = cs.first().map_or(0, |c| c.len());
        let mut total: Vec<i64> = self.get(&sum(d, cs))?.iter().map(|x| -x).collect();
        for c in cs {
            total = add_i(&total, self.get(c)?);
        }
        Ok(total)
    }

    pub fn lifts(&self) -> &BTreeMap<Vec<i64>, Vec<i64>> {
        &self.lifts
    }
}

/// Outcome of one identity among the recovered parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    /// Some input was not found within the bound.
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationCheck {
    pub label: String,
    pub status: CheckStatus,
}

/// Two super-integral directions `c₁, c₂` and the factor `min{⟨e, c₁⟩, ⟨-e, c₂⟩}`.
pub type EdgeSource = (Vec<i64>, Vec<i64>, i64);

/// `ℓ_s(v)` and `ℓ_t(e)` in the target's ambient group tensored with `ℚ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecoveredParameters {
    /// Per vertex; zero for lattice vertices and for vertices without a suitable direction.
    pub ell_s: Vec<QVec>,
    /// The direction `c` and multiplier `n` used for `ℓ_s(v) = n·ℓ_∂(c) - ℓ_∂(nc)`.
    pub s_sources: Vec<Option<(Vec<i64>, i64)>>,
    /// Non-lattice vertices without a direction `c` in the grid with `{η(c)} > 0`.
    pub no_suitable_c: Vec<usize>,
    /// Per compact edge.
    pub ell_t: Vec<Option<QVec>>,
    /// The super-integral pair and the factor `min{⟨e, c₁⟩, ⟨-e, c₂⟩}` used for `ℓ_t(e)`.
    pub t_sources: Vec<Option<EdgeSource>>,
    pub checks: Vec<RelationCheck>,
}

impl RecoveredParameters {
    /// No identity failed.
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "ell_s": self.ell_s.iter().map(|v| fmt_vec(v)).collect::<Vec<_>>(),
            "no_suitable_c": self.no_suitable_c,
            "ell_t": self.ell_t.iter().map(|v| v.as_ref().map(|v| fmt_vec(v))).collect::<Vec<_>>(),
            "checks": self.checks.iter().map(|c| json!({"label": c.label, "status": format!("{:?}", c.status)})).collect::<Vec<_>>(),
        })
    }
}

fn status(found: bool, ok: bool) -> CheckStatus {
    match (found, ok) {
        (false, _) => CheckStatus::Skipped,
        (true, true) => CheckStatus::Pass,
        (true, false) => CheckStatus::Fail,
    }
}

fn ensure_same_base(oracle: &RelationOracle, target: &ExtensionDiagram) -> Result<()> {
    if target.lower() != &oracle.lower_pair()? {
        return Err(Error::TargetNotCocartesian("the target lies over a different base pair".into()));
    }
    Ok(())
}

/// Recovers `ℓ_s(v) = n·ℓ_∂(c) - ℓ_∂(nc)` and `ℓ_t(e) = ℓ(c₁, c₂) / min{⟨e, c₁⟩, ⟨-e, c₂⟩}` from
/// directions with `‖c‖∞ ≤ bound`, and checks that they satisfy the defining equations of
/// `T(P)`: consistency over all choices, `ℓ_s(vⁱ) = ℓ_s(vʲ)` on lattice-disjoint edges,
/// `ℓ_t(e) = ℓ_s(v)` on short edges and the closing conditions of compact 2-faces.
pub fn recover_parameters(oracle: &RelationOracle, target: &ExtensionDiagram, bound: u32) -> Result<RecoveredParameters> {
    ensure_same_base(oracle, target)?;
    let eta = oracle.space().oracle();
    let p = eta.polyhedron();
    let d = oracle.dim();
    let n_target = target.upper().rank();
    let grid: Vec<Vec<i64>> = grid_by_norm(d, bound as i64).into_iter().filter(|c| oracle.in_domain(c)).collect();
    let minimizers: Vec<Vec<usize>> = grid.iter().map(|c| eta.minimizers(&qvec(c))).collect::<Result<_>>()?;

    let nv = p.vertices().len();
    let mut s_cands: Vec<Vec<(Vec<i64>, i64)>> = vec![Vec::new(); nv];
    for (c, mins) in grid.iter().zip(&minimizers) {
        let frac = frac_up(&eta.eta(&qvec(c))?);
        if frac.is_zero() {
            continue;
        }
        let n = (Rat::from_integer(1.into()) / &frac).ceil().to_integer().to_i64().ok_or(Error::Overflow)?;
        for &v in mins {
            if !p.is_lattice_vertex(v) {
                s_cands[v].push((c.clone(), n));
            }
        }
    }
    let super_integral: Vec<(usize, &Vec<i64>)> =
        grid.iter().enumerate().filter(|(_, c)| eta.is_super_integral(&qvec(c))).collect();
    let edges = p.compact_edges();
    let mut t_cands: Vec<Vec<EdgeSource>> = vec![Vec::new(); edges.len()];
    for (k, e) in edges.iter().enumerate() {
        let ev = p.edge_vector(k);
        for &(a, c1) in &super_integral {
            if !minimizers[a].contains(&e.i) {
                continue;
            }
            for &(b, c2) in &super_integral {
                if !minimizers[b].contains(&e.j) {
                    continue;
                }
                let s = add_i(c1, c2);
                let ms = eta.minimizers(&qvec(&s))?;
                if !ms.contains(&e.i) && !ms.contains(&e.j) {
                    continue;
                }
                let k1 = dot(&ev, &qvec(c1));
                let k2 = -dot(&ev, &qvec(c2));
                let f = k1.min(k2);
                if f > Rat::zero() {
                    t_cands[k].push((c1.clone(), c2.clone(), f.to_integer().to_i64().ok_or(Error::Overflow)?));
                }
            }
        }
    }

    let mut needed: BTreeSet<Vec<i64>> = BTreeSet::new();
    for (c, n) in s_cands.iter().flatten() {
        needed.insert(c.clone());
        needed.insert(c.iter().map(|x| x * n).collect());
    }
    for (c1, c2, _) in t_cands.iter().flatten() {
        needed.insert(c1.clone());
        needed.insert(c2.clone());
        needed.insert(add_i(c1, c2));
    }
    let section = BoundarySection::new(oracle, target, &needed)?;

    let mut checks = Vec::new();
    let mut ell_s = vec![vec![Rat::zero(); n_target]; nv];
    let mut s_sources = vec![None; nv];
    let mut no_suitable_c = Vec::new();
    for v in 0..nv {
        if p.is_lattice_vertex(v) {
            continue;
        }
        let values: Vec<QVec> = s_cands[v]
            .iter()
            .map(|(c, n)| {
                let nc: Vec<i64> = c.iter().map(|x| x * n).collect();
                let x: Vec<i64> = section.get(c)?.iter().map(|x| x * n).collect();
                Ok(from_i64_vec(&sub_i(&x, section.get(&nc)?)))
            })
            .collect::<Result<_>>()?;
        match values.first() {
            Some(first) => {
                ell_s[v] = first.clone();
                s_sources[v] = Some(s_cands[v][0].clone());
                checks.push(RelationCheck {
                    label: format!("l_s(v{}) independent of the direction", v + 1),
                    status: status(true, values.iter().all(|x| x == first)),
                });
            }
            None => no_suitable_c.push(v),
        }
    }

    let mut ell_t = vec![None; edges.len()];
    let mut t_sources = vec![None; edges.len()];
    for (k, cands) in t_cands.iter().enumerate() {
        let values: Vec<QVec> = cands
            .iter()
            .map(|(c1, c2, f)| {
                let r = section.relation(&[c1.clone(), c2.clone()])?;
                Ok(scale(&Rat::new(1.into(), (*f).into()), &from_i64_vec(&r)))
            })
            .collect::<Result<_>>()?;
        if let Some(first) = values.first() {
            ell_t[k] = Some(first.clone());
            t_sources[k] = Some(cands[0].clone());
            checks.push(RelationCheck {
                label: format!("l_t(e{}) independent of the super-integral pair", k + 1),
                status: status(true, values.iter().all(|x| x == first)),
            });
        }
    }

    let edata = oracle.space().edges();
    for (kind, _) in &oracle.space().tspace().perp {
        match *kind {
            PerpKind::DisjointEdge { edge } => {
                let (i, j) = (edata[edge].i, edata[edge].j);
                let found = !no_suitable_c.contains(&i) && !no_suitable_c.contains(&j);
                checks.push(RelationCheck {
                    label: format!("l_s(v{}) = l_s(v{}) on lattice-disjoint edge", i + 1, j + 1),
                    status: status(found, ell_s[i] == ell_s[j]),
                });
            }
            PerpKind::ShortEdge { edge, from } => {
                let found = ell_t[edge].is_some() && !no_suitable_c.contains(&from);
                checks.push(RelationCheck {
                    label: format!("l_t(e{}) = l_s(v{}) on short edge", edge + 1, from + 1),
                    status: status(found, ell_t[edge].as_ref() == Some(&ell_s[from])),
                });
            }
            _ => {}
        }
    }
    for (fi, face) in p.compact_two_faces().iter().enumerate() {
        let used: Vec<usize> = (0..edges.len()).filter(|&e| face.signs[e] != 0).collect();
        let found = used.iter().all(|&e| ell_t[e].is_some());
        let mut ok = true;
        if found {
            for coord in 0..d {
                let mut total = vec![Rat::zero(); n_target];
                for &e in &used {
                    let w = Rat::from_integer(face.signs[e].into()) * &p.edge_vector(e)[coord];
                    for (acc, x) in total.iter_mut().zip(ell_t[e].as_ref().expect("found")) {
                        *acc += &w * x;
                    }
                }
                ok &= total.iter().all(Rat::is_zero);
            }
        }
        checks.push(RelationCheck { label: format!("closing condition on 2-face {}", fi + 1), status: status(found, ok) });
    }
    Ok(RecoveredParameters { ell_s, s_sources, no_suitable_c, ell_t, t_sources, checks })
}

/// The forced morphism `(T̃, S̃) → target` restricted to generators.
#[derive(Debug, Clone)]
pub struct MorphismData {
    pub target: ExtensionDiagram,
    pub section: BoundarySection,
    /// Image of each generator of `T̃`, in the order of [`UpperPair::t_generators`].
    pub t_images: Vec<Vec<i64>>,
    /// `ℓ_∂(aᵢ)` for each direction.
    pub direction_images: Vec<Vec<i64>>,
    /// Number of multisets whose images were compared.
    pub multisets_checked: usize,
    pub recovered: RecoveredParameters,
}

impl MorphismData {
    /// `(⟨formᵢ, ℓ(g)⟩)` with rows indexed by `forms` and columns by generators of `T̃`.
    pub fn matrix(&self, forms: &[Vec<i64>]) -> Vec<Vec<i64>> {
        forms.iter().map(|f| self.t_images.iter().map(|x| dot_i(f, x)).collect()).collect()
    }
}

/// Builds `ℓ_∂ = π_∂⁻¹ ∘ π_∂̃` on the target and extends it to `T̃` by
/// `η̃_ℤ(c₁,…,c_ℓ) ↦ Σ ℓ_∂(cᵢ) - ℓ_∂(Σ cᵢ)`.
///
/// The extension is checked to be well defined on all multisets of total degree at most
/// `bound`: multisets with equal `η̃_ℤ` must have equal images, and every image must lie in the
/// target `T`.
pub fn initial_morphism(upper: &UpperPair, target: &ExtensionDiagram, bound: u32) -> Result<MorphismData> {
    let oracle = upper.oracle();
    ensure_same_base(oracle, target)?;
    let report = target.check_cocartesian(bound);
    if !report.all_pass() {
        let w = [&report.c1, &report.c2, &report.c3].iter().find_map(|c| c.witness.clone()).unwrap_or_default();
        return Err(Error::TargetNotCocartesian(w));
    }
    let k = oracle.directions().len();
    let top = upper.t_sources().iter().map(|m| m.iter().sum::<u32>()).max().unwrap_or(0).max(bound);
    let all: Vec<Vec<u32>> = (1..=top).flat_map(|n| multisets(k, n)).collect();
    let d = oracle.dim();
    let needed: BTreeSet<Vec<i64>> =
        all.iter().map(|m| sum(d, &oracle.sequence(m))).chain(oracle.directions().iter().cloned()).collect();
    let section = BoundarySection::new(oracle, target, &needed)?;

    let n = target.upper().rank();
    let mut seen: HashMap<Functional, (Vec<u32>, Vec<i64>)> = HashMap::new();
    seen.insert(Functional::zero(oracle.space().rank()), (vec![0; k], vec![0; n]));
    let mut checked = 0;
    for m in all.iter().filter(|m| (2..=bound).contains(&m.iter().sum::<u32>())) {
        let f = oracle.multiset_relation(m)?;
        let img = section.relation(&oracle.sequence(m))?;
        if !target.upper().t().contains(&img) {
            return Err(Error::Invariant(format!("image {img:?} of multiset {m:?} is not in the target T")));
        }
        match seen.get(&f) {
            Some((m2, img2)) if *img2 != img => {
                return Err(Error::WellDefinednessFailure { m: m2.clone(), m2: m.clone() });
            }
            Some(_) => {}
            None => {
                seen.insert(f, (m.clone(), img));
            }
        }
        checked += 1;
    }
    let t_images = upper.t_sources().iter().map(|m| section.relation(&oracle.sequence(m))).collect::<Result<Vec<_>>>()?;
    let direction_images = oracle.directions().iter().map(|a| section.get(a).map(|x| x.to_vec())).collect::<Result<_>>()?;
    let recovered = recover_parameters(oracle, target, bound)?;
    Ok(MorphismData { target: target.clone(), section, t_images, direction_images, multisets_checked: checked, recovered })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::rat::rat;
    use crate::polyhedron::Polyhedron;

    fn pinkham() -> UpperPair {
        let p = Polyhedron::polytope(1, &[vec![rat(-1, 2)], vec![rat(1, 2)]]).unwrap();
        UpperPair::build(RelationOracle::new(&p).unwrap(), 4, 6).unwrap()
    }

    #[test]
    fn identity_target_fixes_generators() {
        let u = pinkham();
        let target = u.diagram().unwrap();
        let m = initial_morphism(&u, &target, 4).unwrap();
        for (g, img) in u.t_generators().iter().zip(&m.t_images) {
            assert_eq!(img, &u.embed(&[0], g).unwrap());
        }
        for ((a, f), img) in u.s_generators().iter().zip(&m.direction_images) {
            assert_eq!(img, &u.embed(a, f).unwrap());
        }
        assert!(m.multisets_checked > 0);
    }

    #[test]
    fn identity_target_recovers_s_and_t() {
        let u = pinkham();
        let target = u.diagram().unwrap();
        let r = recover_parameters(u.oracle(), &target, 3).unwrap();
        assert!(r.pass(), "{:?}", r.checks);
        let sp = u.oracle().space();
        let embed = |f: &Functional| -> QVec { std::iter::once(Rat::zero()).chain(f.coords().iter().cloned()).collect() };
        assert_eq!(r.ell_s[0], embed(&sp.s(0)));
        assert_eq!(r.ell_s[1], embed(&sp.s(1)));
        assert_eq!(r.s_sources[0], Some((vec![1], 2)));
        assert_eq!(r.ell_t[0], Some(embed(&sp.t(0))));
        assert_eq!(r.t_sources[0], Some((vec![2], vec![-2], 2)));
        assert!(r.no_suitable_c.is_empty());
    }

    #[test]
    fn rejects_target_over_other_base() {
        let u = pinkham();
        let other = crate::semigroup::samples::numerical_gap_diagram();
        assert!(matches!(initial_morphism(&u, &other, 2), Err(Error::TargetNotCocartesian(_))));
    }
}
