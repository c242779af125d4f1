//! The universal extension `(T̃, S̃)` of `(ℕ, σ∨ ∩ (M ⊕ ℤ))`.

use std::collections::HashMap;

use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::relations::{DependencySet, RelationOracle};
use crate::error::{Error, Result};
use crate::etaspace::functional::FunctionalJson;
use crate::etaspace::Functional;
use crate::exactcore::rat::{int_grid, linf, to_i64, Rat};
use crate::semigroup::affine::apply;
use crate::semigroup::{AffineSemigroup, ExtensionDiagram, SemigroupPair};

/// Generators of `T̃ ⊆ T*_ℤ(P)` and `S̃ ⊆ M ⊕ T*_ℤ(P)`, realised as integer semigroups in the
/// coordinates `M ⊕ (values on the T_ℤ(P) basis)`.
#[derive(Debug, Clone)]
pub struct UpperPair {
    oracle: RelationOracle,
    deps: DependencySet,
    t_gens: Vec<Functional>,
    t_sources: Vec<Vec<u32>>,
    s_gens: Vec<(Vec<i64>, Functional)>,
    pair: SemigroupPair,
}

/// Integer coordinates of a functional in `T*_ℤ(P)`.
pub fn integral_coords(f: &Functional) -> Result<Vec<i64>> {
    if !f.is_integral() {
        return Err(Error::Invariant("functional is not in the dual lattice".into()));
    }
    f.coords().iter().map(to_i64).collect()
}

impl UpperPair {
    /// `T̃` is generated by `η̃_ℤ(m)` over the minimal dependents `m`; generators that are
    /// `ℕ`-combinations of others with smaller or equal `π`-value are dropped, scanning by
    /// `π`-value and then lexicographically.
    pub fn new(oracle: RelationOracle, deps: DependencySet) -> Result<Self> {
        if let Some(m) = &deps.incomplete {
            return Err(Error::IncompleteDependencySet(m.clone()));
        }
        let space = oracle.space();
        let mut cands: Vec<(Rat, Functional, Vec<u32>)> = Vec::new();
        for m in &deps.minimal {
            let f = oracle.multiset_relation(m)?;
            if !cands.iter().any(|(_, g, _)| *g == f) {
                cands.push((space.pi(&f), f, m.clone()));
            }
        }
        cands.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
        let mut t_gens: Vec<Functional> = Vec::new();
        let mut t_sources = Vec::new();
        for (_, f, m) in cands {
            if !in_span(space, &t_gens, &f, &mut HashMap::new()) {
                t_gens.push(f);
                t_sources.push(m);
            }
        }
        let s_gens: Vec<(Vec<i64>, Functional)> =
            oracle.directions().iter().map(|a| Ok((a.clone(), oracle.eta_tilde_z(a)?))).collect::<Result<_>>()?;
        let d = oracle.dim();
        let n = d + space.rank();
        let t_int: Vec<Vec<i64>> =
            t_gens.iter().map(|g| Ok(std::iter::repeat_n(0, d).chain(integral_coords(g)?).collect())).collect::<Result<_>>()?;
        let mut s_int = t_int.clone();
        for (a, f) in &s_gens {
            s_int.push(a.iter().cloned().chain(integral_coords(f)?).collect());
        }
        let pair = SemigroupPair::new(AffineSemigroup::new(n, &t_int)?, AffineSemigroup::new(n, &s_int)?)?;
        Ok(UpperPair { oracle, deps, t_gens, t_sources, s_gens, pair })
    }

    /// Minimal dependents with the given bounds, then [`UpperPair::new`].
    pub fn build(oracle: RelationOracle, cap: u32, verify_degree: u32) -> Result<Self> {
        let deps = oracle.minimal_dependents(cap, verify_degree)?;
        Self::new(oracle, deps)
    }

    pub fn oracle(&self) -> &RelationOracle {
        &self.oracle
    }

    pub fn dependencies(&self) -> &DependencySet {
        &self.deps
    }

    /// Generators of `T̃`, sorted by `π`-value and then by coordinates.
    pub fn t_generators(&self) -> &[Functional] {
        &self.t_gens
    }

    /// The minimal dependent multiset each generator of `T̃` came from.
    pub fn t_sources(&self) -> &[Vec<u32>] {
        &self.t_sources
    }

    /// The pairs `(aᵢ, η̃_ℤ(aᵢ))`.
    pub fn s_generators(&self) -> &[(Vec<i64>, Functional)] {
        &self.s_gens
    }

    /// `(T̃, S̃)` as integer semigroups.
    pub fn pair(&self) -> &SemigroupPair {
        &self.pair
    }

    /// `(c, f) ↦ c ⊕ coords(f)`.
    pub fn embed(&self, c: &[i64], f: &Functional) -> Result<Vec<i64>> {
        Ok(c.iter().cloned().chain(integral_coords(f)?).collect())
    }

    /// `π = id_M ⊕ π` as an integer matrix `(d + 1) × (d + rank)`.
    pub fn pi_matrix(&self) -> Result<Vec<Vec<i64>>> {
        let d = self.oracle.dim();
        let r = self.oracle.space().rank();
        let mut rows: Vec<Vec<i64>> = (0..d).map(|i| (0..d + r).map(|j| i64::from(i == j)).collect()).collect();
        let one = &self.oracle.space().tlattice().oneone_coords;
        let one = one.iter().map(to_i64).collect::<Result<Vec<i64>>>()?;
        rows.push(std::iter::repeat_n(0, d).chain(one).collect());
        Ok(rows)
    }

    /// The extension `(T̃, S̃) → (ℕ, σ∨ ∩ (M ⊕ ℤ))`.
    pub fn diagram(&self) -> Result<ExtensionDiagram> {
        ExtensionDiagram::new(self.pair.clone(), self.oracle.lower_pair()?, self.pi_matrix()?)
    }

    /// Whether `f` is an `ℕ`-combination of the generators of `T̃`.
    pub fn t_contains(&self, f: &Functional) -> bool {
        let d = self.oracle.dim();
        match integral_coords(f) {
            Ok(c) => self.pair.t().contains(&std::iter::repeat_n(0, d).chain(c).collect::<Vec<_>>()),
            Err(_) => false,
        }
    }

    /// Ranks of the groups `T̃ - T̃` and `S̃ - S̃`.
    pub fn group_ranks(&self) -> (usize, usize) {
        (self.pair.t().group().rank(), self.pair.s().group().rank())
    }

    /// The report of the extension in JSON form.
    pub fn to_json(&self, checks: serde_json::Value) -> ExtensionReport {
        let space = self.oracle.space();
        ExtensionReport {
            hilbert_basis: self.oracle.hilbert_basis().to_vec(),
            directions: self.oracle.directions().to_vec(),
            minimal_dependents: self.deps.minimal.clone(),
            t_tilde_generators: self.t_gens.iter().map(|g| g.to_json()).collect(),
            t_tilde_display: self.t_gens.iter().map(|g| space.display(g)).collect(),
            s_tilde_generators: self.s_gens.iter().map(|(c, f)| (c.clone(), f.to_json())).collect(),
            dependency_cap: self.deps.cap,
            verified_to_degree: self.deps.verify_degree,
            checks,
        }
    }
}

/// Whether `f` is an `ℕ`-combination of `gens`, all of which have positive integral `π`-value.
fn in_span(space: &crate::etaspace::EtaSpace, gens: &[Functional], f: &Functional, memo: &mut HashMap<Functional, bool>) -> bool {
    if f.is_zero() {
        return true;
    }
    if space.pi(f) <= Rat::zero() {
        return false;
    }
    if let Some(&b) = memo.get(f) {
        return b;
    }
    let found = gens.iter().any(|g| in_span(space, gens, &(f - g), memo));
    memo.insert(f.clone(), found);
    found
}

/// JSON form of the universal extension.
#[derive(Debug, Clone, Serialize)]
pub struct ExtensionReport {
    pub hilbert_basis: Vec<Vec<i64>>,
    pub directions: Vec<Vec<i64>>,
    pub minimal_dependents: Vec<Vec<u32>>,
    pub t_tilde_generators: Vec<FunctionalJson>,
    pub t_tilde_display: Vec<String>,
    pub s_tilde_generators: Vec<(Vec<i64>, FunctionalJson)>,
    pub dependency_cap: u32,
    pub verified_to_degree: u32,
    pub checks: serde_json::Value,
}

/// A pair `(c₁, c₂)` with `η̃_ℤ(c₁, c₂) = multiple · target`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationWitness {
    pub c1: Vec<i64>,
    pub c2: Vec<i64>,
    pub multiple: i64,
    /// Whether the value was confirmed to lie in `T̃`.
    pub in_t_tilde: bool,
}

/// Outcome of [`verify_upper_pair`]. Witnesses that are `None` were not found within the bound.
#[derive(Debug, Clone, Serialize)]
pub struct UpperPairReport {
    pub bound: u32,
    /// Elements `(c, η̃_ℤ(c))`, `‖c‖∞ ≤ bound`, that are not boundary elements, and boundary
    /// elements of degree at most `bound` of any other form.
    pub boundary_failures: Vec<Vec<i64>>,
    /// Nonzero enumerated elements with `π(x) = 0`.
    pub kernel_failures: Vec<Vec<i64>>,
    /// Directions `c` where `π(c, η̃_ℤ(c))` is not the boundary element `(c, η_ℤ(c))` below.
    pub bijection_failures: Vec<Vec<i64>>,
    /// Per non-lattice vertex: `s_v = η̃_ℤ(c₁, c₂)`.
    pub s_witnesses: Vec<(usize, Option<RelationWitness>)>,
    /// Per compact edge: the smallest `a` with `a·t_e = η̃_ℤ(c₁, c₂)` found.
    pub t_witnesses: Vec<(usize, Option<RelationWitness>)>,
}

impl UpperPairReport {
    /// No check failed and every witness found lies in `T̃`.
    pub fn pass(&self) -> bool {
        self.boundary_failures.is_empty()
            && self.kernel_failures.is_empty()
            && self.bijection_failures.is_empty()
            && self.s_witnesses.iter().chain(&self.t_witnesses).all(|(_, w)| w.as_ref().is_none_or(|w| w.in_t_tilde))
    }

    /// Every witness was found within the bound.
    pub fn witnesses_complete(&self) -> bool {
        self.s_witnesses.iter().chain(&self.t_witnesses).all(|(_, w)| w.is_some())
    }
}

/// Integer vectors with `‖c‖∞ ≤ bound`, sorted by norm and then lexicographically.
pub fn grid_by_norm(d: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut g = int_grid(d, bound);
    g.sort_by(|a, b| linf(a).cmp(&linf(b)).then_with(|| a.cmp(b)));
    g
}

/// `f = k·g` for a positive integer `k`.
fn positive_multiple(f: &Functional, g: &Functional) -> Option<i64> {
    let p = g.coords().iter().position(|x| !x.is_zero())?;
    let k = &f.coords()[p] / &g.coords()[p];
    if !k.is_integer() || k <= Rat::zero() || *f != g.scale(&k) {
        return None;
    }
    k.to_integer().to_i64()
}

/// Checks `∂_T̃(S̃) = {(c, η̃_ℤ(c))}`, the triviality of `ker π`, the boundary bijection with
/// the lower pair, and searches witnesses `s_v ∈ T̃` and `a·t_e ∈ T̃` among pairs with
/// `‖cᵢ‖∞ ≤ bound`.
pub fn verify_upper_pair(upper: &UpperPair, bound: u32) -> Result<UpperPairReport> {
    let oracle = upper.oracle();
    let space = oracle.space();
    let p = space.polyhedron();
    let d = oracle.dim();
    let pair = upper.pair();
    let pi = upper.pi_matrix()?;
    let lower = oracle.lower_pair()?;
    let grid: Vec<Vec<i64>> = grid_by_norm(d, bound as i64).into_iter().filter(|c| oracle.in_domain(c)).collect();

    let mut boundary_failures = Vec::new();
    let mut bijection_failures = Vec::new();
    for c in &grid {
        let x = upper.embed(c, &oracle.eta_tilde_z(c)?)?;
        if !pair.is_boundary(&x) {
            boundary_failures.push(x.clone());
        }
        let mut y = c.clone();
        y.push(to_i64(&Rat::from_integer(oracle.eta_z(c)?))?);
        let mut above = y.clone();
        above[d] += 1;
        if apply(&pi, &x) != y || !lower.is_boundary(&y) || lower.is_boundary(&above) {
            bijection_failures.push(c.clone());
        }
    }
    let mut kernel_failures = Vec::new();
    for (x, _) in pair.s().elements_up_to_degree(bound) {
        if x.iter().any(|&v| v != 0) && apply(&pi, &x).iter().all(|&v| v == 0) {
            kernel_failures.push(x.clone());
        }
        if pair.is_boundary(&x) && upper.embed(&x[..d], &oracle.eta_tilde_z(&x[..d])?)? != x {
            boundary_failures.push(x);
        }
    }

    let mut pairs: Vec<(Vec<i64>, Vec<i64>, Functional)> = Vec::new();
    for (i, c1) in grid.iter().enumerate() {
        for c2 in &grid[i..] {
            let f = oracle.eta_tilde_z_relation(&[c1.clone(), c2.clone()])?;
            if !f.is_zero() {
                pairs.push((c1.clone(), c2.clone(), f));
            }
        }
    }
    let witness = |c1: &Vec<i64>, c2: &Vec<i64>, f: &Functional, multiple: i64| RelationWitness {
        c1: c1.clone(),
        c2: c2.clone(),
        multiple,
        in_t_tilde: upper.t_contains(f),
    };
    let s_witnesses = (0..p.vertices().len())
        .filter(|&v| !p.is_lattice_vertex(v))
        .map(|v| {
            let s = space.s(v);
            (v, pairs.iter().find(|(_, _, f)| *f == s).map(|(c1, c2, f)| witness(c1, c2, f, 1)))
        })
        .collect();
    let t_witnesses = (0..p.compact_edges().len())
        .map(|e| {
            let t = space.t(e);
            let best =
                pairs.iter().filter_map(|(c1, c2, f)| positive_multiple(f, &t).map(|k| (k, c1, c2, f))).min_by_key(|(k, ..)| *k);
            (e, best.map(|(k, c1, c2, f)| witness(c1, c2, f, k)))
        })
        .collect();
    Ok(UpperPairReport { bound, boundary_failures, kernel_failures, bijection_failures, s_witnesses, t_witnesses })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::rat::{int, qvec, rat};
    use crate::polyhedron::Polyhedron;

    fn pinkham() -> UpperPair {
        let p = Polyhedron::polytope(1, &[vec![rat(-1, 2)], vec![rat(1, 2)]]).unwrap();
        UpperPair::build(RelationOracle::new(&p).unwrap(), 4, 6).unwrap()
    }

    #[test]
    fn pinkham_generators() {
        let u = pinkham();
        let sp = u.oracle().space();
        let h = rat(1, 2);
        let mut expected = vec![
            sp.functional(vec![int(0), int(1), int(0)]),
            sp.functional(vec![int(0), int(0), int(1)]),
            sp.functional(vec![int(1), h.clone(), -h.clone()]),
            sp.functional(vec![int(1), -h.clone(), h]),
        ];
        expected.sort();
        let mut got = u.t_generators().to_vec();
        got.sort();
        assert_eq!(got, expected);
        assert_eq!(u.group_ranks(), (3, 4));
        assert!(u.t_generators().iter().all(|g| sp.pi(g) == int(1)));
        for (g, m) in u.t_generators().iter().zip(u.t_sources()) {
            assert_eq!(&u.oracle().multiset_relation(m).unwrap(), g);
        }
    }

    #[test]
    fn pinkham_diagram_is_cocartesian() {
        let u = pinkham();
        let r = u.diagram().unwrap().check_cocartesian(3);
        assert!(r.all_pass(), "{r:?}");
    }

    #[test]
    fn pinkham_verification() {
        let u = pinkham();
        let r = verify_upper_pair(&u, 3).unwrap();
        assert!(r.pass(), "{r:?}");
        assert!(r.witnesses_complete());
        let s1 = r.s_witnesses.iter().find(|(v, _)| *v == 0).unwrap().1.clone().unwrap();
        assert_eq!((s1.c1, s1.c2, s1.multiple), (vec![1], vec![1], 1));
        let t = r.t_witnesses[0].1.clone().unwrap();
        assert_eq!((t.c1, t.c2, t.multiple), (vec![-2], vec![2], 2));
    }

    #[test]
    fn zero_bound_is_vacuous() {
        let r = verify_upper_pair(&pinkham(), 0).unwrap();
        assert!(r.pass());
    }

    #[test]
    fn unit_interval_gives_single_t() {
        let p = Polyhedron::polytope(1, &[qvec(&[0]), qvec(&[1])]).unwrap();
        let u = UpperPair::build(RelationOracle::new(&p).unwrap(), 4, 6).unwrap();
        let sp = u.oracle().space();
        assert_eq!(u.t_generators(), &[sp.t(0)]);
    }

    #[test]
    fn incomplete_dependencies_are_rejected() {
        let p = Polyhedron::polytope(1, &[vec![rat(-1, 2)], vec![rat(1, 2)]]).unwrap();
        let o = RelationOracle::new(&p).unwrap();
        let deps = o.minimal_dependents(1, 3).unwrap();
        assert!(matches!(UpperPair::new(o, deps), Err(Error::IncompleteDependencySet(_))));
    }
}
