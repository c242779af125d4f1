//! Extensions of pairs `π: (T̃, S̃) → (T, S)` and the three co-Cartesian criteria.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::affine::{apply, dot_i, sub_i, AffineSemigroup};
use super::pair::{Freeness, PairJson, SemigroupPair};
use crate::error::{Error, Result};
use crate::exactcore::hnf::{hermite_normal_form, int_kernel, int_left_kernel, transpose, IMat};
use crate::exactcore::rat::{from_i64_vec, QVec};
use crate::exactcore::smith_invariants;
use crate::exactcore::IntLattice;

/// A commutative square of semigroup pairs given by one linear map `π` on the ambient lattices.
#[derive(Debug, Clone)]
pub struct ExtensionDiagram {
    upper: SemigroupPair,
    lower: SemigroupPair,
    pi: Vec<Vec<i64>>,
}

/// JSON form `{"upper": pair, "lower": pair, "pi": [[…], …]}` with `pi` of size
/// `lower rank × upper rank`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramJson {
    pub upper: PairJson,
    pub lower: PairJson,
    pub pi: Vec<Vec<i64>>,
}

/// Result of one criterion: pass, or fail with a human-readable witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Condition {
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Condition {
    fn pass() -> Self {
        Condition { pass: true, witness: None }
    }

    fn fail(w: String) -> Self {
        Condition { pass: false, witness: Some(w) }
    }
}

/// Outcome of [`ExtensionDiagram::check_cocartesian`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CocartesianReport {
    pub c1: Condition,
    pub c2: Condition,
    pub c3: Condition,
}

impl CocartesianReport {
    pub fn all_pass(&self) -> bool {
        self.c1.pass && self.c2.pass && self.c3.pass
    }

    /// `C1 ⇒ C2 ⇒ C3`, and `C3 ⇒ C1` when `π` is onto on both `S̃` and `T̃`.
    pub fn implications_hold(&self, pi_surjective: bool) -> bool {
        (!self.c1.pass || self.c2.pass) && (!self.c2.pass || self.c3.pass) && (!pi_surjective || !self.c3.pass || self.c1.pass)
    }
}

fn to_imat(rows: &[QVec]) -> IMat {
    rows.iter().map(|r| r.iter().map(|x| x.to_integer()).collect()).collect()
}

fn lattice_of(rank: usize, gens: &[Vec<i64>]) -> IntLattice {
    let q: Vec<QVec> = gens.iter().map(|g| from_i64_vec(g)).collect();
    IntLattice::from_generators(rank, &q)
}

fn big_to_i64(v: &[BigInt]) -> Result<Vec<i64>> {
    v.iter().map(|x| x.to_i64().ok_or(Error::Overflow)).collect()
}

impl ExtensionDiagram {
    /// Checks dimensions, commutativity on generators and that `π` has trivial kernel on `S̃`.
    ///
    /// Since `S` is pointed, `π(s̃) = 0` for a nonzero `s̃ ∈ S̃` forces some generator to map to
    /// zero, so the kernel condition is decided on generators.
    pub fn new(upper: SemigroupPair, lower: SemigroupPair, pi: Vec<Vec<i64>>) -> Result<Self> {
        if pi.len() != lower.rank() {
            return Err(Error::DimensionMismatch { expected: lower.rank(), got: pi.len() });
        }
        if let Some(r) = pi.iter().find(|r| r.len() != upper.rank()) {
            return Err(Error::DimensionMismatch { expected: upper.rank(), got: r.len() });
        }
        for g in upper.t().generators() {
            if !lower.t().contains(&apply(&pi, g)) {
                return Err(Error::Invariant(format!("π maps generator {g:?} of T̃ outside T")));
            }
        }
        for g in upper.s().generators() {
            let img = apply(&pi, g);
            if !lower.s().contains(&img) {
                return Err(Error::Invariant(format!("π maps generator {g:?} of S̃ outside S")));
            }
            if img.iter().all(|&x| x == 0) {
                return Err(Error::Invariant(format!("π kills the generator {g:?}")));
            }
        }
        Ok(ExtensionDiagram { upper, lower, pi })
    }

    pub fn from_json(j: &DiagramJson) -> Result<Self> {
        Self::new(SemigroupPair::from_json(&j.upper)?, SemigroupPair::from_json(&j.lower)?, j.pi.clone())
    }

    pub fn to_json(&self) -> DiagramJson {
        DiagramJson { upper: self.upper.to_json(), lower: self.lower.to_json(), pi: self.pi.clone() }
    }

    /// The trivial extension of a pair by itself.
    pub fn identity(pair: &SemigroupPair) -> Self {
        let n = pair.rank();
        let pi = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        ExtensionDiagram { upper: pair.clone(), lower: pair.clone(), pi }
    }

    pub fn upper(&self) -> &SemigroupPair {
        &self.upper
    }

    pub fn lower(&self) -> &SemigroupPair {
        &self.lower
    }

    pub fn pi(&self) -> &[Vec<i64>] {
        &self.pi
    }

    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        apply(&self.pi, x)
    }

    /// The grading of `S` pulled back along `π`, positive on `S̃ ∖ {0}`.
    fn pulled_grading(&self) -> Vec<i64> {
        let w = self.lower.s().grading();
        (0..self.upper.rank()).map(|j| self.pi.iter().zip(w).map(|(row, wi)| row[j] * wi).sum()).collect()
    }

    /// Whether every generator of `target` is the image of an element of `source`.
    fn lifts_generators(&self, source: &AffineSemigroup, target: &AffineSemigroup) -> bool {
        let w = self.pulled_grading();
        let wl = self.lower.s().grading();
        target.generators().iter().all(|g| {
            source
                .elements_with_weight_at_most(&w, dot_i(wl, g))
                .map(|els| els.iter().any(|x| &self.apply(x) == g))
                .unwrap_or(false)
        })
    }

    /// Whether `π_S: S̃ → S` is onto.
    pub fn pi_s_surjective(&self) -> bool {
        self.lifts_generators(self.upper.s(), self.lower.s())
    }

    /// Whether `π_T: T̃ → T` is onto.
    pub fn pi_t_surjective(&self) -> bool {
        self.lifts_generators(self.upper.t(), self.lower.t())
    }

    /// C1: `π` restricts to a bijection of relative boundaries.
    ///
    /// Upper boundary elements are enumerated up to the largest weight of a lower boundary
    /// element of degree at most `bound`, which covers every candidate preimage.
    fn check_c1(&self, bound: u32) -> Condition {
        let lower_b = self.lower.relative_boundary(bound);
        let w = self.lower.s().grading();
        let max = lower_b.iter().map(|b| dot_i(w, b)).max().unwrap_or(0);
        let pw = self.pulled_grading();
        let upper_els = match self.upper.s().elements_with_weight_at_most(&pw, max) {
            Ok(e) => e,
            Err(e) => return Condition::fail(e.to_string()),
        };
        let mut images: BTreeMap<Vec<i64>, Vec<i64>> = BTreeMap::new();
        for x in upper_els.iter().filter(|x| self.upper.is_boundary(x)) {
            let y = self.apply(x);
            if !self.lower.is_boundary(&y) {
                return Condition::fail(format!("boundary element {x:?} maps to non-boundary {y:?}"));
            }
            if let Some(prev) = images.insert(y.clone(), x.clone()) {
                return Condition::fail(format!("boundary elements {prev:?} and {x:?} both map to {y:?}"));
            }
        }
        for b in &lower_b {
            if !images.contains_key(b) {
                return Condition::fail(format!("boundary element {b:?} has no boundary preimage"));
            }
        }
        Condition::pass()
    }

    /// C2: the upper pair is free and `π` induces an isomorphism `Q̃ → Q`.
    fn check_c2(&self, bound: u32) -> Condition {
        if let Freeness::NotFree(w) = self.upper.is_free(bound) {
            return Condition::fail(format!("upper pair is not free: {:?} + {:?} = {:?} + {:?}", w.b, w.t, w.b2, w.t2));
        }
        let n = self.lower.rank();
        let m = self.upper.rank();
        // Surjectivity: π(S̃ - S̃) + (T - T) = S - S.
        let mut gens: Vec<Vec<i64>> = self.upper.s().generators().iter().map(|g| self.apply(g)).collect();
        gens.extend(self.lower.t().generators().iter().cloned());
        let image = lattice_of(n, &gens);
        if let Some(g) = self.lower.s().generators().iter().find(|g| !image.contains(&from_i64_vec(g))) {
            return Condition::fail(format!("Q̃ → Q misses the class of {g:?}"));
        }
        // Injectivity: {y ∈ S̃ - S̃ : π(y) ∈ T - T} = T̃ - T̃. Solve a·B̃·πᵀ = b·B_T over ℤ.
        let bs = to_imat(self.upper.s().group().basis());
        let bt = to_imat(self.lower.t().group().basis());
        let pi_big: IMat = self.pi.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let mut stacked: IMat =
            bs.iter().map(|row| (0..n).map(|i| row.iter().zip(&pi_big[i]).map(|(a, b)| a * b).sum()).collect()).collect();
        stacked.extend(bt.iter().map(|row| row.iter().map(|x| -x).collect::<Vec<BigInt>>()));
        let kernel = int_left_kernel(&stacked, n);
        let group_t = self.upper.t().group();
        for k in kernel {
            let y: Vec<BigInt> = (0..m).map(|j| bs.iter().zip(&k).map(|(row, c)| &row[j] * c).sum()).collect();
            let yq: QVec = y.iter().map(|v| v.clone().into()).collect();
            if !group_t.contains(&yq) {
                return Condition::fail(format!("Q̃ → Q kills the nonzero class of {y:?}"));
            }
        }
        Condition::pass()
    }

    /// C3: whenever `π(s̃₁) = π(s̃₂)` there are `t̃₁, t̃₂ ∈ T̃` with `s̃₁ - t̃₁ = s̃₂ - t̃₂ ∈ S̃`.
    fn check_c3(&self, bound: u32) -> Condition {
        let mut fibres: BTreeMap<Vec<i64>, Vec<Vec<i64>>> = BTreeMap::new();
        for (x, _) in self.upper.s().elements_up_to_degree(bound) {
            fibres.entry(self.apply(&x)).or_default().push(x);
        }
        let w = self.upper.s().grading();
        let below = |x: &Vec<i64>| -> BTreeSet<Vec<i64>> {
            let ts = self.upper.t().elements_with_weight_at_most(w, dot_i(w, x)).expect("the grading of S̃ is positive on T̃");
            ts.iter().map(|t| sub_i(x, t)).filter(|y| self.upper.s().contains(y)).collect()
        };
        for fibre in fibres.values().filter(|f| f.len() > 1) {
            let sets: Vec<BTreeSet<Vec<i64>>> = fibre.iter().map(below).collect();
            for i in 0..fibre.len() {
                for j in i + 1..fibre.len() {
                    if sets[i].is_disjoint(&sets[j]) {
                        return Condition::fail(format!(
                            "{:?} and {:?} have the same image but no common T̃-descendant",
                            fibre[i], fibre[j]
                        ));
                    }
                }
            }
        }
        Condition::pass()
    }

    /// Evaluates C1, C2 and C3 on elements up to the given degree.
    pub fn check_cocartesian(&self, bound: u32) -> CocartesianReport {
        CocartesianReport { c1: self.check_c1(bound), c2: self.check_c2(bound), c3: self.check_c3(bound) }
    }

    /// Base change along `f: T̃ → T″` over `T`.
    ///
    /// The new upper semigroup is the image of `S̃ × T″` in `(S̃ - S̃) ⊕ (T″ - T″)` modulo
    /// `{(t̃, -f(t̃))}`, realised in `ℤᵏ` by a basis of the linear forms vanishing on that
    /// relation lattice. `f` is an integer matrix on the ambient lattice of `T̃`, and
    /// `pi_t2` maps the ambient lattice of `T″` to that of `T`.
    pub fn pushout(&self, t2: &AffineSemigroup, f: &[Vec<i64>], pi_t2: &[Vec<i64>], bound: u32) -> Result<ExtensionDiagram> {
        let report = self.check_cocartesian(bound);
        if !report.all_pass() {
            let w = [&report.c1, &report.c2, &report.c3].iter().find_map(|c| c.witness.clone()).unwrap_or_default();
            return Err(Error::NotCocartesian(w));
        }
        for g in self.upper.t().generators() {
            let fg = apply(f, g);
            if !t2.contains(&fg) {
                return Err(Error::Invariant(format!("f maps {g:?} outside T″")));
            }
            if apply(pi_t2, &fg) != self.apply(g) {
                return Err(Error::Invariant(format!("f is not over T at {g:?}")));
            }
        }
        // Work in coordinates of the groups S̃ - S̃ and T″ - T″.
        let gs = self.upper.s().group();
        let gt2 = t2.group();
        let (a, b) = (gs.rank(), gt2.rank());
        let total = a + b;
        let coords = |l: &IntLattice, x: &[i64]| -> Result<Vec<i64>> {
            let c = l.coordinates(&from_i64_vec(x)).ok_or_else(|| Error::Invariant(format!("{x:?} is outside the group")))?;
            c.iter().map(|v| v.to_integer().to_i64().ok_or(Error::Overflow)).collect()
        };
        let mut relations: IMat = Vec::new();
        for t in to_imat(self.upper.t().group().basis()) {
            let ti = big_to_i64(&t)?;
            let left = coords(&gs, &ti)?;
            let right = coords(&gt2, &apply(f, &ti))?;
            relations.push(left.into_iter().chain(right.into_iter().map(|x| -x)).map(BigInt::from).collect());
        }
        if !relations.is_empty() && smith_invariants(&relations, total).iter().any(|d| !d.is_one()) {
            return Err(Error::Invariant("pushout group has torsion".into()));
        }
        // Rows are a basis of the linear forms vanishing on the relations; this lattice is
        // saturated, so the embedding is onto ℤᵏ.
        let forms = int_kernel(&relations, total);
        let k = forms.len();
        let forms_i: Vec<Vec<i64>> = forms.iter().map(|r| big_to_i64(r)).collect::<Result<_>>()?;
        let mut s_gens: Vec<Vec<i64>> = Vec::new();
        for g in self.upper.s().generators() {
            let c: Vec<i64> = coords(&gs, g)?.into_iter().chain(std::iter::repeat_n(0, b)).collect();
            s_gens.push(apply(&forms_i, &c));
        }
        let mut t_gens: Vec<Vec<i64>> = Vec::new();
        for g in t2.generators() {
            let c: Vec<i64> = std::iter::repeat_n(0, a).chain(coords(&gt2, g)?).collect();
            t_gens.push(apply(&forms_i, &c));
        }
        s_gens.extend(t_gens.iter().cloned());
        let upper = SemigroupPair::new(AffineSemigroup::new(k, &t_gens)?, AffineSemigroup::new(k, &s_gens)?)?;
        // The lower map in group coordinates, then composed with an integral right inverse R of the
        // embedding: U·Eᵀ = [I; 0] gives R = first k columns of Uᵀ.
        let basis_images: Vec<Vec<i64>> = to_imat(gs.basis())
            .iter()
            .map(|v| big_to_i64(v).map(|v| self.apply(&v)))
            .chain(to_imat(gt2.basis()).iter().map(|v| big_to_i64(v).map(|v| apply(pi_t2, &v))))
            .collect::<Result<_>>()?;
        let (_, u) = hermite_normal_form(&transpose(&forms, total), k);
        let mut pi_new = vec![vec![0i64; k]; self.lower.rank()];
        for (i, row) in pi_new.iter_mut().enumerate() {
            for (c, out) in row.iter_mut().enumerate() {
                let v: BigInt = (0..total).map(|r| BigInt::from(basis_images[r][i]) * &u[c][r]).sum();
                *out = v.to_i64().ok_or(Error::Overflow)?;
            }
        }
        ExtensionDiagram::new(upper, self.lower.clone(), pi_new)
    }
}
