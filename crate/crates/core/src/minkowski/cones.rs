//! The summand cone, the tautological cone over `T₊(P)` and Cayley cones.

use num_traits::{One, Zero};

use super::summand::{psi_matrix, psi_summand, Xi};
use crate::error::{Error, Result};
use crate::etaspace::{EtaSpace, PerpKind};
use crate::exactcore::rat::{dot, unit, QVec, Rat};
use crate::extension::RelationOracle;
use crate::polyhedron::{Cone, Halfspace, Polyhedron};
use crate::semigroup::{AffineSemigroup, ExtensionDiagram, SemigroupPair};

/// `C(P) ⊆ ℝ^r`: nonnegative edge dilation factors satisfying the closing conditions.
///
/// Its rays are the edge vectors of the indecomposable summands of `P`, up to scaling.
pub fn summand_cone(p: &Polyhedron) -> Result<Cone> {
    let space = EtaSpace::new(p)?;
    let r = space.tspace().r;
    let ineqs: Vec<QVec> = (0..r).map(|k| unit(r, k)).collect();
    let eqs: Vec<QVec> = space
        .tspace()
        .perp
        .iter()
        .filter(|(k, _)| matches!(k, PerpKind::Closing { .. }))
        .map(|(_, row)| row[..r].to_vec())
        .collect();
    Ok(Cone::from_inequalities(r, &ineqs, &eqs))
}

/// Whether two cones in the same space coincide.
pub fn same_cone(a: &Cone, b: &Cone) -> bool {
    let within = |x: &Cone, y: &Cone| {
        x.rays().iter().all(|r| y.contains(r))
            && x.lineality().iter().all(|l| y.contains(l) && y.contains(&l.iter().map(|v| -v).collect::<QVec>()))
    };
    a.ambient_dim() == b.ambient_dim() && within(a, b) && within(b, a)
}

/// `C̃₊(P) = {(ξ, w) : ξ ∈ T₊(P), w ∈ P_ξ}` in `ℝ^(r+m) ⊕ N_ℝ`, for the normalized polyhedron.
///
/// Every row `(α, β)` stands for `⟨α, ξ⟩ + ⟨β, w⟩ ≥ 0` (or `= 0` for equations).
#[derive(Debug, Clone)]
pub struct TautologicalCone {
    xi_dim: usize,
    w_dim: usize,
    ineqs: Vec<QVec>,
    eqs: Vec<QVec>,
}

impl TautologicalCone {
    pub fn new(space: &EtaSpace) -> Self {
        let p = space.polyhedron();
        let n = space.tspace().ambient();
        let d = p.dim();
        let (plus, perp) = space.tspace().t_plus_hrep();
        let pad = |row: &QVec| -> QVec { row.iter().cloned().chain(std::iter::repeat_n(Rat::zero(), d)).collect() };
        let mut ineqs: Vec<QVec> = plus.iter().map(pad).collect();
        let mut eqs: Vec<QVec> = perp.iter().map(pad).collect();
        let row_for = |h: &Halfspace| -> QVec {
            let v = (0..p.vertices().len()).find(|&v| dot(&h.a, p.vertex(v)) == h.b).expect("every facet has a vertex");
            let psi = psi_matrix(space, v);
            let mut row: QVec = (0..n).map(|k| -(0..d).map(|j| &h.a[j] * &psi[j][k]).sum::<Rat>()).collect();
            row.extend(h.a.iter().cloned());
            row
        };
        ineqs.extend(p.facets().iter().map(row_for));
        eqs.extend(p.equations().iter().map(row_for));
        TautologicalCone { xi_dim: n, w_dim: d, ineqs, eqs }
    }

    pub fn xi_dim(&self) -> usize {
        self.xi_dim
    }

    pub fn w_dim(&self) -> usize {
        self.w_dim
    }

    pub fn inequalities(&self) -> &[QVec] {
        &self.ineqs
    }

    pub fn equations(&self) -> &[QVec] {
        &self.eqs
    }

    pub fn cone(&self) -> Cone {
        Cone::from_inequalities(self.xi_dim + self.w_dim, &self.ineqs, &self.eqs)
    }

    /// The fiber `{w : (ξ, w) ∈ C̃₊(P)}`; [`Error::Empty`] when `ξ ∉ T₊(P)`.
    pub fn fiber(&self, xi: &[Rat]) -> Result<Polyhedron> {
        let n = self.xi_dim;
        let split = |row: &QVec| -> Halfspace { Halfspace { a: row[n..].to_vec(), b: -dot(&row[..n], xi) } };
        let mut facets = Vec::new();
        for row in &self.ineqs {
            let h = split(row);
            if h.a.iter().all(Zero::is_zero) {
                if h.b > Rat::zero() {
                    return Err(Error::Empty);
                }
            } else {
                facets.push(h);
            }
        }
        let mut equations = Vec::new();
        for row in &self.eqs {
            let h = split(row);
            if h.a.iter().all(Zero::is_zero) {
                if !h.b.is_zero() {
                    return Err(Error::Empty);
                }
            } else {
                equations.push(h);
            }
        }
        Polyhedron::from_hrep(self.w_dim, &facets, &equations)
    }
}

/// `cone(P₀ × e₀ ∪ … ∪ P_m × e_m) + tail × 0` in `N_ℝ ⊕ ℝ^(m+1)`.
pub fn cayley_cone(summands: &[Polyhedron]) -> Result<Cone> {
    let first = summands.first().ok_or_else(|| Error::Invariant("no summands".into()))?;
    let d = first.dim();
    let k = summands.len();
    let mut gens = Vec::new();
    for (i, q) in summands.iter().enumerate() {
        if q.dim() != d {
            return Err(Error::DimensionMismatch { expected: d, got: q.dim() });
        }
        if q.tail_rays() != first.tail_rays() {
            return Err(Error::TailMismatch);
        }
        for v in q.vertices() {
            let mut g = v.clone();
            g.extend((0..k).map(|j| if j == i { Rat::one() } else { Rat::zero() }));
            gens.push(g);
        }
    }
    for r in first.tail_rays() {
        let mut g = r.clone();
        g.extend(std::iter::repeat_n(Rat::zero(), k));
        gens.push(g);
    }
    Ok(Cone::from_generators(d + k, &gens, &[]))
}

/// Pulls the tautological cone back along `λ ↦ Σ λᵢ ξᵢ` (with `λ ≥ 0`) and compares the result
/// with the Cayley cone of the summands `P_{ξᵢ}`, both in `N_ℝ ⊕ ℝ^k`.
pub fn check_fiber_product(space: &EtaSpace, xis: &[Xi]) -> Result<bool> {
    let summands: Vec<Polyhedron> =
        xis.iter().map(|x| psi_summand(space, x, true).map(|r| r.polyhedron)).collect::<Result<_>>()?;
    let cayley = cayley_cone(&summands)?;
    let taut = TautologicalCone::new(space);
    let n = taut.xi_dim();
    let k = xis.len();
    let pull = |row: &QVec| -> QVec {
        let mut out = row[n..].to_vec();
        out.extend(xis.iter().map(|x| dot(&row[..n], x.raw())));
        out
    };
    let d = taut.w_dim();
    let mut ineqs: Vec<QVec> = taut.inequalities().iter().map(pull).collect();
    ineqs.extend((0..k).map(|i| unit(d + k, d + i)));
    let eqs: Vec<QVec> = taut.equations().iter().map(pull).collect();
    let pulled = Cone::from_inequalities(d + k, &ineqs, &eqs);
    Ok(same_cone(&pulled, &cayley))
}

/// The extension diagram `(ℕ^(m+1), σ̃∨ ∩ M̃) → (ℕ·[0,1], σ∨ ∩ M)` of a decomposition
/// `P = P₀ + … + P_m`, with `π(c, u) = (c, Σ uᵢ)`.
///
/// The summands are positioned relative to the normalized polyhedron of `oracle`.
pub fn cayley_diagram(oracle: &RelationOracle, summands: &[Polyhedron]) -> Result<ExtensionDiagram> {
    let p = oracle.space().polyhedron();
    let mut total = summands.first().ok_or(Error::SumMismatch)?.clone();
    for q in &summands[1..] {
        total = total.minkowski_sum(q)?;
    }
    if total.vertices() != p.vertices() || total.tail_rays() != p.tail_rays() {
        return Err(Error::SumMismatch);
    }
    let d = p.dim();
    let k = summands.len();
    let dual = cayley_cone(summands)?.dual();
    let s = AffineSemigroup::saturated(&dual)?;
    let t_gens: Vec<Vec<i64>> = (0..k).map(|i| (0..d + k).map(|j| i64::from(j == d + i)).collect()).collect();
    let upper = SemigroupPair::new(AffineSemigroup::new(d + k, &t_gens)?, s)?;
    let mut pi: Vec<Vec<i64>> = (0..d).map(|r| (0..d + k).map(|c| i64::from(r == c)).collect()).collect();
    pi.push((0..d + k).map(|c| i64::from(c >= d)).collect());
    ExtensionDiagram::new(upper, oracle.lower_pair()?, pi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::rat::{qvec, rat};

    fn segment(a: Rat, b: Rat) -> Polyhedron {
        Polyhedron::polytope(1, &[vec![a], vec![b]]).unwrap()
    }

    fn hexagon() -> Polyhedron {
        let pts: Vec<QVec> = [[0, 0], [1, 0], [2, 1], [2, 2], [1, 2], [0, 1]].iter().map(|p| qvec(p)).collect();
        Polyhedron::polytope(2, &pts).unwrap()
    }

    #[test]
    fn summand_cones() {
        let c = summand_cone(&hexagon()).unwrap();
        assert_eq!((c.dimension(), c.rays().len()), (4, 5));
        let c = summand_cone(&segment(rat(0, 1), rat(3, 1))).unwrap();
        assert_eq!((c.dimension(), c.rays().len()), (1, 1));
        let square = Polyhedron::polytope(2, &[qvec(&[0, 0]), qvec(&[1, 0]), qvec(&[0, 1]), qvec(&[1, 1])]).unwrap();
        let c = summand_cone(&square).unwrap();
        assert_eq!((c.dimension(), c.rays().len()), (2, 2));
    }

    #[test]
    fn tautological_fibers() {
        let space = EtaSpace::new(&segment(rat(-1, 2), rat(1, 2))).unwrap();
        let taut = TautologicalCone::new(&space);
        let half = taut.fiber(&[rat(1, 2), rat(1, 1), rat(0, 1)]).unwrap();
        assert_eq!(half.vertices(), &[vec![rat(-1, 2)], vec![rat(0, 1)]]);
        let whole = taut.fiber(&space.tspace().oneone).unwrap();
        assert_eq!(whole.vertices(), space.polyhedron().vertices());
        let zero = taut.fiber(&[rat(0, 1), rat(0, 1), rat(0, 1)]).unwrap();
        assert_eq!(zero.vertices(), &[vec![rat(0, 1)]]);
        assert_eq!(taut.fiber(&[rat(-1, 1), rat(0, 1), rat(0, 1)]).unwrap_err(), Error::Empty);
    }

    #[test]
    fn single_summand_cayley_is_cone_over() {
        let p = hexagon();
        assert!(same_cone(&cayley_cone(std::slice::from_ref(&p)).unwrap(), &p.cone_over()));
    }

    #[test]
    fn cayley_rejects_different_tails() {
        let a = Polyhedron::from_vrep(1, &[qvec(&[0])], &[qvec(&[1])]).unwrap();
        let b = segment(rat(0, 1), rat(1, 1));
        assert_eq!(cayley_cone(&[a, b]).unwrap_err(), Error::TailMismatch);
    }

    #[test]
    fn artin_cayley_hilbert_basis() {
        let oracle = RelationOracle::new(&segment(rat(-1, 2), rat(1, 2))).unwrap();
        let d = cayley_diagram(&oracle, &[segment(rat(-1, 2), rat(0, 1)), segment(rat(0, 1), rat(1, 2))]).unwrap();
        let expected: Vec<Vec<i64>> =
            vec![vec![-2, 0, 1], vec![-1, 0, 1], vec![0, 0, 1], vec![0, 1, 0], vec![1, 1, 0], vec![2, 1, 0]];
        assert_eq!(d.upper().s().generators(), &expected[..]);
    }

    #[test]
    fn fiber_product_on_pinkham() {
        let space = EtaSpace::new(&segment(rat(-1, 2), rat(1, 2))).unwrap();
        for pair in [[[1, 2, 0], [1, 0, 2]], [[0, 2, 2], [2, 0, 0]]] {
            let xis: Vec<Xi> =
                pair.iter().map(|x| Xi::new(&space, qvec(x).iter().map(|v| v / rat(2, 1)).collect()).unwrap()).collect();
            assert!(check_fiber_product(&space, &xis).unwrap());
        }
    }
}
