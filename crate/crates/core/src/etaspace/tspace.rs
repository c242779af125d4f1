//! The parameter space `T(P) ⊆ ℝ^(r+m)`, its positive cone and its lattice.

use num_traits::{One, Zero};

use super::eta::EdgeData;
use crate::error::{Error, Result};
use crate::exactcore::lattice::{preimage_lattice, IntLattice};
use crate::exactcore::matrix::orthogonal_complement;
use crate::exactcore::rat::{dot, unit, QVec, Rat};
use crate::polyhedron::{Cone, Polyhedron};

/// Which constraint family a generator of `T(P)^⊥` belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PerpKind {
    /// Closing condition of a compact 2-face, one per ambient coordinate.
    Closing { face: usize, coord: usize },
    /// `s_i` for a lattice vertex.
    LatticeVertex { vertex: usize },
    /// `s_i - s_j` for a lattice-disjoint edge.
    DisjointEdge { edge: usize },
    /// `t_ij - s_i` for a short half-open edge starting at `v^i`.
    ShortEdge { edge: usize, from: usize },
}

/// `T(P)`: coordinates are `t_e` for the compact edges followed by `s_v` for the vertices.
#[derive(Debug, Clone)]
pub struct TSpace {
    pub r: usize,
    pub m: usize,
    pub perp: Vec<(PerpKind, QVec)>,
    pub basis: Vec<QVec>,
    pub oneone: QVec,
}

impl TSpace {
    pub fn ambient(&self) -> usize {
        self.r + self.m
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn t_index(&self, edge: usize) -> usize {
        edge
    }

    pub fn s_index(&self, vertex: usize) -> usize {
        self.r + vertex
    }

    /// Whether `x ∈ ℝ^(r+m)` lies in `T(P)`.
    pub fn contains(&self, x: &[Rat]) -> bool {
        x.len() == self.ambient() && self.perp.iter().all(|(_, p)| dot(p, x).is_zero())
    }

    /// Whether `x` lies in `T₊(P) = T(P) ∩ ℝ_{≥0}^(r+m)`.
    pub fn contains_positive(&self, x: &[Rat]) -> bool {
        self.contains(x) && x.iter().all(|v| *v >= Rat::zero())
    }

    /// H-representation of `T₊(P)`: inequality rows `x_k ≥ 0` and equation rows.
    pub fn t_plus_hrep(&self) -> (Vec<QVec>, Vec<QVec>) {
        let n = self.ambient();
        let ineqs = (0..n).map(|k| unit(n, k)).collect();
        let eqs = self.perp.iter().map(|(_, p)| p.clone()).collect();
        (ineqs, eqs)
    }

    /// `T₊(P)` as a cone.
    pub fn t_plus(&self) -> Cone {
        let (ineqs, eqs) = self.t_plus_hrep();
        Cone::from_inequalities(self.ambient(), &ineqs, &eqs)
    }

    /// Human-readable label of a raw coordinate (1-based vertex numbers).
    pub fn coord_label(&self, p: &Polyhedron, k: usize) -> String {
        if k < self.r {
            let e = p.compact_edges()[k];
            format!("t{}{}", e.i + 1, e.j + 1)
        } else {
            format!("s{}", k - self.r + 1)
        }
    }
}

/// Builds `T(P)` from the face structure and the edge data.
pub fn build_tspace(p: &Polyhedron, edges: &[EdgeData]) -> Result<TSpace> {
    let r = p.compact_edges().len();
    let m = p.vertices().len();
    let n = r + m;
    let d = p.dim();
    let mut perp = Vec::new();
    for (fi, f) in p.compact_two_faces().iter().enumerate() {
        for k in 0..d {
            let mut row = vec![Rat::zero(); n];
            for (e, &s) in f.signs.iter().enumerate() {
                if s != 0 {
                    row[e] = Rat::from_integer(s.into()) * &p.edge_vector(e)[k];
                }
            }
            if row.iter().any(|x| !x.is_zero()) {
                perp.push((PerpKind::Closing { face: fi, coord: k }, row));
            }
        }
    }
    for v in 0..m {
        if p.is_lattice_vertex(v) {
            perp.push((PerpKind::LatticeVertex { vertex: v }, unit(n, r + v)));
        }
    }
    for (k, ed) in edges.iter().enumerate() {
        if ed.lattice_disjoint {
            let mut row = vec![Rat::zero(); n];
            row[r + ed.i] = Rat::one();
            row[r + ed.j] = -Rat::one();
            perp.push((PerpKind::DisjointEdge { edge: k }, row));
        }
        for (short, from) in [(ed.short_forward, ed.i), (ed.short_backward, ed.j)] {
            if short {
                let mut row = vec![Rat::zero(); n];
                row[k] = Rat::one();
                row[r + from] = -Rat::one();
                perp.push((PerpKind::ShortEdge { edge: k, from }, row));
            }
        }
    }
    let rows: Vec<QVec> = perp.iter().map(|(_, p)| p.clone()).collect();
    let basis = orthogonal_complement(n, &rows);
    let mut oneone = vec![Rat::one(); n];
    for v in 0..m {
        if p.is_lattice_vertex(v) {
            oneone[r + v] = Rat::zero();
        }
    }
    let t = TSpace { r, m, perp, basis, oneone };
    if !t.contains(&t.oneone) {
        return Err(Error::Invariant("the distinguished element [P] is not in T(P)".into()));
    }
    Ok(t)
}

/// `T_ℤ(P)` with its canonical basis and the coordinates of `[P]` in it.
#[derive(Debug, Clone)]
pub struct TLattice {
    pub lattice: IntLattice,
    /// Integrality constraint rows: `s_v` per vertex, then per edge and coordinate
    /// `(t_ij - s_i)v^i - (t_ij - s_j)v^j`.
    pub constraints: Vec<QVec>,
    pub oneone_coords: QVec,
}

impl TLattice {
    pub fn basis(&self) -> &[QVec] {
        self.lattice.basis()
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    /// Membership by the defining integrality conditions.
    pub fn satisfies_constraints(&self, x: &[Rat]) -> bool {
        self.constraints.iter().all(|c| dot(c, x).is_integer())
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.lattice.contains(x)
    }
}

/// Builds `T_ℤ(P) = {ξ ∈ T(P) : s ∈ ℤ^m, (t_ij - s_i)v^i - (t_ij - s_j)v^j ∈ N}`.
pub fn build_tlattice(p: &Polyhedron, t: &TSpace) -> Result<TLattice> {
    let n = t.ambient();
    let r = t.r;
    let mut constraints: Vec<QVec> = (0..t.m).map(|v| unit(n, r + v)).collect();
    for (k, e) in p.compact_edges().iter().enumerate() {
        let (vi, vj) = (p.vertex(e.i), p.vertex(e.j));
        for c in 0..p.dim() {
            let mut row = vec![Rat::zero(); n];
            row[k] = &vi[c] - &vj[c];
            row[r + e.i] = -vi[c].clone();
            row[r + e.j] = vj[c].clone();
            constraints.push(row);
        }
    }
    let lattice = preimage_lattice(n, &constraints, &t.basis)?;
    let oneone_coords = lattice
        .coordinates(&t.oneone)
        .filter(|c| c.iter().all(Rat::is_integer))
        .ok_or_else(|| Error::Invariant("[P] is not in T_Z(P)".into()))?;
    Ok(TLattice { lattice, constraints, oneone_coords })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::etaspace::eta::edge_data;
    use crate::exactcore::rat::{int, qvec, rat};

    fn build(p: &Polyhedron) -> (TSpace, TLattice) {
        let t = build_tspace(p, &edge_data(p)).unwrap();
        let l = build_tlattice(p, &t).unwrap();
        (t, l)
    }

    #[test]
    fn pinkham_space() {
        let p = Polyhedron::polytope(1, &[vec![rat(-1, 2)], vec![rat(1, 2)]]).unwrap();
        let (t, l) = build(&p);
        assert_eq!(t.dim(), 3);
        assert_eq!(l.rank(), 3);
        assert!(l.contains(&[rat(1, 2), int(1), int(0)]));
        assert!(l.contains(&[int(1), int(1), int(1)]));
        assert!(!l.contains(&[int(0), int(1), int(0)]));
        // Direct substitution: -t + (s1 + s2)/2 must be an integer and s integral.
        for x in [[rat(1, 2), int(1), int(0)], [int(0), int(1), int(0)], [rat(1, 2), int(0), int(1)]] {
            let direct = (-x[0].clone() + (&x[1] + &x[2]) / int(2)).is_integer();
            assert_eq!(l.contains(&x), direct);
        }
    }

    #[test]
    fn short_segment_is_one_dimensional() {
        let p = Polyhedron::polytope(1, &[vec![rat(1, 2)], vec![rat(3, 4)]]).unwrap();
        let (t, _) = build(&p);
        assert_eq!(t.dim(), 1);
        assert!(t.contains(&qvec(&[1, 1, 1])));
        assert!(!t.contains(&qvec(&[1, 0, 1])));
    }

    #[test]
    fn hexagon_space_is_four_dimensional() {
        let pts: Vec<QVec> = [[0, 0], [1, 0], [2, 1], [2, 2], [1, 2], [0, 1]].iter().map(|p| qvec(p)).collect();
        let p = Polyhedron::polytope(2, &pts).unwrap();
        let (t, l) = build(&p);
        assert_eq!(t.dim(), 4);
        assert_eq!(l.rank(), 4);
        assert!(t.contains_positive(&t.oneone));
    }
}
