//! `T(P)`, `T_ℤ(P)` and the liftings `η̃`, `η̃_ℤ` bundled for one polyhedron.

use std::collections::VecDeque;

use num_traits::{One, Zero};

use super::eta::{edge_data, EdgeData, EtaOracle};
use super::functional::Functional;
use super::tspace::{build_tlattice, build_tspace, TLattice, TSpace};
use crate::error::{Error, Result};
use crate::exactcore::matrix::QMat;
use crate::exactcore::rat::{dot, fmt_rat, frac_up, sub, unit, QVec, Rat};
use crate::polyhedron::Polyhedron;

/// Everything derived from a normalized polyhedron: `η`, edge data, `T(P)`, `T_ℤ(P)`.
#[derive(Debug, Clone)]
pub struct EtaSpace {
    oracle: EtaOracle,
    edges: Vec<EdgeData>,
    tspace: TSpace,
    tlattice: TLattice,
    adjacency: Vec<Vec<(usize, usize)>>,
}

impl EtaSpace {
    pub fn new(p: &Polyhedron) -> Result<Self> {
        let oracle = EtaOracle::new(p);
        let q = oracle.polyhedron();
        let edges = edge_data(q);
        let tspace = build_tspace(q, &edges)?;
        let tlattice = build_tlattice(q, &tspace)?;
        let mut adjacency = vec![Vec::new(); q.vertices().len()];
        for (k, e) in q.compact_edges().iter().enumerate() {
            adjacency[e.i].push((e.j, k));
            adjacency[e.j].push((e.i, k));
        }
        Ok(EtaSpace { oracle, edges, tspace, tlattice, adjacency })
    }

    pub fn oracle(&self) -> &EtaOracle {
        &self.oracle
    }

    pub fn polyhedron(&self) -> &Polyhedron {
        self.oracle.polyhedron()
    }

    pub fn edges(&self) -> &[EdgeData] {
        &self.edges
    }

    pub fn tspace(&self) -> &TSpace {
        &self.tspace
    }

    pub fn tlattice(&self) -> &TLattice {
        &self.tlattice
    }

    /// Rank of `T_ℤ(P)`, which is `dim T(P)`.
    pub fn rank(&self) -> usize {
        self.tlattice.rank()
    }

    pub fn vstar(&self) -> usize {
        self.oracle.vstar()
    }

    /// The functional represented by `raw ∈ ℝ^(r+m)`.
    pub fn functional(&self, raw: QVec) -> Functional {
        let coords = self.tlattice.basis().iter().map(|b| dot(&raw, b)).collect();
        Functional::new(coords, Some(raw))
    }

    /// The functional with the given values on the `T_ℤ(P)` basis, lifted into `T(P)`.
    pub fn functional_from_coords(&self, coords: QVec) -> Functional {
        let raw = self.raw_lift(&coords);
        Functional::new(coords, Some(raw))
    }

    /// The representative of a functional inside `T(P)` itself.
    pub fn raw_lift(&self, coords: &[Rat]) -> QVec {
        let b = self.tlattice.basis();
        let n = self.tspace.ambient();
        if b.is_empty() {
            return vec![Rat::zero(); n];
        }
        let gram = QMat::from_rows(b.len(), b.iter().map(|x| b.iter().map(|y| dot(x, y)).collect()).collect());
        let y = gram.solve(coords).expect("basis Gram matrix is invertible");
        let mut raw = vec![Rat::zero(); n];
        for (yi, bi) in y.iter().zip(b) {
            for (r, x) in raw.iter_mut().zip(bi) {
                *r += yi * x;
            }
        }
        raw
    }

    pub fn zero(&self) -> Functional {
        self.functional(vec![Rat::zero(); self.tspace.ambient()])
    }

    /// The coordinate functional `t_e`.
    pub fn t(&self, edge: usize) -> Functional {
        self.functional(unit(self.tspace.ambient(), self.tspace.t_index(edge)))
    }

    /// The coordinate functional `s_v`; zero on `T(P)` for lattice vertices.
    pub fn s(&self, vertex: usize) -> Functional {
        self.functional(unit(self.tspace.ambient(), self.tspace.s_index(vertex)))
    }

    /// `L_ij(c) = ⟨v^i - v^j, c⟩·t_ij + ⟨v^j, c⟩·s_j - ⟨v^i, c⟩·s_i` for an edge between `i` and `j`.
    pub fn l(&self, i: usize, j: usize, c: &[Rat]) -> Result<Functional> {
        let p = self.polyhedron();
        let e = p.edge_index(i, j).ok_or(Error::NotAFace)?;
        let (vi, vj) = (p.vertex(i), p.vertex(j));
        let mut raw = vec![Rat::zero(); self.tspace.ambient()];
        raw[self.tspace.t_index(e)] = dot(&sub(vi, vj), c);
        raw[self.tspace.s_index(j)] += dot(vj, c);
        raw[self.tspace.s_index(i)] -= dot(vi, c);
        Ok(self.functional(raw))
    }

    /// `π(f) = f([P])`.
    pub fn pi(&self, f: &Functional) -> Rat {
        dot(f.coords(), &self.tlattice.oneone_coords)
    }

    /// Membership in `T*_ℤ(P)`.
    pub fn dual_lattice_member(&self, f: &Functional) -> bool {
        f.is_integral()
    }

    /// A shortest path of vertices along compact edges.
    pub fn path(&self, from: usize, to: usize) -> Vec<usize> {
        let m = self.adjacency.len();
        let mut prev = vec![usize::MAX; m];
        let mut queue = VecDeque::from([from]);
        prev[from] = from;
        while let Some(u) = queue.pop_front() {
            if u == to {
                break;
            }
            for &(w, _) in &self.adjacency[u] {
                if prev[w] == usize::MAX {
                    prev[w] = u;
                    queue.push_back(w);
                }
            }
        }
        let mut path = vec![to];
        let mut cur = to;
        while cur != from {
            cur = prev[cur];
            path.push(cur);
        }
        path.reverse();
        path
    }

    /// `-⟨v^0, c⟩·s_{v^0} - Σ ⟨v^k - v^{k-1}, c⟩·t_{k-1,k}` along an explicit vertex path.
    pub fn eta_tilde_along(&self, c: &[Rat], path: &[usize]) -> Result<Functional> {
        let p = self.polyhedron();
        let n = self.tspace.ambient();
        let mut raw = vec![Rat::zero(); n];
        raw[self.tspace.s_index(path[0])] = -dot(p.vertex(path[0]), c);
        for w in path.windows(2) {
            let e = p.edge_index(w[0], w[1]).ok_or(Error::NotAFace)?;
            raw[self.tspace.t_index(e)] -= dot(&sub(p.vertex(w[1]), p.vertex(w[0])), c);
        }
        Ok(self.functional(raw))
    }

    /// `η̃(c)` computed from the reference vertex `reference` to the minimizing vertex `target`.
    pub fn eta_tilde_from_to(&self, c: &[Rat], reference: usize, target: usize) -> Result<Functional> {
        if !self.oracle.in_domain(c) {
            return Err(Error::UnboundedDirection);
        }
        self.eta_tilde_along(c, &self.path(reference, target))
    }

    /// `η̃(c)`.
    pub fn eta_tilde(&self, c: &[Rat]) -> Result<Functional> {
        let v = self.oracle.v_of(c)?;
        self.eta_tilde_from_to(c, self.vstar(), v)
    }

    /// `η̃_ℤ(c) = η̃(c) + {η(c)}·s_{v(c)}`.
    pub fn eta_tilde_z(&self, c: &[Rat]) -> Result<Functional> {
        let v = self.oracle.v_of(c)?;
        self.eta_tilde_z_at(c, v)
    }

    /// `η̃_ℤ(c)` using `vertex` (any minimizer of `c`) in place of `v(c)`.
    pub fn eta_tilde_z_at(&self, c: &[Rat], vertex: usize) -> Result<Functional> {
        let base = self.eta_tilde_from_to(c, self.vstar(), vertex)?;
        let frac = frac_up(&self.oracle.eta(c)?);
        Ok(&base + &self.s(vertex).scale(&frac))
    }

    /// `η̃_ℤ(c)` for an integer vector.
    pub fn eta_tilde_z_i64(&self, c: &[i64]) -> Result<Functional> {
        self.eta_tilde_z(&crate::exactcore::rat::qvec(c))
    }

    /// Writes a functional as a combination of `t_ij` and `s_i`, using its lift into `T(P)`
    /// unless a raw lift is stored.
    pub fn display(&self, f: &Functional) -> String {
        let raw = f.raw().cloned().unwrap_or_else(|| self.raw_lift(f.coords()));
        self.display_raw(&raw)
    }

    pub fn display_raw(&self, raw: &[Rat]) -> String {
        let p = self.polyhedron();
        let mut out = String::new();
        for (k, x) in raw.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let label = self.tspace.coord_label(p, k);
            let neg = *x < Rat::zero();
            let mag = if neg { -x.clone() } else { x.clone() };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if !mag.is_one() {
                out.push_str(&fmt_rat(&mag));
                out.push(' ');
            }
            out.push_str(&label);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::rat::{int, qvec, rat};

    fn pinkham() -> EtaSpace {
        EtaSpace::new(&Polyhedron::polytope(1, &[vec![rat(-1, 2)], vec![rat(1, 2)]]).unwrap()).unwrap()
    }

    /// Raw coordinates (t, s1, s2).
    fn f(sp: &EtaSpace, t: Rat, s1: Rat, s2: Rat) -> Functional {
        sp.functional(vec![t, s1, s2])
    }

    #[test]
    fn pinkham_liftings() {
        let sp = pinkham();
        let h = rat(1, 2);
        assert_eq!(sp.eta_tilde(&qvec(&[-2])).unwrap(), f(&sp, int(2), int(-1), int(0)));
        assert_eq!(sp.eta_tilde_z(&qvec(&[-2])).unwrap(), f(&sp, int(2), int(-1), int(0)));
        assert_eq!(sp.eta_tilde(&qvec(&[1])).unwrap(), f(&sp, int(0), h.clone(), int(0)));
        assert_eq!(sp.eta_tilde_z(&qvec(&[1])).unwrap(), f(&sp, int(0), int(1), int(0)));
        assert!(sp.eta_tilde_z(&qvec(&[0])).unwrap().is_zero());
        assert_eq!(sp.eta_tilde_z(&qvec(&[-1])).unwrap(), f(&sp, int(1), -h.clone(), h.clone()));
        assert!(sp.dual_lattice_member(&sp.eta_tilde_z(&qvec(&[-1])).unwrap()));
        assert!(!sp.dual_lattice_member(&sp.eta_tilde(&qvec(&[-1])).unwrap()));
        assert!(sp.dual_lattice_member(&sp.zero()));
    }

    #[test]
    fn pi_recovers_eta() {
        let sp = pinkham();
        for c in -4..=4 {
            let c = qvec(&[c]);
            assert_eq!(sp.pi(&sp.eta_tilde(&c).unwrap()), sp.oracle().eta(&c).unwrap());
            assert_eq!(sp.pi(&sp.eta_tilde_z(&c).unwrap()), Rat::from_integer(sp.oracle().eta_z(&c).unwrap()));
        }
    }

    #[test]
    fn l_functional() {
        let sp = pinkham();
        let l = sp.l(0, 1, &qvec(&[1])).unwrap();
        assert_eq!(l, f(&sp, int(-1), rat(1, 2), rat(1, 2)));
        assert!(sp.l(0, 1, &qvec(&[0])).unwrap().is_zero());
        assert!(sp.dual_lattice_member(&l));
    }

    #[test]
    fn lattice_vertex_s_is_zero() {
        let sp = EtaSpace::new(&Polyhedron::polytope(1, &[qvec(&[0]), qvec(&[1])]).unwrap()).unwrap();
        assert!(sp.s(0).is_zero());
        assert!(sp.s(1).is_zero());
        assert_eq!(sp.rank(), 1);
    }

    #[test]
    fn display_form() {
        let sp = pinkham();
        let g = sp.eta_tilde_z(&qvec(&[-1])).unwrap();
        assert_eq!(sp.display(&g), "t12 - 1/2 s1 + 1/2 s2");
        assert_eq!(sp.display(&sp.zero()), "0");
    }
}
