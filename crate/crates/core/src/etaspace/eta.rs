//! The support data `η`, `η_ℤ`, `v(c)` and per-edge lattice data.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Result;
use crate::exactcore::hnf::hermite_normal_form;
use crate::exactcore::rat::{ceil_int, dot, floor_int, frac_up, is_integral, neg, primitive_int, sub, QVec, Rat};
use crate::polyhedron::Polyhedron;

/// `η(c) = -min⟨P, c⟩` and friends, on a normalized polyhedron.
///
/// If `P` has a lattice vertex, `P` is translated so that its lexicographically smallest lattice
/// vertex sits at the origin; that vertex is the reference vertex `v★`. Otherwise `v★` is the
/// lexicographically smallest vertex.
#[derive(Debug, Clone)]
pub struct EtaOracle {
    p: Polyhedron,
    shift: QVec,
    vstar: usize,
}

impl EtaOracle {
    pub fn new(p: &Polyhedron) -> Self {
        let lattice_vertex = (0..p.vertices().len()).find(|&i| p.is_lattice_vertex(i));
        match lattice_vertex {
            Some(i) => {
                let shift = neg(p.vertex(i));
                let q = p.translate(&shift);
                let vstar = q.vertex_index(&vec![Rat::zero(); p.dim()]).expect("translated vertex");
                EtaOracle { p: q, shift, vstar }
            }
            None => EtaOracle { p: p.clone(), shift: vec![Rat::zero(); p.dim()], vstar: 0 },
        }
    }

    /// The normalized polyhedron.
    pub fn polyhedron(&self) -> &Polyhedron {
        &self.p
    }

    /// The translation applied to the input polyhedron.
    pub fn shift(&self) -> &QVec {
        &self.shift
    }

    pub fn vstar(&self) -> usize {
        self.vstar
    }

    pub fn eta(&self, c: &[Rat]) -> Result<Rat> {
        Ok(-self.p.support_min(c)?)
    }

    pub fn eta_z(&self, c: &[Rat]) -> Result<BigInt> {
        Ok(ceil_int(&self.eta(c)?))
    }

    /// `{η(c)} = ⌈η(c)⌉ - η(c)`.
    pub fn eta_frac(&self, c: &[Rat]) -> Result<Rat> {
        Ok(frac_up(&self.eta(c)?))
    }

    /// The lexicographically smallest vertex minimizing `c`.
    pub fn v_of(&self, c: &[Rat]) -> Result<usize> {
        Ok(self.p.face_at(c)?.vertices[0])
    }

    /// All vertices minimizing `c`.
    pub fn minimizers(&self, c: &[Rat]) -> Result<Vec<usize>> {
        Ok(self.p.face_at(c)?.vertices)
    }

    /// Whether `c` takes integral values on every vertex.
    pub fn is_super_integral(&self, c: &[Rat]) -> bool {
        self.p.vertices().iter().all(|v| is_integral(&dot(v, c)))
    }

    /// Whether `c` lies in `tail(P)∨`.
    pub fn in_domain(&self, c: &[Rat]) -> bool {
        self.p.is_bounded_below(c)
    }
}

/// Lattice data of a compact edge `[v^i, v^j]`, `i < j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeData {
    pub i: usize,
    pub j: usize,
    /// Minimal `g ≥ 1` such that the affine line through `g·v^i, g·v^j` meets the lattice.
    pub g: BigInt,
    /// `[v^i, v^j)` is short.
    pub short_forward: bool,
    /// `[v^j, v^i)` is short.
    pub short_backward: bool,
    /// `[v^i, v^j]` contains no lattice point.
    pub lattice_disjoint: bool,
}

/// Computes the edge data from the endpoints.
pub fn edge_data_of(i: usize, j: usize, v: &[Rat], w: &[Rat]) -> EdgeData {
    let d = v.len();
    let e = sub(w, v);
    let u = primitive_int(&e);
    // e = alpha·u with alpha the lattice length.
    let k = u.iter().position(|x| !x.is_zero()).expect("edge has distinct endpoints");
    let alpha = &e[k] / Rat::from_integer(u[k].clone());
    // Unimodular W with W·u = e_1, so W maps the line direction to the first axis.
    let col: Vec<Vec<BigInt>> = u.iter().map(|x| vec![x.clone()]).collect();
    let (_, w_mat) = hermite_normal_form(&col, 1);
    let wv: QVec = w_mat
        .iter()
        .map(|row| row.iter().zip(v).fold(Rat::zero(), |acc, (a, b)| acc + Rat::from_integer(a.clone()) * b))
        .collect();
    let g = wv[1..d].iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let gq = Rat::from_integer(g.clone());
    let a = &gq * &wv[0];
    let end = &a + &gq * &alpha;
    let forward = ceil_int(&end) - ceil_int(&a);
    let backward = floor_int(&end) - floor_int(&a);
    let limit = &g - BigInt::one();
    let lattice_disjoint = if g > BigInt::one() {
        true
    } else {
        let b = &wv[0] + &alpha;
        floor_int(&b) - ceil_int(&wv[0]) + BigInt::one() <= BigInt::zero()
    };
    EdgeData { i, j, g, short_forward: forward <= limit, short_backward: backward <= limit, lattice_disjoint }
}

/// Edge data of every compact edge, in edge order.
pub fn edge_data(p: &Polyhedron) -> Vec<EdgeData> {
    p.compact_edges().iter().map(|e| edge_data_of(e.i, e.j, p.vertex(e.i), p.vertex(e.j))).collect()
}

/// Number of lattice points on `[v, w)`, counted by brute force along the segment.
///
/// Independent of [`edge_data_of`]; used to cross-check it.
pub fn count_lattice_points_half_open(v: &[Rat], w: &[Rat], scale: &Rat) -> usize {
    let a: QVec = v.iter().map(|x| x * scale).collect();
    let b: QVec = w.iter().map(|x| x * scale).collect();
    let dir = sub(&b, &a);
    // Points a + λ·dir, λ ∈ [0,1): lattice points need every coordinate integral. Candidate λ
    // values come from the first coordinate with nonzero direction.
    let k = dir.iter().position(|x| !x.is_zero()).expect("nondegenerate segment");
    let lo = a[k].clone().min(b[k].clone());
    let hi = a[k].clone().max(b[k].clone());
    let mut count = 0;
    let mut z = ceil_int(&lo);
    while Rat::from_integer(z.clone()) <= hi {
        let lambda = (Rat::from_integer(z.clone()) - &a[k]) / &dir[k];
        if !lambda.is_negative() && lambda < Rat::one() {
            let pt: Vec<Rat> = a.iter().zip(&dir).map(|(x, y)| x + &lambda * y).collect();
            if pt.iter().all(is_integral) {
                count += 1;
            }
        }
        z += 1;
    }
    count
}
