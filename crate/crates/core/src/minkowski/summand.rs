//! The summands `P_ξ` built from `ξ ∈ T(P)` by walking along compact edges.

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::etaspace::{EtaSpace, PerpKind};
use crate::exactcore::rat::{dot, fmt_rat, fmt_vec, sub, QVec, Rat};
use crate::polyhedron::Polyhedron;

/// An element of `T(P)` in raw `(t, s)` coordinates, with its membership flags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Xi {
    raw: QVec,
    in_t_plus: bool,
    in_t_z: bool,
}

impl Xi {
    /// Fails with [`Error::NotInTP`] unless `raw` lies in `T(P)`.
    pub fn new(space: &EtaSpace, raw: QVec) -> Result<Self> {
        let t = space.tspace();
        if !t.contains(&raw) {
            return Err(Error::NotInTP);
        }
        let in_t_plus = t.contains_positive(&raw);
        let in_t_z = space.tlattice().contains(&raw);
        Ok(Xi { raw, in_t_plus, in_t_z })
    }

    pub fn raw(&self) -> &[Rat] {
        &self.raw
    }

    pub fn in_t_plus(&self) -> bool {
        self.in_t_plus
    }

    pub fn in_t_z(&self) -> bool {
        self.in_t_z
    }
}

/// `P_ξ` together with the vertex images `ψ(ξ, v)` for every vertex `v` of `P`.
#[derive(Debug, Clone)]
pub struct SummandResult {
    pub polyhedron: Polyhedron,
    pub vertex_images: Vec<QVec>,
    pub warnings: Vec<String>,
}

/// JSON form of a [`SummandResult`].
#[derive(Debug, Clone, Serialize)]
pub struct SummandJson {
    pub xi: Vec<String>,
    pub in_t_plus: bool,
    pub in_t_z: bool,
    pub vertices: Vec<Vec<String>>,
    pub vertex_images: Vec<String>,
    pub warnings: Vec<String>,
}

impl SummandResult {
    pub fn to_json(&self, xi: &Xi) -> SummandJson {
        SummandJson {
            xi: xi.raw().iter().map(fmt_rat).collect(),
            in_t_plus: xi.in_t_plus(),
            in_t_z: xi.in_t_z(),
            vertices: self.polyhedron.to_json().vertices,
            vertex_images: self.vertex_images.iter().map(|v| fmt_vec(v)).collect(),
            warnings: self.warnings.clone(),
        }
    }
}

/// The linear map `ξ ↦ ψ(ξ, v)` as a `d × (r+m)` matrix (rows are output coordinates).
///
/// `ψ(ξ, v★) = s_{v★}·v★`, and along a path `v★ = u₀, …, u_k = v` each edge adds
/// `t_e·(u_{i+1} - u_i)`.
pub fn psi_matrix(space: &EtaSpace, v: usize) -> Vec<QVec> {
    let p = space.polyhedron();
    let t = space.tspace();
    let n = t.ambient();
    let d = p.dim();
    let vstar = space.vstar();
    let mut m = vec![vec![Rat::zero(); n]; d];
    for (row, x) in m.iter_mut().zip(p.vertex(vstar)) {
        row[t.s_index(vstar)] = x.clone();
    }
    let path = space.path(vstar, v);
    for w in path.windows(2) {
        let e = p.edge_index(w[0], w[1]).expect("path steps along compact edges");
        let step = sub(p.vertex(w[1]), p.vertex(w[0]));
        for (row, x) in m.iter_mut().zip(&step) {
            row[t.t_index(e)] += x;
        }
    }
    m
}

/// `ψ(ξ, v)` for one vertex.
pub fn psi(space: &EtaSpace, xi: &[Rat], v: usize) -> QVec {
    psi_matrix(space, v).iter().map(|row| dot(row, xi)).collect()
}

/// `P_ξ = conv{ψ(ξ, v)} + tail(P)`, in the coordinates of the normalized polyhedron.
///
/// With `strict`, `ξ` must lie in `T₊(P)`. Otherwise elements of `T(P)` with negative
/// coordinates are accepted and reported in `warnings`.
pub fn psi_summand(space: &EtaSpace, xi: &Xi, strict: bool) -> Result<SummandResult> {
    let mut warnings = Vec::new();
    if !xi.in_t_plus() {
        if strict {
            return Err(Error::NotInTP);
        }
        let neg: Vec<String> = xi
            .raw()
            .iter()
            .enumerate()
            .filter(|(_, x)| x.is_negative())
            .map(|(k, _)| space.tspace().coord_label(space.polyhedron(), k))
            .collect();
        warnings.push(format!("ξ is not in T₊(P): negative coordinates {}", neg.join(", ")));
    }
    let p = space.polyhedron();
    let vertex_images: Vec<QVec> = (0..p.vertices().len()).map(|v| psi(space, xi.raw(), v)).collect();
    let polyhedron = Polyhedron::from_vrep(p.dim(), &vertex_images, p.tail_rays())?;
    Ok(SummandResult { polyhedron, vertex_images, warnings })
}

/// The polytope with edge dilation factors `t` (one per compact edge), placed with `v★` at the origin.
///
/// `t` has to satisfy the closing conditions of `P`.
pub fn summand_from_t(p: &Polyhedron, t: &[Rat]) -> Result<Polyhedron> {
    let space = EtaSpace::new(p)?;
    let m = space.polyhedron().vertices().len();
    let mut raw = t.to_vec();
    raw.extend(std::iter::repeat_n(Rat::zero(), m));
    let tspace = space.tspace();
    let mut closing = tspace.perp.iter().filter(|(k, _)| matches!(k, PerpKind::Closing { .. }));
    if closing.any(|(_, row)| !dot(row, &raw).is_zero()) {
        return Err(Error::NotInTP);
    }
    let pts: Vec<QVec> = (0..m).map(|v| psi(&space, &raw, v)).collect();
    Polyhedron::from_vrep(p.dim(), &pts, p.tail_rays())
}
