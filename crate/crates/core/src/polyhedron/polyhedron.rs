//! Rational polyhedra with at least one vertex.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::cone::Cone;
use crate::error::{Error, Result};
use crate::exactcore::dd::double_description;
use crate::exactcore::enumerate::enumerate_lattice_points;
use crate::exactcore::lattice::IntLattice;
use crate::exactcore::matrix::{project_off, rank_of};
use crate::exactcore::rat::{add, dot, fmt_rat, is_integral_vec, parse_rat, primitive, sub, QVec, Rat};

/// An affine inequality `a·x ≥ b` (or equation `a·x = b`).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Halfspace {
    pub a: QVec,
    pub b: Rat,
}

/// A face given by the vertices and tail rays it contains.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Face {
    pub vertices: Vec<usize>,
    pub rays: Vec<usize>,
}

impl Face {
    pub fn is_compact(&self) -> bool {
        self.rays.is_empty()
    }
}

/// A compact edge `[v^i, v^j]` with `i < j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CompactEdge {
    pub i: usize,
    pub j: usize,
}

/// Orientation of the edges of a compact 2-face as one closed cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientedFaceCycle {
    pub vertices: Vec<usize>,
    /// One sign per compact edge of the polyhedron; zero for edges outside the face.
    pub signs: Vec<i8>,
}

/// A rational polyhedron `conv(vertices) + cone(tail_rays)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polyhedron {
    dim: usize,
    vertices: Vec<QVec>,
    tail_rays: Vec<QVec>,
    facets: Vec<Halfspace>,
    equations: Vec<Halfspace>,
    edges: Vec<CompactEdge>,
    two_faces: Vec<OrientedFaceCycle>,
}

/// Canonical H-representation of `conv(points) + cone(rays)`.
fn hrep_of(dim: usize, points: &[QVec], rays: &[QVec]) -> (Vec<Halfspace>, Vec<Halfspace>) {
    let mut gens: Vec<QVec> = points
        .iter()
        .map(|p| {
            let mut g = p.clone();
            g.push(Rat::one());
            g
        })
        .collect();
    gens.extend(rays.iter().map(|r| {
        let mut g = r.clone();
        g.push(Rat::zero());
        g
    }));
    // Rows (a, a0) with a·x + a0 ≥ 0 on P.
    let dual = double_description(dim + 1, &gens, &[]);
    let to_half = |row: &QVec| Halfspace { a: row[..dim].to_vec(), b: -row[dim].clone() };
    let equations: Vec<Halfspace> = dual.lineality.iter().map(to_half).collect();
    let mut facets: Vec<Halfspace> = dual
        .rays
        .iter()
        .map(|r| primitive(&project_off(r, dim + 1, &dual.lineality)))
        .map(|r| to_half(&r))
        .filter(|h| points.iter().any(|p| dot(&h.a, p) == h.b))
        .collect();
    facets.sort();
    facets.dedup();
    (facets, equations)
}

/// Vertices and tail rays of `{x : a·x ≥ b, a'·x = b'}`.
fn vrep_of(dim: usize, facets: &[Halfspace], equations: &[Halfspace]) -> Result<(Vec<QVec>, Vec<QVec>)> {
    let hom = |h: &Halfspace| {
        let mut row = h.a.clone();
        row.push(-h.b.clone());
        row
    };
    let mut ineqs: Vec<QVec> = facets.iter().map(hom).collect();
    let mut height = vec![Rat::zero(); dim + 1];
    height[dim] = Rat::one();
    ineqs.push(height);
    let eqs: Vec<QVec> = equations.iter().map(hom).collect();
    let g = double_description(dim + 1, &ineqs, &eqs);
    let mut vertices: Vec<QVec> =
        g.rays.iter().filter(|r| r[dim].is_positive()).map(|r| r[..dim].iter().map(|x| x / &r[dim]).collect()).collect();
    if vertices.is_empty() && g.lineality.iter().all(|l| l[dim].is_zero()) {
        return Err(Error::Empty);
    }
    if !g.lineality.is_empty() {
        return Err(Error::NoVertex);
    }
    let mut rays: Vec<QVec> = g.rays.iter().filter(|r| r[dim].is_zero()).map(|r| primitive(&r[..dim])).collect();
    vertices.sort();
    rays.sort();
    Ok((vertices, rays))
}

impl Polyhedron {
    /// `conv(points) + cone(rays)`; redundant points and rays are removed.
    pub fn from_vrep(dim: usize, points: &[QVec], rays: &[QVec]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Empty);
        }
        for p in points.iter().chain(rays) {
            if p.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: p.len() });
            }
        }
        let (facets, equations) = hrep_of(dim, points, rays);
        let (vertices, tail_rays) = vrep_of(dim, &facets, &equations)?;
        Ok(Self::assemble(dim, vertices, tail_rays, facets, equations))
    }

    /// `{x : a·x ≥ b for facets, a·x = b for equations}`.
    pub fn from_hrep(dim: usize, facets: &[Halfspace], equations: &[Halfspace]) -> Result<Self> {
        let (vertices, tail_rays) = vrep_of(dim, facets, equations)?;
        let (f, e) = hrep_of(dim, &vertices, &tail_rays);
        Ok(Self::assemble(dim, vertices, tail_rays, f, e))
    }

    /// A polytope from its vertices.
    pub fn polytope(dim: usize, points: &[QVec]) -> Result<Self> {
        Self::from_vrep(dim, points, &[])
    }

    fn assemble(
        dim: usize,
        vertices: Vec<QVec>,
        tail_rays: Vec<QVec>,
        facets: Vec<Halfspace>,
        equations: Vec<Halfspace>,
    ) -> Self {
        let mut p = Polyhedron { dim, vertices, tail_rays, facets, equations, edges: vec![], two_faces: vec![] };
        p.edges = p.find_compact_edges();
        p.two_faces = p.find_two_faces();
        p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[QVec] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &QVec {
        &self.vertices[i]
    }

    pub fn tail_rays(&self) -> &[QVec] {
        &self.tail_rays
    }

    pub fn facets(&self) -> &[Halfspace] {
        &self.facets
    }

    pub fn equations(&self) -> &[Halfspace] {
        &self.equations
    }

    pub fn compact_edges(&self) -> &[CompactEdge] {
        &self.edges
    }

    /// Oriented boundary cycles of the compact 2-faces; the first edge of each cycle in
    /// index order is traversed from its lower to its higher vertex.
    pub fn compact_two_faces(&self) -> &[OrientedFaceCycle] {
        &self.two_faces
    }

    pub fn is_bounded(&self) -> bool {
        self.tail_rays.is_empty()
    }

    /// Dimension of the affine hull.
    pub fn affine_dimension(&self) -> usize {
        self.dim - self.equations.len()
    }

    pub fn edge_index(&self, i: usize, j: usize) -> Option<usize> {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        self.edges.iter().position(|e| e.i == i && e.j == j)
    }

    pub fn edge_vector(&self, e: usize) -> QVec {
        let CompactEdge { i, j } = self.edges[e];
        sub(&self.vertices[j], &self.vertices[i])
    }

    pub fn vertex_index(&self, v: &[Rat]) -> Option<usize> {
        self.vertices.iter().position(|w| w.as_slice() == v)
    }

    pub fn is_lattice_vertex(&self, i: usize) -> bool {
        is_integral_vec(&self.vertices[i])
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.facets.iter().all(|h| dot(&h.a, x) >= h.b) && self.equations.iter().all(|h| dot(&h.a, x) == h.b)
    }

    /// The tail cone as a cone.
    pub fn tail_cone(&self) -> Cone {
        Cone::from_generators(self.dim, &self.tail_rays, &[])
    }

    /// Whether the linear form `c` is bounded below on the polyhedron.
    pub fn is_bounded_below(&self, c: &[Rat]) -> bool {
        self.tail_rays.iter().all(|r| !dot(r, c).is_negative())
    }

    /// `min ⟨P, c⟩`.
    pub fn support_min(&self, c: &[Rat]) -> Result<Rat> {
        if !self.is_bounded_below(c) {
            return Err(Error::UnboundedDirection);
        }
        Ok(self.vertices.iter().map(|v| dot(v, c)).min().expect("at least one vertex"))
    }

    /// The face where `⟨·, c⟩` attains its minimum.
    pub fn face_at(&self, c: &[Rat]) -> Result<Face> {
        let m = self.support_min(c)?;
        let vertices = (0..self.vertices.len()).filter(|&i| dot(&self.vertices[i], c) == m).collect();
        let rays = (0..self.tail_rays.len()).filter(|&i| dot(&self.tail_rays[i], c).is_zero()).collect();
        Ok(Face { vertices, rays })
    }

    /// The face as a polyhedron of its own.
    pub fn face_polyhedron(&self, f: &Face) -> Result<Polyhedron> {
        let pts: Vec<QVec> = f.vertices.iter().map(|&i| self.vertices[i].clone()).collect();
        let rays: Vec<QVec> = f.rays.iter().map(|&i| self.tail_rays[i].clone()).collect();
        Polyhedron::from_vrep(self.dim, &pts, &rays)
    }

    fn tight_facets(&self, f: &Face) -> Vec<usize> {
        (0..self.facets.len())
            .filter(|&k| {
                let h = &self.facets[k];
                f.vertices.iter().all(|&i| dot(&h.a, &self.vertices[i]) == h.b)
                    && f.rays.iter().all(|&i| dot(&h.a, &self.tail_rays[i]).is_zero())
            })
            .collect()
    }

    /// The smallest face containing the given vertices and rays.
    pub fn closure(&self, f: &Face) -> Face {
        let tight = self.tight_facets(f);
        let vertices = (0..self.vertices.len())
            .filter(|&i| tight.iter().all(|&k| dot(&self.facets[k].a, &self.vertices[i]) == self.facets[k].b))
            .collect();
        let rays = (0..self.tail_rays.len())
            .filter(|&i| tight.iter().all(|&k| dot(&self.facets[k].a, &self.tail_rays[i]).is_zero()))
            .collect();
        Face { vertices, rays }
    }

    pub fn is_face(&self, f: &Face) -> bool {
        !f.vertices.is_empty() && self.closure(f) == *f
    }

    fn find_compact_edges(&self) -> Vec<CompactEdge> {
        let m = self.vertices.len();
        let mut out = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                let f = Face { vertices: vec![i, j], rays: vec![] };
                if self.closure(&f) == f {
                    out.push(CompactEdge { i, j });
                }
            }
        }
        out
    }

    fn affine_rank(&self, vs: &[usize]) -> usize {
        if vs.is_empty() {
            return 0;
        }
        let base = &self.vertices[vs[0]];
        let diffs: Vec<QVec> = vs[1..].iter().map(|&i| sub(&self.vertices[i], base)).collect();
        rank_of(self.dim, &diffs)
    }

    fn find_two_faces(&self) -> Vec<OrientedFaceCycle> {
        let mut faces: BTreeSet<Vec<usize>> = BTreeSet::new();
        for (a, e) in self.edges.iter().enumerate() {
            for f in &self.edges[a + 1..] {
                let mut vs = vec![e.i, e.j, f.i, f.j];
                vs.sort();
                vs.dedup();
                if vs.len() != 3 {
                    continue;
                }
                let c = self.closure(&Face { vertices: vs, rays: vec![] });
                if c.is_compact() && self.affine_rank(&c.vertices) == 2 {
                    faces.insert(c.vertices);
                }
            }
        }
        faces.into_iter().map(|vs| self.orient(vs)).collect()
    }

    fn orient(&self, vs: Vec<usize>) -> OrientedFaceCycle {
        let inside: Vec<usize> =
            (0..self.edges.len()).filter(|&k| vs.contains(&self.edges[k].i) && vs.contains(&self.edges[k].j)).collect();
        let mut signs = vec![0i8; self.edges.len()];
        let first = inside[0];
        signs[first] = 1;
        let start = self.edges[first].i;
        let mut cur = self.edges[first].j;
        let mut prev = first;
        while cur != start {
            let next = *inside
                .iter()
                .find(|&&k| k != prev && (self.edges[k].i == cur || self.edges[k].j == cur))
                .expect("2-face boundary is a cycle");
            if self.edges[next].i == cur {
                signs[next] = 1;
                cur = self.edges[next].j;
            } else {
                signs[next] = -1;
                cur = self.edges[next].i;
            }
            prev = next;
        }
        OrientedFaceCycle { vertices: vs, signs }
    }

    /// Translate by `w`.
    pub fn translate(&self, w: &[Rat]) -> Polyhedron {
        let pts: Vec<QVec> = self.vertices.iter().map(|v| add(v, w)).collect();
        Polyhedron::from_vrep(self.dim, &pts, &self.tail_rays).expect("translate keeps vertices")
    }

    /// Scale by a nonnegative rational (zero gives the tail cone at the origin).
    pub fn scale(&self, s: &Rat) -> Polyhedron {
        let pts: Vec<QVec> = self.vertices.iter().map(|v| v.iter().map(|x| x * s).collect()).collect();
        Polyhedron::from_vrep(self.dim, &pts, &self.tail_rays).expect("scaling keeps vertices")
    }

    /// `A + B`; both summands must have the same tail cone.
    pub fn minkowski_sum(&self, other: &Polyhedron) -> Result<Polyhedron> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: other.dim });
        }
        if self.tail_rays != other.tail_rays {
            return Err(Error::TailMismatch);
        }
        let mut pts = Vec::with_capacity(self.vertices.len() * other.vertices.len());
        for a in &self.vertices {
            for b in &other.vertices {
                pts.push(add(a, b));
            }
        }
        Polyhedron::from_vrep(self.dim, &pts, &self.tail_rays)
    }

    /// The normal cone `{c : ⟨·, c⟩ is minimized on the face}`.
    pub fn normal_cone(&self, f: &Face) -> Result<Cone> {
        if !self.is_face(f) {
            return Err(Error::NotAFace);
        }
        let gens: Vec<QVec> = self.tight_facets(f).into_iter().map(|k| self.facets[k].a.clone()).collect();
        let lin: Vec<QVec> = self.equations.iter().map(|h| h.a.clone()).collect();
        Ok(Cone::from_generators(self.dim, &gens, &lin))
    }

    pub fn vertex_normal_cone(&self, i: usize) -> Cone {
        self.normal_cone(&Face { vertices: vec![i], rays: vec![] }).expect("vertices are faces")
    }

    /// The cone over `P × {1}` in `N_ℝ ⊕ ℝ`.
    pub fn cone_over(&self) -> Cone {
        let mut gens: Vec<QVec> = self
            .vertices
            .iter()
            .map(|v| {
                let mut g = v.clone();
                g.push(Rat::one());
                primitive(&g)
            })
            .collect();
        gens.extend(self.tail_rays.iter().map(|r| {
            let mut g = r.clone();
            g.push(Rat::zero());
            g
        }));
        Cone::from_generators(self.dim + 1, &gens, &[])
    }

    /// Lattice points of a polytope, sorted lexicographically.
    pub fn lattice_points(&self) -> Result<Vec<QVec>> {
        let mut hrep: Vec<(QVec, Rat)> = self.facets.iter().map(|h| (h.a.clone(), h.b.clone())).collect();
        for h in &self.equations {
            hrep.push((h.a.clone(), h.b.clone()));
            hrep.push((h.a.iter().map(|x| -x).collect(), -h.b.clone()));
        }
        enumerate_lattice_points(&hrep, &IntLattice::standard(self.dim))
    }

    /// Support values agree on every direction of `dirs`.
    pub fn same_support(&self, other: &Polyhedron, dirs: &[QVec]) -> bool {
        dirs.iter().all(|c| match (self.support_min(c), other.support_min(c)) {
            (Ok(a), Ok(b)) => a == b,
            (Err(_), Err(_)) => true,
            _ => false,
        })
    }

    pub fn to_json(&self) -> PolyhedronJson {
        PolyhedronJson {
            dim: self.dim,
            vertices: self.vertices.iter().map(|v| v.iter().map(fmt_rat).collect()).collect(),
            tail_rays: self
                .tail_rays
                .iter()
                .map(|r| r.iter().map(|x| x.to_integer().try_into().unwrap_or(i64::MAX)).collect())
                .collect(),
        }
    }
}

/// JSON form `{"dim": d, "vertices": [["p/q", …], …], "tail_rays": [[int, …], …]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyhedronJson {
    pub dim: usize,
    pub vertices: Vec<Vec<String>>,
    #[serde(default)]
    pub tail_rays: Vec<Vec<i64>>,
}

impl PolyhedronJson {
    pub fn to_polyhedron(&self) -> Result<Polyhedron> {
        let pts: Vec<QVec> = self.vertices.iter().map(|v| v.iter().map(|s| parse_rat(s)).collect()).collect::<Result<_>>()?;
        let rays: Vec<QVec> = self.tail_rays.iter().map(|r| r.iter().map(|&x| Rat::from_integer(x.into())).collect()).collect();
        Polyhedron::from_vrep(self.dim, &pts, &rays)
    }
}
