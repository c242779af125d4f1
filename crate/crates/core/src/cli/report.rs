//! The self-contained report of `minkext analyze`.

use serde::Serialize;
use serde_json::Value;

use crate::error::Result;
use crate::etaspace::EtaSpace;
use crate::exactcore::rat::{fmt_rat, fmt_vec, from_i64_vec, int_grid};
use crate::extension::{RelationOracle, UpperPair};
use crate::minkowski::{enumerate_lattice_friendly, smooth_in_codim_two, summand_cone, t1_dimension};
use crate::polyhedron::PolyhedronJson;

/// Parameters that reproduce the report.
#[derive(Debug, Clone, Serialize)]
pub struct Echo {
    pub polyhedron: PolyhedronJson,
    pub cgrid: u32,
    pub cap: u32,
    pub verify: u32,
}

#[derive(Debug, Clone, Serialize)]
pub struct EdgeRow {
    pub i: usize,
    pub j: usize,
    pub g: String,
    pub short_forward: bool,
    pub short_backward: bool,
    pub lattice_disjoint: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct EtaRow {
    pub c: Vec<i64>,
    pub eta: String,
    pub eta_z: String,
    pub minimizers: Vec<usize>,
    pub eta_tilde: String,
    pub eta_tilde_z: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct TSpaceReport {
    pub coordinates: Vec<String>,
    pub dim: usize,
    pub t1_dim: usize,
    pub constraints: Vec<String>,
    pub basis: Vec<String>,
    pub lattice_basis: Vec<String>,
    pub oneone: String,
    pub oneone_coords: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SummandConeReport {
    pub dim: usize,
    pub rays: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub input: Echo,
    pub shift: Vec<String>,
    pub vertices: Vec<Vec<String>>,
    pub tail_rays: Vec<Vec<String>>,
    pub compact_edges: Vec<[usize; 2]>,
    pub compact_two_faces: Vec<Vec<usize>>,
    pub edge_data: Vec<EdgeRow>,
    pub smooth_in_codim_two: bool,
    pub hilbert_basis: Option<Vec<Vec<i64>>>,
    pub eta_table: Vec<EtaRow>,
    pub tspace: TSpaceReport,
    pub summand_cone: SummandConeReport,
    pub extension: Value,
    pub decompositions: Value,
}

impl AnalysisReport {
    pub fn summary(&self) -> String {
        let mut out = format!(
            "{} vertices, {} compact edges, {} compact 2-faces\n",
            self.vertices.len(),
            self.compact_edges.len(),
            self.compact_two_faces.len()
        );
        match &self.hilbert_basis {
            Some(h) => out.push_str(&format!("Hilbert basis of the dual cone: {h:?}\n")),
            None => out.push_str("dual cone is not pointed\n"),
        }
        out.push_str(&format!(
            "dim T(P) = {}, dim T1 = {}, summand cone: dim {} with {} rays\n",
            self.tspace.dim,
            self.tspace.t1_dim,
            self.summand_cone.dim,
            self.summand_cone.rays.len()
        ));
        out.push_str("c: eta, eta_z, eta_tilde_z\n");
        for r in &self.eta_table {
            out.push_str(&format!("  {:?}: {}, {}, {}\n", r.c, r.eta, r.eta_z, r.eta_tilde_z));
        }
        if let Some(g) = self.extension.get("t_tilde_display") {
            out.push_str(&format!("T̃ generators: {g}\n"));
        }
        out.trim_end().to_string()
    }
}

/// Runs every analysis on the polyhedron described by `input`.
pub fn analyze(input: &PolyhedronJson, cgrid: u32, cap: u32, verify: u32) -> Result<AnalysisReport> {
    let p = input.to_polyhedron()?;
    let space = EtaSpace::new(&p)?;
    let q = space.polyhedron();
    let oracle = space.oracle();
    let edge_data = space
        .edges()
        .iter()
        .map(|e| EdgeRow {
            i: e.i,
            j: e.j,
            g: e.g.to_string(),
            short_forward: e.short_forward,
            short_backward: e.short_backward,
            lattice_disjoint: e.lattice_disjoint,
        })
        .collect();
    let mut eta_table = Vec::new();
    for c in int_grid(q.dim(), cgrid as i64) {
        let cq = from_i64_vec(&c);
        if !oracle.in_domain(&cq) {
            continue;
        }
        eta_table.push(EtaRow {
            eta: fmt_rat(&oracle.eta(&cq)?),
            eta_z: oracle.eta_z(&cq)?.to_string(),
            minimizers: oracle.minimizers(&cq)?,
            eta_tilde: space.display(&space.eta_tilde(&cq)?),
            eta_tilde_z: space.display(&space.eta_tilde_z(&cq)?),
            c,
        });
    }
    let t = space.tspace();
    let tspace = TSpaceReport {
        coordinates: (0..t.ambient()).map(|k| t.coord_label(q, k)).collect(),
        dim: t.dim(),
        t1_dim: t1_dimension(&space),
        constraints: t.perp.iter().map(|(k, row)| format!("{k:?}: {}", fmt_vec(row))).collect(),
        basis: t.basis.iter().map(|b| fmt_vec(b)).collect(),
        lattice_basis: space.tlattice().basis().iter().map(|b| fmt_vec(b)).collect(),
        oneone: fmt_vec(&t.oneone),
        oneone_coords: space.tlattice().oneone_coords.iter().map(fmt_rat).collect(),
    };
    let cone = summand_cone(&p)?;
    let summand_cone = SummandConeReport { dim: cone.dimension(), rays: cone.rays().iter().map(|r| fmt_vec(r)).collect() };
    let extension = match RelationOracle::new(&p).and_then(|o| UpperPair::build(o, cap, verify)) {
        Ok(u) => serde_json::to_value(u.to_json(Value::Null)).expect("report serializes"),
        Err(e) => serde_json::json!({ "error": e.to_string() }),
    };
    let decompositions = match enumerate_lattice_friendly(&p) {
        Ok(cat) => serde_json::json!({
            "b": cat.b.iter().map(|x| fmt_vec(x)).collect::<Vec<_>>(),
            "decompositions": cat.decompositions.iter().map(|d| serde_json::json!({
                "xis": d.xis.iter().map(|x| fmt_vec(x)).collect::<Vec<_>>(),
                "summands": d.report.summands.iter().map(|s| s.to_json().vertices).collect::<Vec<_>>(),
                "certified": d.certified(),
            })).collect::<Vec<_>>(),
        }),
        Err(e) => serde_json::json!({ "error": e.to_string() }),
    };
    let hilbert_basis = q.cone_over().dual().hilbert_basis().ok();
    Ok(AnalysisReport {
        input: Echo { polyhedron: input.clone(), cgrid, cap, verify },
        shift: oracle.shift().iter().map(fmt_rat).collect(),
        vertices: q.to_json().vertices,
        tail_rays: q.tail_rays().iter().map(|r| r.iter().map(fmt_rat).collect()).collect(),
        compact_edges: q.compact_edges().iter().map(|e| [e.i, e.j]).collect(),
        compact_two_faces: q.compact_two_faces().iter().map(|f| f.vertices.clone()).collect(),
        edge_data,
        smooth_in_codim_two: smooth_in_codim_two(q),
        hilbert_basis,
        eta_table,
        tspace,
        summand_cone,
        extension,
        decompositions,
    })
}
