//! The pass/fail ledger behind `minkext check`.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::etaspace::EtaSpace;
use crate::exactcore::rat::{add, from_i64_vec, int_grid, is_integral_vec, QVec, Rat};
use crate::extension::{verify_upper_pair, RelationOracle, UpperPair};
use crate::minkowski::{
    check_fiber_product, enumerate_lattice_friendly, kodaira_spencer_of, psi_summand, summand_cone, summand_from_t,
    TautologicalCone, Xi,
};
use crate::polyhedron::Polyhedron;

/// Which group of checks to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    All,
    Eta,
    Extension,
    Minkowski,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// One invariant and its outcome.
#[derive(Debug, Clone, Serialize)]
pub struct CheckEntry {
    pub name: String,
    pub status: Status,
    pub cases: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// Every invariant checked, with the bounds used.
#[derive(Debug, Clone, Serialize)]
pub struct CheckLedger {
    pub suite: String,
    pub bound: u32,
    pub seed: u64,
    pub entries: Vec<CheckEntry>,
}

impl CheckLedger {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.status != Status::Fail)
    }
}

struct Recorder {
    entries: Vec<CheckEntry>,
}

impl Recorder {
    fn record(&mut self, name: &str, cases: usize, failures: Vec<String>) {
        let (status, detail) = match failures.first() {
            None => (Status::Pass, None),
            Some(f) => (Status::Fail, Some(format!("{} failure(s), first: {f}", failures.len()))),
        };
        self.entries.push(CheckEntry { name: name.into(), status, cases, detail });
    }

    fn skip(&mut self, name: &str, why: String) {
        self.entries.push(CheckEntry { name: name.into(), status: Status::Skipped, cases: 0, detail: Some(why) });
    }
}

/// Runs the requested suite on `p`, with integer grids `‖c‖∞ ≤ bound` and random samples
/// drawn from `seed`.
pub fn run_checks(p: &Polyhedron, suite: Suite, bound: u32, cap: u32, verify: u32, seed: u64) -> Result<CheckLedger> {
    let space = EtaSpace::new(p)?;
    let mut rec = Recorder { entries: Vec::new() };
    if matches!(suite, Suite::All | Suite::Eta) {
        eta_checks(&space, bound, &mut rec)?;
    }
    if matches!(suite, Suite::All | Suite::Extension) {
        extension_checks(p, bound, cap, verify, &mut rec)?;
    }
    if matches!(suite, Suite::All | Suite::Minkowski) {
        minkowski_checks(p, &space, bound, seed, &mut rec)?;
    }
    let suite = format!("{suite:?}").to_lowercase();
    Ok(CheckLedger { suite, bound, seed, entries: rec.entries })
}

fn domain_grid(space: &EtaSpace, bound: u32) -> Vec<QVec> {
    let d = space.polyhedron().dim();
    int_grid(d, bound as i64).iter().map(|c| from_i64_vec(c)).filter(|c| space.oracle().in_domain(c)).collect()
}

fn eta_checks(space: &EtaSpace, bound: u32, rec: &mut Recorder) -> Result<()> {
    let grid = domain_grid(space, bound);
    let oracle = space.oracle();
    let mut vertex_fail = Vec::new();
    let mut lattice_fail = Vec::new();
    let mut pi_fail = Vec::new();
    for c in &grid {
        let f = space.eta_tilde_z(c)?;
        for v in oracle.minimizers(c)? {
            if space.eta_tilde_z_at(c, v)? != f {
                vertex_fail.push(format!("c = {c:?}, vertex {v}"));
            }
        }
        if !space.dual_lattice_member(&f) {
            lattice_fail.push(format!("c = {c:?}"));
        }
        if space.pi(&f) != Rat::from_integer(oracle.eta_z(c)?) {
            pi_fail.push(format!("c = {c:?}"));
        }
    }
    rec.record("eta_tilde_z does not depend on the minimizing vertex", grid.len(), vertex_fail);
    rec.record("eta_tilde_z lies in the dual lattice of T_Z(P)", grid.len(), lattice_fail);
    rec.record("eta_tilde_z evaluates to eta_z at [P]", grid.len(), pi_fail);

    let mut indep_fail = Vec::new();
    let mut cases = 0;
    for (i, c1) in grid.iter().enumerate() {
        for c2 in &grid[i..] {
            let c = add(c1, c2);
            cases += 1;
            let scalar = oracle.eta_z(c1)? + oracle.eta_z(c2)? - oracle.eta_z(&c)?;
            let lifted = &(&space.eta_tilde_z(c1)? + &space.eta_tilde_z(c2)?) - &space.eta_tilde_z(&c)?;
            if scalar.is_zero() != lifted.is_zero() {
                indep_fail.push(format!("{c1:?} + {c2:?}"));
            }
        }
    }
    rec.record("eta_z and eta_tilde_z have the same independent pairs", cases, indep_fail);
    Ok(())
}

fn extension_checks(p: &Polyhedron, bound: u32, cap: u32, verify: u32, rec: &mut Recorder) -> Result<()> {
    let oracle = match RelationOracle::new(p) {
        Ok(o) => o,
        Err(e) => {
            rec.skip("universal extension", format!("not available: {e}"));
            return Ok(());
        }
    };
    if !oracle.is_pointed() {
        rec.skip("universal extension", "the dual cone is not pointed".into());
        return Ok(());
    }
    let deps = oracle.minimal_dependents(cap, verify)?;
    let incomplete = deps.incomplete.clone();
    rec.record(
        "minimal dependents are complete below the cap",
        1,
        incomplete.map(|m| format!("minimal dependent {m:?} beyond cap {cap}")).into_iter().collect(),
    );
    let upper = match UpperPair::new(oracle, deps) {
        Ok(u) => u,
        Err(e) => {
            rec.skip("universal extension", format!("not built: {e}"));
            return Ok(());
        }
    };
    let report = verify_upper_pair(&upper, bound)?;
    let fmt = |v: &[Vec<i64>]| v.iter().map(|x| format!("{x:?}")).collect::<Vec<_>>();
    let cases = int_grid(upper.oracle().dim(), bound as i64).len();
    rec.record("relative boundary of the upper pair is the lifted eta_tilde_z", cases, fmt(&report.boundary_failures));
    rec.record("projection has trivial kernel on the upper semigroup", cases, fmt(&report.kernel_failures));
    rec.record("projection is a bijection between relative boundaries", cases, fmt(&report.bijection_failures));
    let diagram = upper.diagram()?;
    let cc = diagram.check_cocartesian(bound);
    for (name, c) in [("C1", &cc.c1), ("C2", &cc.c2), ("C3", &cc.c3)] {
        rec.record(&format!("universal diagram satisfies {name}"), 1, c.witness.clone().into_iter().collect());
    }
    Ok(())
}

/// Nonnegative integer combinations of the rays of `T₊(P)`.
fn random_t_plus(space: &EtaSpace, rng: &mut ChaCha8Rng, count: usize) -> Vec<QVec> {
    let rays = space.tspace().t_plus().rays().to_vec();
    let n = space.tspace().ambient();
    (0..count)
        .map(|_| {
            rays.iter().fold(vec![Rat::zero(); n], |acc, r| {
                let k = Rat::from_integer(rng.gen_range(0i64..=2).into());
                add(&acc, &r.iter().map(|x| x * &k).collect::<QVec>())
            })
        })
        .collect()
}

fn minkowski_checks(p: &Polyhedron, space: &EtaSpace, bound: u32, seed: u64, rec: &mut Recorder) -> Result<()> {
    let q = space.polyhedron();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let samples = random_t_plus(space, &mut rng, bound as usize);
    let summand = |x: &QVec| -> Result<Polyhedron> { Ok(psi_summand(space, &Xi::new(space, x.clone())?, true)?.polyhedron) };
    let mut add_fail = Vec::new();
    let mut cases = 0;
    for (i, a) in samples.iter().enumerate() {
        for b in &samples[i..] {
            cases += 1;
            if summand(a)?.minkowski_sum(&summand(b)?)? != summand(&add(a, b))? {
                add_fail.push(format!("{a:?} + {b:?}"));
            }
        }
    }
    rec.record("psi is additive on random samples of T_+(P)", cases, add_fail);

    let taut = TautologicalCone::new(space);
    let mut fiber_fail = Vec::new();
    for x in &samples {
        if taut.fiber(x)? != summand(x)? {
            fiber_fail.push(format!("{x:?}"));
        }
    }
    rec.record("tautological fibers are the summands P_xi", samples.len(), fiber_fail);

    let catalog = enumerate_lattice_friendly(p)?;
    let mut kappa_fail = Vec::new();
    let mut shift_fail = Vec::new();
    let shift = vec![Rat::from_integer(1.into()); q.dim()];
    for x in &catalog.b {
        let px = summand(x)?;
        if kodaira_spencer_of(q, &px)?.raw() != *x {
            kappa_fail.push(format!("{x:?}"));
        }
        let k = kodaira_spencer_of(q, &px.translate(&shift))?.raw();
        if summand(&k)? != px {
            shift_fail.push(format!("{x:?}"));
        }
    }
    rec.record("kappa inverts psi on B", catalog.b.len(), kappa_fail);
    rec.record("psi inverts kappa up to lattice translation", catalog.b.len(), shift_fail);
    let uncertified: Vec<String> =
        catalog.decompositions.iter().filter(|d| !d.certified()).map(|d| format!("{:?}", d.xis)).collect();
    rec.record("enumerated decompositions satisfy all three lattice conditions", catalog.decompositions.len(), uncertified);
    let disagree: Vec<String> =
        catalog.decompositions.iter().filter(|d| !d.report.verdicts_agree()).map(|d| format!("{:?}", d.xis)).collect();
    rec.record("direct and kappa verdicts agree", catalog.decompositions.len(), disagree);
    let mut fp_fail = Vec::new();
    let nontrivial: Vec<_> = catalog.nontrivial().collect();
    for d in &nontrivial {
        let xis: Vec<Xi> = d.xis.iter().map(|x| Xi::new(space, x.clone())).collect::<Result<_>>()?;
        if !check_fiber_product(space, &xis)? {
            fp_fail.push(format!("{:?}", d.xis));
        }
    }
    rec.record("Cayley cones are pullbacks of the tautological cone", nontrivial.len(), fp_fail);

    let cone = summand_cone(p)?;
    let mut ray_fail = Vec::new();
    for r in cone.rays() {
        let piece = summand_from_t(p, r)?;
        let sub = summand_cone(&piece)?;
        if sub.dimension() > 1 {
            ray_fail.push(format!("ray {r:?}"));
        }
    }
    rec.record("extreme rays of the summand cone are indecomposable", cone.rays().len(), ray_fail);
    let lattice = catalog.b.iter().all(|x| is_integral_vec(&x[space.tspace().r..]));
    rec.record("s-coordinates of B are integral", catalog.b.len(), if lattice { vec![] } else { vec!["B".into()] });
    Ok(())
}
