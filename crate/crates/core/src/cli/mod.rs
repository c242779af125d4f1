//! Command-line front end: JSON in, JSON reports to `--out`, a short summary to stdout.

pub mod checks;
pub mod report;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Deserialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::error::Error;
use crate::etaspace::EtaSpace;
use crate::exactcore::rat::{fmt_rat, parse_rat, QVec};
use crate::extension::{initial_morphism, kodaira_dual_map, verify_upper_pair, RelationOracle, UpperPair};
use crate::minkowski::{cayley_diagram, enumerate_lattice_friendly, is_lattice_friendly, psi_summand, TautologicalCone, Xi};
use crate::polyhedron::{Polyhedron, PolyhedronJson};
use crate::semigroup::{DiagramJson, ExtensionDiagram};
pub use checks::{run_checks, CheckLedger, Suite};
pub use report::{analyze, AnalysisReport};

#[derive(Debug, Parser)]
#[command(name = "minkext", version, about = "Universal co-Cartesian extensions and Minkowski summands of rational polyhedra")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Face structure, η tables, T(P), T_ℤ(P), the universal extension and the decomposition catalog.
    Analyze {
        input: PathBuf,
        #[arg(long, default_value_t = 3)]
        cgrid: u32,
        #[arg(long, default_value_t = crate::extension::DEFAULT_CAP)]
        cap: u32,
        #[arg(long, default_value_t = crate::extension::DEFAULT_VERIFY_DEGREE)]
        verify: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generators of the universal extension (T̃, S̃).
    Extension {
        input: PathBuf,
        #[arg(long, default_value_t = crate::extension::DEFAULT_CAP)]
        cap: u32,
        #[arg(long, default_value_t = crate::extension::DEFAULT_VERIFY_DEGREE)]
        verify: u32,
        /// Grid bound for the boundary and witness checks.
        #[arg(long, default_value_t = 3)]
        bound: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// All lattice friendly decompositions, or the verdict on one given decomposition.
    Decompose {
        input: PathBuf,
        /// `{"xi_list": [[…], …]}` or `{"summands": [polyhedron, …]}`.
        #[arg(long)]
        decomposition: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The summand P_ξ for one ξ ∈ T(P).
    Summand {
        input: PathBuf,
        /// Comma separated raw coordinates `t…, s…`, e.g. `1/7,1,-1`.
        #[arg(long, allow_hyphen_values = true)]
        xi: String,
        /// Reject ξ outside T₊(P) instead of flagging it.
        #[arg(long)]
        strict: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The induced morphism from the universal extension to a target diagram.
    Morphism {
        input: PathBuf,
        /// A diagram `{"upper", "lower", "pi"}` or a decomposition `{"xi_list"}` / `{"summands"}`.
        #[arg(long)]
        target: PathBuf,
        #[arg(long, default_value_t = 4)]
        bound: u32,
        #[arg(long, default_value_t = crate::extension::DEFAULT_CAP)]
        cap: u32,
        #[arg(long, default_value_t = crate::extension::DEFAULT_VERIFY_DEGREE)]
        verify: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Runs invariant checks and lists each with its status.
    Check {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, default_value_t = 6)]
        bound: u32,
        #[arg(long, default_value_t = crate::extension::DEFAULT_CAP)]
        cap: u32,
        #[arg(long, default_value_t = crate::extension::DEFAULT_VERIFY_DEGREE)]
        verify: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Failures of a command, mapped to exit codes 2 (input) and 3 (invariant).
#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read input: {0}")]
    Input(String),
    #[error("{0}")]
    Library(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) | CliError::Library(Error::Parse(_)) | CliError::Library(Error::DimensionMismatch { .. }) => 2,
            CliError::Library(_) => 3,
        }
    }
}

/// Output of one command: the JSON report, a human summary and whether all checks passed.
pub struct Outcome {
    pub report: Value,
    pub summary: String,
    pub pass: bool,
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn read_polyhedron(path: &Path) -> Result<Polyhedron, CliError> {
    let j: PolyhedronJson = read_json(path)?;
    Ok(j.to_polyhedron()?)
}

/// A decomposition given by parameters in `T(P)` or by positioned summands.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum DecompositionInput {
    Xis { xi_list: Vec<Vec<String>> },
    Summands { summands: Vec<PolyhedronJson> },
}

fn parse_xi(parts: &[String]) -> Result<QVec, CliError> {
    Ok(parts.iter().map(|s| parse_rat(s.trim())).collect::<crate::error::Result<_>>()?)
}

/// Summands in normalized coordinates plus the parameters, if they were given.
///
/// Positioned summands are read in input coordinates; the first one absorbs the normalizing
/// lattice translation.
fn decomposition_summands(space: &EtaSpace, d: &DecompositionInput) -> Result<(Vec<Polyhedron>, Option<Vec<QVec>>), CliError> {
    match d {
        DecompositionInput::Xis { xi_list } => {
            let xis: Vec<QVec> = xi_list.iter().map(|x| parse_xi(x)).collect::<Result<_, _>>()?;
            let summands = xis
                .iter()
                .map(|x| Ok(psi_summand(space, &Xi::new(space, x.clone())?, false)?.polyhedron))
                .collect::<crate::error::Result<_>>()?;
            Ok((summands, Some(xis)))
        }
        DecompositionInput::Summands { summands } => {
            let shift = space.oracle().shift();
            let qs = summands
                .iter()
                .enumerate()
                .map(|(i, j)| {
                    let q = j.to_polyhedron()?;
                    Ok(if i == 0 { q.translate(shift) } else { q })
                })
                .collect::<crate::error::Result<_>>()?;
            Ok((qs, None))
        }
    }
}

fn polyhedron_strings(p: &Polyhedron) -> Vec<Vec<String>> {
    p.to_json().vertices
}

/// Runs one command.
pub fn execute(command: &Command) -> Result<Outcome, CliError> {
    match command {
        Command::Analyze { input, cgrid, cap, verify, .. } => {
            let p = read_polyhedron(input)?;
            let r = analyze(&p.to_json(), *cgrid, *cap, *verify)?;
            let summary = r.summary();
            Ok(Outcome { report: serde_json::to_value(&r).expect("report serializes"), summary, pass: true })
        }
        Command::Extension { input, cap, verify, bound, .. } => {
            let p = read_polyhedron(input)?;
            let upper = UpperPair::build(RelationOracle::new(&p)?, *cap, *verify)?;
            let (pass, checks, status) = if upper.oracle().is_pointed() {
                let check = verify_upper_pair(&upper, *bound)?;
                let pass = check.pass();
                (pass, json!({ "bound": bound, "verification": check }), if pass { "pass" } else { "FAIL" })
            } else {
                (true, json!({ "bound": bound, "skipped": "the dual cone is not pointed" }), "skipped")
            };
            let report = upper.to_json(checks);
            let space = upper.oracle().space();
            let gens: Vec<String> = upper.t_generators().iter().map(|g| space.display(g)).collect();
            let (rt, rs) = upper.group_ranks();
            let summary = format!(
                "T̃ generators ({}): {{{}}}\ngroup ranks: T̃ {rt}, S̃ {rs}\nboundary checks up to bound {bound}: {status}",
                gens.len(),
                gens.join(", "),
            );
            Ok(Outcome { report: serde_json::to_value(report).expect("report serializes"), summary, pass })
        }
        Command::Decompose { input, decomposition, .. } => {
            let p = read_polyhedron(input)?;
            match decomposition {
                None => {
                    let cat = enumerate_lattice_friendly(&p)?;
                    let pass = cat.decompositions.iter().all(|d| d.certified());
                    let entries: Vec<Value> = cat
                        .decompositions
                        .iter()
                        .map(|d| {
                            json!({
                                "xis": d.xis.iter().map(|x| x.iter().map(fmt_rat).collect::<Vec<_>>()).collect::<Vec<_>>(),
                                "trivial": d.is_trivial(),
                                "vertex_condition": d.vertex_condition,
                                "kappa_recovers": d.kappa_recovers,
                                "report": d.report.to_json(),
                            })
                        })
                        .collect();
                    let mut summary = format!(
                        "|B| = {}; {} decomposition(s), {} nontrivial",
                        cat.b.len(),
                        cat.decompositions.len(),
                        cat.nontrivial().count()
                    );
                    for d in cat.nontrivial() {
                        let parts: Vec<String> =
                            d.report.summands.iter().map(|q| format!("{:?}", polyhedron_strings(q))).collect();
                        summary.push_str(&format!("\n  {}", parts.join(" + ")));
                    }
                    let report = json!({
                        "b": cat.b.iter().map(|x| x.iter().map(fmt_rat).collect::<Vec<_>>()).collect::<Vec<_>>(),
                        "decompositions": entries,
                    });
                    Ok(Outcome { report, summary, pass })
                }
                Some(path) => {
                    let d: DecompositionInput = read_json(path)?;
                    let rep = match &d {
                        DecompositionInput::Summands { summands } => {
                            let qs: Vec<Polyhedron> =
                                summands.iter().map(|j| j.to_polyhedron()).collect::<crate::error::Result<_>>()?;
                            is_lattice_friendly(&p, &qs)?
                        }
                        DecompositionInput::Xis { .. } => {
                            let space = EtaSpace::new(&p)?;
                            let (summands, _) = decomposition_summands(&space, &d)?;
                            is_lattice_friendly(space.polyhedron(), &summands)?
                        }
                    };
                    let summary = format!(
                        "lattice friendly: {}; kappa additive: {}; kappa in T_Z: {:?}; verdicts agree: {}",
                        rep.lattice_friendly,
                        rep.additive,
                        rep.kappa_in_t_z,
                        rep.verdicts_agree()
                    );
                    let pass = rep.verdicts_agree();
                    Ok(Outcome { report: serde_json::to_value(rep.to_json()).expect("report serializes"), summary, pass })
                }
            }
        }
        Command::Summand { input, xi, strict, .. } => {
            let p = read_polyhedron(input)?;
            let space = EtaSpace::new(&p)?;
            let parts: Vec<String> = xi.split(',').map(str::to_string).collect();
            let x = Xi::new(&space, parse_xi(&parts)?)?;
            let r = psi_summand(&space, &x, *strict)?;
            let fiber_matches =
                if x.in_t_plus() { Some(TautologicalCone::new(&space).fiber(x.raw())? == r.polyhedron) } else { None };
            let mut summary = format!("P_xi = {:?}", polyhedron_strings(&r.polyhedron));
            summary.push_str(&format!("\nxi in T_+: {}, xi in T_Z: {}", x.in_t_plus(), x.in_t_z()));
            for w in &r.warnings {
                summary.push_str(&format!("\nwarning: {w}"));
            }
            let mut report = serde_json::to_value(r.to_json(&x)).expect("report serializes");
            report["shift"] = json!(space.oracle().shift().iter().map(fmt_rat).collect::<Vec<_>>());
            report["tautological_fiber_matches"] = json!(fiber_matches);
            Ok(Outcome { report, summary, pass: fiber_matches != Some(false) })
        }
        Command::Morphism { input, target, bound, cap, verify, .. } => {
            let p = read_polyhedron(input)?;
            let upper = UpperPair::build(RelationOracle::new(&p)?, *cap, *verify)?;
            let text = fs::read_to_string(target).map_err(|e| CliError::Input(format!("{}: {e}", target.display())))?;
            let (diagram, xis, forms) = if let Ok(d) = serde_json::from_str::<DecompositionInput>(&text) {
                let (summands, xis) = decomposition_summands(upper.oracle().space(), &d)?;
                let diagram = cayley_diagram(upper.oracle(), &summands)?;
                let dim = p.dim();
                let k = summands.len();
                let forms: Vec<Vec<i64>> = (0..k).map(|i| (0..dim + k).map(|j| i64::from(j == dim + i)).collect()).collect();
                (diagram, xis, forms)
            } else {
                let j: DiagramJson =
                    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", target.display())))?;
                let diagram = ExtensionDiagram::from_json(&j)?;
                let n = diagram.upper().rank();
                let forms: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
                (diagram, None, forms)
            };
            let m = initial_morphism(&upper, &diagram, *bound)?;
            let matrix = m.matrix(&forms);
            let dual = match &xis {
                Some(x) => Some(kodaira_dual_map(&upper, x)?),
                None => None,
            };
            let agrees = dual.as_ref().map(|d| *d == matrix);
            let pass = m.recovered.pass() && agrees != Some(false);
            let space = upper.oracle().space();
            let summary = format!(
                "columns: {}\nmatrix: {:?}\nmultisets checked up to degree {bound}: {}\nagrees with the dual map: {}",
                upper.t_generators().iter().map(|g| space.display(g)).collect::<Vec<_>>().join(", "),
                matrix,
                m.multisets_checked,
                agrees.map_or("n/a".to_string(), |a| a.to_string())
            );
            let report = json!({
                "bound": bound,
                "t_tilde_generators": upper.t_generators().iter().map(|g| space.display(g)).collect::<Vec<_>>(),
                "t_images": m.t_images,
                "direction_images": m.direction_images,
                "matrix": matrix,
                "dual_map_matrix": dual,
                "agrees_with_dual_map": agrees,
                "multisets_checked": m.multisets_checked,
                "recovered_parameters": m.recovered.to_json(),
            });
            Ok(Outcome { report, summary, pass })
        }
        Command::Check { input, suite, bound, cap, verify, .. } => {
            let p = read_polyhedron(input)?;
            let seed = std::env::var("MINKEXT_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(0);
            let ledger = run_checks(&p, *suite, *bound, *cap, *verify, seed)?;
            let summary = ledger
                .entries
                .iter()
                .map(|e| format!("{:<8} {} ({} cases)", format!("{:?}", e.status).to_uppercase(), e.name, e.cases))
                .collect::<Vec<_>>()
                .join("\n");
            let pass = ledger.all_pass();
            Ok(Outcome { report: serde_json::to_value(&ledger).expect("ledger serializes"), summary, pass })
        }
    }
}

fn out_path(command: &Command) -> Option<&PathBuf> {
    match command {
        Command::Analyze { out, .. }
        | Command::Extension { out, .. }
        | Command::Decompose { out, .. }
        | Command::Summand { out, .. }
        | Command::Morphism { out, .. }
        | Command::Check { out, .. } => out.as_ref(),
    }
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    match execute(&cli.command) {
        Ok(outcome) => {
            let _ = writeln!(std::io::stdout(), "{}", outcome.summary);
            if let Some(path) = out_path(&cli.command) {
                let text = serde_json::to_string_pretty(&outcome.report).expect("report serializes");
                if let Err(e) = fs::write(path, text + "\n") {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return 2;
                }
            }
            i32::from(!outcome.pass)
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
