use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("minkext-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_minkext")).args(args).output().unwrap()
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn malformed_input_exits_with_2() {
    let bad = scratch("bad.json");
    std::fs::write(&bad, "{\"dim\": 1, \"vertices\": [[\"1/0\"]]").unwrap();
    let out = run(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let missing = run(&["analyze", scratch("missing.json").to_str().unwrap()]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn invariant_violation_exits_with_3() {
    let input = scratch("short_edges.json");
    std::fs::write(&input, r#"{"dim": 1, "vertices": [["1/2"], ["3/4"]]}"#).unwrap();
    let out = run(&["summand", input.to_str().unwrap(), "--xi", "1,0,1"]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(!out.stderr.is_empty());
}

#[test]
fn analyze_report_round_trips_through_its_echo() {
    let first = scratch("first.json");
    let out = run(&["analyze", data("pinkham.json").to_str().unwrap(), "--cgrid", "2", "--out", first.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report = read_json(&first);
    let echo = &report["input"];
    let input = scratch("echo.json");
    std::fs::write(&input, serde_json::to_string(&echo["polyhedron"]).unwrap()).unwrap();
    let second = scratch("second.json");
    let (cgrid, cap, verify) = (echo["cgrid"].to_string(), echo["cap"].to_string(), echo["verify"].to_string());
    let out = run(&[
        "analyze",
        input.to_str().unwrap(),
        "--cgrid",
        &cgrid,
        "--cap",
        &cap,
        "--verify",
        &verify,
        "--out",
        second.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read(&first).unwrap(), std::fs::read(&second).unwrap());
}

#[test]
fn summand_outside_t_plus_is_flagged() {
    let path = scratch("summand.json");
    let out = run(&["summand", data("negative_s.json").to_str().unwrap(), "--xi", "1/7,1,-1", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r = read_json(&path);
    assert_eq!(r["vertices"], serde_json::json!([["-1/3"], ["-1/4"]]));
    assert!(!r["warnings"].as_array().unwrap().is_empty());
    assert_eq!(r["in_t_z"], Value::Bool(true));
    let strict = run(&["summand", data("negative_s.json").to_str().unwrap(), "--xi", "1/7,1,-1", "--strict"]);
    assert_eq!(strict.status.code(), Some(3));
}

#[test]
fn decompose_finds_two_nontrivial_decompositions() {
    let path = scratch("decompose.json");
    let out = run(&["decompose", data("pinkham.json").to_str().unwrap(), "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r = read_json(&path);
    let nontrivial = r["decompositions"].as_array().unwrap().iter().filter(|d| d["xis"].as_array().unwrap().len() > 1).count();
    assert_eq!(nontrivial, 2);
}

#[test]
fn check_with_zero_bound_passes() {
    for input in ["pinkham.json", "point.json", "hexagon.json"] {
        let out = run(&["check", data(input).to_str().unwrap(), "--bound", "0"]);
        assert_eq!(out.status.code(), Some(0), "{input}: {}", String::from_utf8_lossy(&out.stdout));
    }
}

#[test]
fn extension_of_the_point_is_empty() {
    let path = scratch("point.json");
    let out = run(&["extension", data("point.json").to_str().unwrap(), "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r = read_json(&path);
    assert!(r.to_string().contains("t_tilde"));
}

#[test]
fn morphism_matches_dual_map() {
    for target in ["artin.json", "qg.json"] {
        let out = run(&["morphism", data("pinkham.json").to_str().unwrap(), "--target", data(target).to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{target}: {}", String::from_utf8_lossy(&out.stdout));
    }
}
