use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_equimatch"))
        .args(args)
        .env_remove("EQUIMATCH_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let out = run(args);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stderr));
    });
    (out.status.code().unwrap(), v)
}

fn check<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == name)
        .unwrap_or_else(|| panic!("no check {name}"))
}

fn ints(series: &Value) -> Vec<i64> {
    series["coeffs"].as_array().unwrap().iter().map(|c| c[0].as_i64().unwrap()).collect()
}

#[test]
fn poincare_three_points() {
    let (code, v) = run_json(&["poincare", "--n", "3"]);
    assert_eq!(code, 0);
    assert_eq!(ints(&v["conf"]), vec![1, 0, 3, 0, 2]);
    assert_eq!(ints(&v["flag"]), vec![1, 0, 2, 0, 2, 0, 1]);
    assert_eq!(ints(&v["psi"]), vec![0, 0, 1]);
    assert_eq!(v["at_one"], json!({"conf": 6, "flag": 6}));
    assert_eq!(v["conventions"]["label_bijection"], "inverse");
}

#[test]
fn poincare_two_points_and_grassmannian() {
    let (_, v) = run_json(&["poincare", "--n", "2"]);
    assert_eq!(v["conf"], v["flag"]);
    assert_eq!(ints(&v["psi"]), Vec::<i64>::new());
    let (_, g) = run_json(&["poincare", "--r", "1", "--s", "2"]);
    assert_eq!(ints(&g["grassmann"]), vec![1, 0, 1, 0, 1]);
}

#[test]
fn matrix_payloads() {
    let (code, v) = run_json(&["matrix", "--n", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["entries"][0][0]["coeffs"], json!([[1, 1]]));
    assert_eq!(v["entries"][0][1]["coeffs"], json!([]));
    assert_eq!(v["entries"][1][1]["coeffs"], json!([[2, 1]]));
    let (_, v) = run_json(&["matrix", "--n", "3"]);
    assert_eq!(v["invariant_factors"]["exponents"], json!([0, 0, 0, 0, 0, 1]));
    assert_eq!(v["det"]["t_prime_degree"], 2);
    assert_eq!(v["entries"].as_array().unwrap().len(), 6);
}

#[test]
fn k_theory_payload() {
    let (code, v) = run_json(&["matrix", "--n", "3", "--ktheory"]);
    assert_eq!(code, 0);
    assert_eq!(v["laurent"], true);
    assert_eq!(v["det_ratio"]["factors"], json!({"1": 2, "2": 2, "4": 3}));
    assert_eq!(v["det_ratio"]["fully_cyclotomic"], true);
    assert_eq!(v["index_bounds"]["spin"]["holds"], true);
}

#[test]
fn identical_runs_give_identical_bytes() {
    let a = run(&["matrix", "--n", "3", "--metric", "monomial"]).stdout;
    let b = run(&["matrix", "--n", "3", "--metric", "monomial"]).stdout;
    assert_eq!(a, b);
    let a = run(&["verify", "--suite", "map", "--n", "3", "--seed", "11", "--samples", "10"]).stdout;
    let b = run(&["verify", "--suite", "map", "--n", "3", "--seed", "11", "--samples", "10"]).stdout;
    assert_eq!(a, b);
}

fn cache_files(dir: &Path) -> Vec<String> {
    let mut v: Vec<String> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    v.sort();
    v
}

#[test]
fn cache_hit_matches_cold_run() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let cold = run(&["matrix", "--n", "3"]).stdout;
    let first = run(&["matrix", "--n", "3", "--cache-dir", d]).stdout;
    assert_eq!(cache_files(dir.path()), vec!["matrix-n3-apolar-inverse-orthogonal.json"]);
    let hit = Command::new(env!("CARGO_BIN_EXE_equimatch"))
        .args(["matrix", "--n", "3"])
        .env("EQUIMATCH_CACHE_DIR", d)
        .output()
        .unwrap()
        .stdout;
    assert_eq!(cold, first);
    assert_eq!(cold, hit);
    run(&["matrix", "--n", "3", "--metric", "monomial", "--cache-dir", d]);
    assert_eq!(cache_files(dir.path()).len(), 2);
}

#[test]
fn theorem1_suite_reports_rank_five() {
    let (code, v) = run_json(&["verify", "--suite", "theorem1", "--n", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["passed"], true);
    assert_eq!(check(&v, "rank_a0")["detail"], "rank 5 of 6");
    assert!(v.get("timing_ms").is_none());
    let (_, t) = run_json(&["verify", "--suite", "theorem1", "--n", "2", "--timing"]);
    assert!(t["timing_ms"].is_u64());
}

#[test]
fn falsified_conventions_exit_one_with_witness() {
    let (code, v) = run_json(&["verify", "--suite", "theorem1", "--n", "3", "--label-convention", "identity"]);
    assert_eq!(code, 1);
    let c = check(&v, "polynomial_entries");
    assert_eq!(c["status"], "fail");
    assert!(c["witness"]["row"].is_u64());
    assert!(c["witness"]["col"].is_u64());
}

#[test]
fn theorem2_suite() {
    let (code, v) = run_json(&["verify", "--suite", "theorem2", "--r", "2", "--s", "2"]);
    assert_eq!(code, 0);
    assert_eq!(check(&v, "component_count")["status"], "pass");
    assert!(check(&v, "component_count")["detail"].as_str().unwrap().starts_with("6 fixed components"));
    assert_eq!(check(&v, "symbolic_matching")["status"], "exploratory");
    let (code, v) = run_json(&["verify", "--suite", "theorem2", "--n", "5"]);
    assert_eq!(code, 0);
    assert_eq!(check(&v, "determinant_constant")["status"], "pass");
}

#[test]
fn theorem3_suite_two_points() {
    let (code, v) = run_json(&["verify", "--suite", "theorem3", "--n", "2"]);
    assert_eq!(code, 0);
    assert_eq!(check(&v, "identity_at_two_points")["status"], "pass");
}

#[test]
fn map_suite_residuals() {
    let (code, v) = run_json(&["verify", "--suite", "map", "--n", "4", "--seed", "7"]);
    for name in ["permutation_equivariance", "rotation_equivariance", "similarity_invariance", "polar_orthonormality"] {
        assert_eq!(check(&v, name)["status"], "pass", "{name}");
    }
    assert_eq!(check(&v, "diagram_on_axis")["status"], "pass");
    assert_eq!(check(&v, "diagram_homotopy")["status"], "pass");
    assert_eq!(check(&v, "calibration_polynomiality")["status"], "pass");
    // the two routes around the square agree only up to homotopy off the axis
    let literal = check(&v, "diagram_literal");
    assert_eq!(literal["status"], "fail");
    assert!(literal["witness"]["sample_seed"].is_u64());
    assert_eq!(code, 1);
}

#[test]
fn map_verb_reads_point_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("points.json");
    std::fs::write(&path, r#"{"n": 3, "points": [[0,0,0],[0,0,1],[0,0,2]]}"#).unwrap();
    let (code, v) = run_json(&["map", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let lines = v["lines"].as_array().unwrap();
    assert_eq!(lines.len(), 3);
    // on-axis points give coordinate lines
    for line in lines {
        let big = line
            .as_array()
            .unwrap()
            .iter()
            .filter(|z| z[0].as_f64().unwrap().hypot(z[1].as_f64().unwrap()) > 1.0 - 1e-12)
            .count();
        assert_eq!(big, 1);
    }
    assert!(v["diagnostics"]["polar_residual"].as_f64().unwrap() < 1e-12);

    std::fs::write(&path, r#"{"n": 2, "points": [[0,0,0],[0,0,0]]}"#).unwrap();
    assert_eq!(run(&["map", path.to_str().unwrap()]).status.code(), Some(2));
    std::fs::write(&path, r#"{"n": 3, "points": [[0,0,0],[0,0,1]]}"#).unwrap();
    assert_eq!(run(&["map", path.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn characters_are_regular() {
    let (code, v) = run_json(&["characters", "--n", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["conf_total_is_regular"], true);
    assert_eq!(v["flag_total_is_regular"], true);
    assert_eq!(v["regular"], json!({"(1,1,1)": 1, "(2,1)": 2, "(3)": 1}));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["matrix", "--n", "9"]).status.code(), Some(3));
    assert_eq!(run(&["matrix"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--suite", "map", "--n", "3", "--tolerance=-1"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--suite", "nonsense", "--n", "3"]).status.code(), Some(2));
    assert_eq!(run(&["poincare", "--n", "31"]).status.code(), Some(3));
}

#[test]
fn csv_output() {
    let out = run(&["matrix", "--n", "2", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text, "row,col,power,num,den\n0,0,0,1,1\n1,1,0,2,1\n");
    let out = run(&["verify", "--suite", "theorem1", "--n", "2", "--format", "csv"]);
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("check,status,detail\n"));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.json");
    let out = run(&["poincare", "--n", "4", "--out", path.to_str().unwrap()]);
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(v["at_one"]["flag"], 24);
}
