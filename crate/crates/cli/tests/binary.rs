use std::process::{Command, Output};

use serde_json::Value;

fn ncg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncg")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = ncg(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(ncg(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(ncg(&["algebra", "torus", "--theta", "one third"]).status.code(), Some(2));
    assert_eq!(ncg(&["torus", "curvature", "--theta", "0/1"]).status.code(), Some(2));
    assert_eq!(ncg(&["spectral", "index", "--n", "100000"]).status.code(), Some(2));
    let out = ncg(&["renorm", "birkhoff", "--L", "x"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--L"));
}

#[test]
fn help_is_not_an_error() {
    let out = ncg(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("verify-all"));
}

#[test]
fn verify_all_passes() {
    let out = ncg(&["verify-all", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    assert!(!String::from_utf8_lossy(&out.stdout).contains("FAIL"));
}

#[test]
fn json_is_byte_identical_across_runs() {
    for args in [&["verify-all", "--seed", "11", "--json"][..], &["cyclic", "check", "--algebra", "m2", "--json"]] {
        assert_eq!(ncg(args).stdout, ncg(args).stdout, "{args:?}");
    }
}

#[test]
fn timing_is_opt_in() {
    let plain = json(&["spectral", "index", "--json"]);
    assert!(plain["checks"][0].get("runtime_ms").is_none());
    let timed = json(&["spectral", "index", "--json", "--timing"]);
    assert!(timed["checks"][0]["runtime_ms"].is_number());
}

#[test]
fn ladder_counterterms_are_rational() {
    let v = json(&["renorm", "birkhoff", "--rule", "ladder", "--L", "1", "--order", "4", "--json"]);
    assert_eq!(v["data"]["trees"]["•"]["counterterm"], "-ε^-1");
    assert_eq!(v["data"]["trees"]["B+[•]"]["counterterm"], "1/2 ε^-2");
    assert_eq!(v["data"]["trees"].as_object().unwrap().len(), 8);
}

#[test]
fn two_point_distance_schema() {
    let v = json(&["spectral", "distance", "--triple", "two-point", "--m", "2.0", "--json"]);
    let d = v["data"].as_object().unwrap();
    let mut keys: Vec<_> = d.keys().map(String::as_str).collect();
    keys.sort();
    assert_eq!(keys, ["iterations", "lower_bound", "upper_bound", "value"]);
    assert!((d["value"].as_f64().unwrap() - 0.5).abs() < 1e-6);
}

#[test]
fn butterfly_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("b.csv");
    let out = ncg(&["torus", "butterfly", "--qmax", "6", "--mu", "1.0", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("theta_num,theta_den,eigenvalue_index,eigenvalue"));
    // Σ q over reduced p/q in [0, 1) with q ≤ 6.
    let fractions: usize = (1..=6usize).map(|q| (0..q).filter(|&p| gcd(p, q) == 1).count() * q).sum();
    assert_eq!(lines.count(), fractions);
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[test]
fn zeta_count_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("z.csv");
    let out = ncg(&["zeta", "count", "--E", "100", "--csv", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().next(), Some("index,ordinate"));
    assert_eq!(text.lines().count(), 1 + 29);
}

#[test]
fn zeta_compare_json() {
    let v = json(&["zeta", "compare", "--E-grid", "20:200:5", "--json"]);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["status"] == "pass"));
}

#[test]
fn instanton_identities_hold() {
    let v = json(&["instanton", "verify", "--theta", "1/4", "--json"]);
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.len() >= 5);
    assert!(checks.iter().all(|c| c["status"] == "pass"));
}
