use std::io::Write;

use ncg_cli::{dispatch, golden_diff, RunConfig};
use serde_json::Value;

fn report(args: &[&str]) -> Value {
    let cfg = RunConfig::try_parse_args(args.iter().map(|s| s.to_string())).unwrap();
    dispatch(&cfg).unwrap().to_value(false)
}

fn save(v: &Value) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(serde_json::to_string_pretty(v).unwrap().as_bytes()).unwrap();
    f
}

const BIRKHOFF: &[&str] = &["renorm", "birkhoff", "--rule", "ladder", "--L", "1", "--order", "3"];

#[test]
fn identical_report_matches() {
    let v = report(BIRKHOFF);
    let g = save(&v);
    assert!(golden_diff(&v, g.path(), 1e-9).unwrap().matches());
}

#[test]
fn float_drift_within_eps_matches() {
    let golden = report(&["spectral", "distance", "--triple", "two-point", "--m", "2.0"]);
    let g = save(&golden);
    let mut drifted = golden.clone();
    let x = drifted["data"]["value"].as_f64().unwrap();
    drifted["data"]["value"] = (x * (1.0 + 1e-12)).into();
    assert!(golden_diff(&drifted, g.path(), 1e-9).unwrap().matches());
    drifted["data"]["value"] = (x * (1.0 + 1e-6)).into();
    let d = golden_diff(&drifted, g.path(), 1e-9).unwrap();
    assert!(!d.matches());
    assert!(d.diffs[0].contains("data.value"), "{:?}", d.diffs);
}

#[test]
fn changed_counterterm_is_reported() {
    let golden = report(BIRKHOFF);
    let g = save(&golden);
    let mut edited = golden.clone();
    edited["data"]["trees"]["B+[•]"]["counterterm"] = "1/3 ε^-2".into();
    let d = golden_diff(&edited, g.path(), 1e-9).unwrap();
    assert!(!d.matches());
    assert_eq!(d.diffs.len(), 1);
    assert!(d.diffs[0].contains("counterterm") && d.diffs[0].contains("1/3 ε^-2"), "{:?}", d.diffs);
}

#[test]
fn schema_mismatch_needs_migration() {
    let golden = report(BIRKHOFF);
    let mut old = golden.clone();
    old["schema_version"] = 0.into();
    let g = save(&old);
    let err = golden_diff(&golden, g.path(), 1e-9).unwrap_err();
    assert!(format!("{err:#}").contains("schema migration required"));
}

#[test]
fn golden_diff_subcommand_fails_on_mismatch() {
    let golden = report(BIRKHOFF);
    let g = save(&golden);
    let mut edited = golden.clone();
    edited["data"]["trees"]["•"]["counterterm"] = "-2 ε^-1".into();
    let r = save(&edited);
    let args = ["golden-diff", "--report", r.path().to_str().unwrap(), "--golden", g.path().to_str().unwrap()];
    let cfg = RunConfig::try_parse_args(args.iter().map(|s| s.to_string())).unwrap();
    assert!(!dispatch(&cfg).unwrap().passed());
    let same = ["golden-diff", "--report", g.path().to_str().unwrap(), "--golden", g.path().to_str().unwrap()];
    let cfg = RunConfig::try_parse_args(same.iter().map(|s| s.to_string())).unwrap();
    assert!(dispatch(&cfg).unwrap().passed());
}
