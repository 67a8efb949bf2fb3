//! Field-by-field comparison of a report against a stored golden report.
//!
//! Strings (which carry every exact rational) must match exactly, integers
//! and booleans too; floats may differ by `eps`, absolutely or relatively.
//! Runtimes are ignored.

use std::path::Path;

use anyhow::{bail, Context, Result};
use serde_json::Value;


#[derive(Clone, Debug, Default, PartialEq)]
pub struct GoldenDiff {
    /// One line per differing field, as `path: report vs golden`.
    pub diffs: Vec<String>,
}

impl GoldenDiff {
    pub fn matches(&self) -> bool {
        self.diffs.is_empty()
    }
}

fn schema_version(v: &Value, which: &str) -> Result<u64> {
    v.get("schema_version").and_then(Value::as_u64).with_context(|| format!("{which} has no schema_version"))
}

/// Compares two parsed reports. A schema mismatch is an error, not a diff: the
/// golden file has to be migrated (regenerated) first.
pub fn diff_values(report: &Value, golden: &Value, eps: f64) -> Result<GoldenDiff> {
    let (r, g) = (schema_version(report, "report")?, schema_version(golden, "golden")?);
    if r != g {
        bail!("schema migration required: report has schema_version {r}, golden has {g}");
    }
    let mut out = GoldenDiff::default();
    walk("", report, golden, eps, &mut out.diffs);
    Ok(out)
}

/// Loads the golden file and compares; see [`diff_values`].
pub fn golden_diff(report: &Value, golden_path: &Path, eps: f64) -> Result<GoldenDiff> {
    let text = std::fs::read_to_string(golden_path).with_context(|| format!("reading {}", golden_path.display()))?;
    let golden: Value = serde_json::from_str(&text).with_context(|| format!("parsing {}", golden_path.display()))?;
    diff_values(report, &golden, eps)
}

fn floats_close(a: f64, b: f64, eps: f64) -> bool {
    (a - b).abs() <= eps * 1f64.max(a.abs()).max(b.abs())
}

fn walk(path: &str, r: &Value, g: &Value, eps: f64, diffs: &mut Vec<String>) {
    let here = if path.is_empty() { "$".to_string() } else { path.to_string() };
    match (r, g) {
        (Value::Object(a), Value::Object(b)) => {
            for (k, gv) in b {
                if k == "runtime_ms" {
                    continue;
                }
                match a.get(k) {
                    Some(rv) => walk(&format!("{here}.{k}"), rv, gv, eps, diffs),
                    None => diffs.push(format!("{here}.{k}: missing from report")),
                }
            }
            for k in a.keys().filter(|k| *k != "runtime_ms" && !b.contains_key(*k)) {
                diffs.push(format!("{here}.{k}: not in golden"));
            }
        }
        (Value::Array(a), Value::Array(b)) => {
            if a.len() != b.len() {
                diffs.push(format!("{here}: length {} vs {}", a.len(), b.len()));
            }
            for (i, (x, y)) in a.iter().zip(b).enumerate() {
                // Checks are easier to find by name than by index.
                let label = x.get("name").and_then(Value::as_str).map(|n| format!("[{n}]")).unwrap_or(format!("[{i}]"));
                walk(&format!("{here}{label}"), x, y, eps, diffs);
            }
        }
        (Value::Number(a), Value::Number(b)) => {
            let same = match (a.as_i64(), b.as_i64(), a.as_u64(), b.as_u64()) {
                (Some(x), Some(y), _, _) => x == y,
                (_, _, Some(x), Some(y)) => x == y,
                _ => floats_close(a.as_f64().unwrap_or(f64::NAN), b.as_f64().unwrap_or(f64::NAN), eps),
            };
            if !same {
                diffs.push(format!("{here}: {a} vs {b}"));
            }
        }
        _ if r == g => {}
        _ => diffs.push(format!("{here}: {r} vs {g}")),
    }
}
