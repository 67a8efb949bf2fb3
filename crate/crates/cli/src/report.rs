//! The machine-readable report every subcommand produces.

use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Number, Value};

/// Bumped whenever a field changes meaning; golden files must match it.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Warn,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Warn => "WARN",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    pub value: Value,
    /// Accepted interval for numeric checks.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: Vec<String>,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
    #[serde(default, skip_serializing_if = "Value::is_null")]
    pub data: Value,
    #[serde(skip)]
    clock: Option<Instant>,
}

impl Report {
    pub fn new(command: Vec<String>, seed: u64) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            command,
            seed,
            checks: Vec::new(),
            data: Value::Null,
            clock: Some(Instant::now()),
        }
    }

    /// Appends a check, charging it the time since the previous one.
    pub fn push(&mut self, name: impl Into<String>, status: Status, value: impl Into<Value>, bounds: Option<[f64; 2]>) {
        let now = Instant::now();
        let runtime_ms = self.clock.map(|t| now.duration_since(t).as_secs_f64() * 1e3);
        self.clock = Some(now);
        self.checks.push(CheckResult { name: name.into(), status, value: value.into(), bounds, runtime_ms });
    }

    pub fn check(&mut self, name: impl Into<String>, ok: bool, value: impl Into<Value>) {
        self.push(name, Status::from_bool(ok), value, None);
    }

    /// Passes when `lo ≤ value ≤ hi`.
    pub fn within(&mut self, name: impl Into<String>, value: f64, lo: f64, hi: f64) {
        self.push(name, Status::from_bool(value >= lo && value <= hi), value, Some([lo, hi]));
    }

    /// Passes when `|value − target| ≤ tol`.
    pub fn close(&mut self, name: impl Into<String>, value: f64, target: f64, tol: f64) {
        self.within(name, value, target - tol, target + tol);
    }

    pub fn warn_unless(&mut self, name: impl Into<String>, ok: bool, value: impl Into<Value>) {
        self.push(name, if ok { Status::Pass } else { Status::Warn }, value, None);
    }

    /// Stores `value` under `key` in the data section.
    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        if !self.data.is_object() {
            self.data = Value::Object(Map::new());
        }
        self.data.as_object_mut().expect("object").insert(key.into(), value.into());
    }

    /// Folds another report's checks and data in under a prefix.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for mut c in other.checks {
            c.name = format!("{prefix}: {}", c.name);
            self.checks.push(c);
        }
        if !other.data.is_null() {
            self.set(prefix, other.data);
        }
        self.clock = Some(Instant::now());
    }

    /// Warnings do not fail a run.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    /// Canonical JSON: floats at 15 significant digits, runtimes only when asked for.
    pub fn to_value(&self, timing: bool) -> Value {
        let mut r = self.clone();
        if !timing {
            for c in &mut r.checks {
                c.runtime_ms = None;
            }
        }
        let mut v = serde_json::to_value(&r).expect("report serializes");
        canonicalize(&mut v);
        v
    }

    pub fn to_json(&self, timing: bool) -> String {
        serde_json::to_string_pretty(&self.to_value(timing)).expect("value serializes")
    }

    pub fn to_text(&self, timing: bool) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let value = match &c.value {
                Value::String(s) => s.clone(),
                Value::Null => String::new(),
                v => {
                    let mut v = v.clone();
                    canonicalize(&mut v);
                    v.to_string()
                }
            };
            let bounds = c.bounds.map(|[lo, hi]| format!(" in [{}, {}]", round15(lo), round15(hi))).unwrap_or_default();
            let time = match (timing, c.runtime_ms) {
                (true, Some(ms)) => format!(" ({ms:.1} ms)"),
                _ => String::new(),
            };
            out.push_str(&format!("{:<5}{}: {value}{bounds}{time}\n", c.status.label(), c.name));
        }
        let failed = self.failures().count();
        out.push_str(&format!("{}/{} checks passed\n", self.checks.len() - failed, self.checks.len()));
        out
    }
}

/// `x` rounded to 15 significant digits.
pub fn round15(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { 0.0 } else { x };
    }
    format!("{x:.14e}").parse().unwrap_or(x)
}

/// Rounds every non-integer number to 15 significant digits so that serialized
/// reports do not depend on the last bits of a platform's libm.
pub fn canonicalize(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round15(n.as_f64().expect("f64"));
            *v = Number::from_f64(x).map(Value::Number).unwrap_or(Value::Null);
        }
        Value::Array(a) => a.iter_mut().for_each(canonicalize),
        Value::Object(o) => o.values_mut().for_each(canonicalize),
        _ => {}
    }
}

/// Finite floats as JSON numbers, the rest as strings.
pub fn num(x: f64) -> Value {
    Number::from_f64(x).map(Value::Number).unwrap_or_else(|| Value::String(x.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_is_stable() {
        assert_eq!(round15(0.1 + 0.2), 0.3);
        assert_eq!(round15(round15(std::f64::consts::PI)), round15(std::f64::consts::PI));
        assert_eq!(round15(-0.0).to_bits(), 0.0f64.to_bits());
    }

    #[test]
    fn warnings_do_not_fail() {
        let mut r = Report::new(vec!["x".into()], 0);
        r.warn_unless("soft", false, 1.0);
        assert!(r.passed());
        r.close("hard", 1.0, 2.0, 0.5);
        assert!(!r.passed());
        assert_eq!(r.checks[1].bounds, Some([1.5, 2.5]));
    }

    #[test]
    fn json_drops_runtimes_unless_asked() {
        let mut r = Report::new(vec!["x".into()], 0);
        r.check("c", true, "1/2");
        assert!(!r.to_json(false).contains("runtime_ms"));
        assert!(r.to_json(true).contains("runtime_ms"));
        let back: Report = serde_json::from_str(&r.to_json(false)).unwrap();
        assert_eq!(back.checks[0].value, Value::String("1/2".into()));
    }
}
