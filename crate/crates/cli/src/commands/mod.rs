//! One function per subcommand. Each fills a [`Report`] with checks and data.

pub mod algebra;
pub mod cyclic;
pub mod instanton;
pub mod renorm;
pub mod spectral;
pub mod torus;
pub mod verify_all;
pub mod zeta;

use std::path::Path;

use anyhow::{Context, Result};
use ncg_core::algebra_core::Phase;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::{parse_ratio, RunConfig};
use crate::report::Report;
use crate::UsageError;

pub(crate) fn rng(cfg: &RunConfig) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(cfg.seed)
}

pub(crate) fn tol(cfg: &RunConfig, default: f64) -> f64 {
    cfg.tol.unwrap_or(default)
}

pub(crate) fn exact_phase(field: &str, s: &str) -> Result<Phase> {
    let (p, q) = parse_ratio(field, s)?;
    Phase::rational(p, q).map_err(|e| UsageError::new(field, e.to_string()).into())
}

pub(crate) fn write_csv<T: Serialize>(path: &Path, rows: impl IntoIterator<Item = T>) -> Result<()> {
    let mut w = csv::Writer::from_path(path).with_context(|| format!("creating {}", path.display()))?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

/// A fresh report echoing the command line.
pub(crate) fn report_for(cfg: &RunConfig) -> Report {
    Report::new(cfg.argv.clone(), cfg.seed)
}

pub(crate) fn usage(field: &str, msg: impl Into<String>) -> anyhow::Error {
    UsageError::new(field, msg).into()
}
