use anyhow::{Context, Result};

use super::report_for;
use crate::config::RunConfig;
use crate::dispatch::{dispatch, ROUTES};
use crate::report::Report;

/// Runs every example in the routing table with the caller's seed.
pub fn run(cfg: &RunConfig) -> Result<Report> {
    let mut rep = report_for(cfg);
    for route in ROUTES {
        for example in route.examples {
            let args = example.iter().map(|s| s.to_string()).chain(["--seed".into(), cfg.seed.to_string()]);
            let sub = RunConfig::try_parse_args(args).with_context(|| format!("example for {}", route.path))?;
            let label = example.join(" ");
            let r = dispatch(&sub).with_context(|| label.clone())?;
            rep.absorb(&label, r);
        }
    }
    Ok(rep)
}
