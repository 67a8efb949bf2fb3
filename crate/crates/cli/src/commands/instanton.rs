use std::sync::Arc;

use anyhow::Result;
use ncg_core::algebra_core::{GeneratorSpec, Phase};
use ncg_core::instanton::{commutative_limit_check, verify};
use serde_json::json;

use super::{exact_phase, report_for};
use crate::config::{InstantonCmd, RunConfig};
use crate::report::Report;
use crate::InModule;

const M: &str = "instanton";

pub fn run(cfg: &RunConfig, cmd: &InstantonCmd) -> Result<Report> {
    let mut rep = report_for(cfg);
    match cmd {
        InstantonCmd::Verify { theta } => {
            let r = verify(exact_phase("theta", theta)?).in_module(M)?;
            for c in &r.checks {
                rep.check(&c.name, c.passed, json!({"terms": c.terms, "witness": c.witness}));
            }
            rep.set("theta", r.theta);
        }
        InstantonCmd::Commutative { degree } => {
            let spec = Arc::new(GeneratorSpec::s4_theta(Phase::commutative()).in_module(M)?);
            let r = commutative_limit_check(&spec, *degree).in_module(M)?;
            rep.check("all monomials commute at λ = 1", r.passed(), r.monomial_pairs);
            rep.set("failures", r.failures);
        }
    }
    Ok(rep)
}
