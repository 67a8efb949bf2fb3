//! The routing table from subcommands to module operations.

use anyhow::{Context, Result};
use serde_json::Value;

use crate::commands::{self, report_for};
use crate::config::{Command, RunConfig};
use crate::golden::golden_diff;
use crate::report::Report;

pub struct Route {
    /// Subcommand path, e.g. `torus curvature`.
    pub path: &'static str,
    /// Module operations reached, as `module::operation`.
    pub operations: &'static [&'static str],
    /// Invocations run by `verify-all`; every one must pass.
    pub examples: &'static [&'static [&'static str]],
}

pub const ROUTES: &[Route] = &[
    Route {
        path: "algebra normal-form",
        operations: &["algebra_core::poly_normal_form"],
        examples: &[&["algebra", "normal-form", "--theta", "1/3", "--word", "b a a* t b*"]],
    },
    Route {
        path: "algebra reduce",
        operations: &["algebra_core::poly_reduce"],
        examples: &[&["algebra", "reduce", "--theta", "2/5", "--poly", "a a* + b b* + t^2 - t + b a"]],
    },
    Route {
        path: "algebra torus",
        operations: &["algebra_core::torus_mul", "algebra_core::torus_star", "algebra_core::torus_trace"],
        examples: &[&["algebra", "torus", "--theta", "1/3", "--x", "2,1", "--y", "-1,3"]],
    },
    Route {
        path: "torus butterfly",
        operations: &["torus::butterfly_sweep", "torus::harper_spectrum"],
        examples: &[&["torus", "butterfly", "--qmax", "8", "--mu", "1"]],
    },
    Route {
        path: "torus curvature",
        operations: &["torus::curvature"],
        examples: &[&["torus", "curvature", "--theta", "2/5"]],
    },
    Route {
        path: "torus harper",
        operations: &["torus::harper_spectrum"],
        examples: &[&["torus", "harper", "--p", "2", "--q", "7", "--mu", "1.5"]],
    },
    Route {
        path: "torus delta",
        operations: &["torus::delta"],
        examples: &[&["torus", "delta", "--theta", "1/4", "--n", "2", "--m", "-1"]],
    },
    Route {
        path: "torus module",
        operations: &["torus::module_act", "torus::connection_apply", "torus::curvature"],
        examples: &[&["torus", "module", "--theta", "0.25"]],
    },
    Route {
        path: "cyclic check",
        operations: &["cyclic::hochschild_b", "cyclic::connes_B", "cyclic::is_cyclic", "cyclic::lambda_module_check"],
        examples: &[
            &["cyclic", "check", "--algebra", "m2", "--degree", "3"],
            &["cyclic", "check", "--algebra", "z3", "--degree", "3"],
        ],
    },
    Route {
        path: "cyclic chern",
        operations: &["cyclic::chern_character", "cyclic::pair"],
        examples: &[&["cyclic", "chern", "--n", "3", "--mask", "5"]],
    },
    Route {
        path: "cyclic lambda",
        operations: &["cyclic::lambda_normal_form"],
        examples: &[&["cyclic", "lambda", "--source", "2", "--word", "t d1 s0 t"]],
    },
    Route {
        path: "cyclic lambda-module",
        operations: &["cyclic::lambda_module_check"],
        examples: &[&["cyclic", "lambda-module", "--algebra", "z2", "--n-max", "3"]],
    },
    Route {
        path: "cyclic hopf",
        operations: &["cyclic::hopf_cyclic_ops", "cyclic::twisted_antipode"],
        examples: &[
            &["cyclic", "hopf", "--group", "2", "--degree", "3"],
            &["cyclic", "hopf", "--group", "3", "--degree", "3"],
            &["cyclic", "hopf", "--group", "3", "--dual-point", "0", "--degree", "2"],
        ],
    },
    Route {
        path: "cyclic group-cocycle",
        operations: &["cyclic::group_cocycle_cochain", "cyclic::is_cyclic"],
        examples: &[&["cyclic", "group-cocycle", "--radius", "2"]],
    },
    Route {
        path: "cyclic characteristic",
        operations: &["cyclic::characteristic_map", "cyclic::hochschild_b", "cyclic::is_cyclic"],
        examples: &[&["cyclic", "characteristic", "--group", "2", "--degree", "2"]],
    },
    Route {
        path: "renorm birkhoff",
        operations: &["renorm::birkhoff", "renorm::bogoliubov", "renorm::pole_part", "renorm::residue_and_beta"],
        examples: &[
            &["renorm", "birkhoff", "--rule", "ladder", "--L", "1", "--order", "4"],
            &["renorm", "birkhoff", "--rule", "power", "--L", "1/2", "--order", "3"],
        ],
    },
    Route {
        path: "renorm coproduct",
        operations: &["renorm::coproduct"],
        examples: &[&["renorm", "coproduct", "--tree", "B+[B+[•] •]"]],
    },
    Route {
        path: "renorm antipode",
        operations: &["renorm::antipode"],
        examples: &[&["renorm", "antipode", "--tree", "B+[B+[•] •]"]],
    },
    Route {
        path: "renorm theta",
        operations: &["renorm::theta_action"],
        examples: &[&["renorm", "theta", "--t", "5/2", "--order", "3"]],
    },
    Route {
        path: "renorm scattering",
        operations: &["renorm::scattering_check"],
        examples: &[&["renorm", "scattering", "--t", "8", "--nodes", "2"]],
    },
    Route {
        path: "spectral distance",
        operations: &["spectral::distance", "spectral::circle_triple"],
        examples: &[
            &["spectral", "distance", "--triple", "two-point", "--m", "2.0"],
            &["spectral", "distance", "--triple", "circle", "--n", "16", "--x", "0", "--y", "1.5"],
        ],
    },
    Route {
        path: "spectral dixmier",
        operations: &["spectral::dixmier_tau", "spectral::weyl_dart_check"],
        examples: &[
            &["spectral", "dixmier", "--domain", "circle", "--n", "20001"],
            &["spectral", "dixmier", "--domain", "square", "--n", "20000"],
            &["spectral", "dixmier", "--domain", "rectangle", "--n", "20000"],
        ],
    },
    Route {
        path: "spectral index",
        operations: &["spectral::index_pup", "spectral::circle_triple"],
        examples: &[&["spectral", "index", "--n", "16", "--winding", "1"]],
    },
    Route {
        path: "spectral real",
        operations: &["spectral::check_real_structure"],
        examples: &[&["spectral", "real", "--m", "1.5", "--dim", "0"]],
    },
    Route {
        path: "spectral local-index",
        operations: &["spectral::local_index_coefficient"],
        examples: &[&["spectral", "local-index", "--n", "3", "--k", "1,0,2"]],
    },
    Route {
        path: "spectral action",
        operations: &["spectral::spectral_action_count"],
        examples: &[&["spectral", "action", "--n", "32", "--lambda", "5.5"]],
    },
    Route {
        path: "instanton verify",
        operations: &[
            "instanton::build_projector",
            "instanton::verify_idempotent",
            "instanton::ch1_projected",
            "instanton::ch2_hochschild_check",
        ],
        examples: &[&["instanton", "verify", "--theta", "1/4"], &["instanton", "verify", "--theta", "2/7"]],
    },
    Route {
        path: "instanton commutative",
        operations: &["instanton::commutative_limit_check"],
        examples: &[&["instanton", "commutative", "--degree", "3"]],
    },
    Route {
        path: "zeta count",
        operations: &["zeta_lab::count_zeros", "zeta_lab::smooth_N"],
        examples: &[&["zeta", "count", "--E", "100"]],
    },
    Route {
        path: "zeta compare",
        operations: &["zeta_lab::smooth_N", "zeta_lab::osc_prime_sum", "zeta_lab::count_zeros"],
        examples: &[&["zeta", "compare", "--E-grid", "20:200:5"]],
    },
    Route {
        path: "zeta hardy",
        operations: &["zeta_lab::hardy_Z"],
        examples: &[&["zeta", "hardy", "--t", "14.134725"]],
    },
    Route {
        path: "zeta area",
        operations: &["zeta_lab::semiclassical_area"],
        examples: &[&["zeta", "area", "--E", "100", "--lambda", "1000"]],
    },
    Route { path: "verify-all", operations: &["cli::dispatch"], examples: &[] },
    Route { path: "golden-diff", operations: &["cli::golden_diff"], examples: &[] },
];

/// Validates the configuration and runs it.
pub fn dispatch(cfg: &RunConfig) -> Result<Report> {
    cfg.validate()?;
    match &cfg.command {
        Command::Algebra(c) => commands::algebra::run(cfg, c),
        Command::Torus(c) => commands::torus::run(cfg, c),
        Command::Cyclic(c) => commands::cyclic::run(cfg, c),
        Command::Renorm(c) => commands::renorm::run(cfg, c),
        Command::Spectral(c) => commands::spectral::run(cfg, c),
        Command::Instanton(c) => commands::instanton::run(cfg, c),
        Command::Zeta(c) => commands::zeta::run(cfg, c),
        Command::VerifyAll => commands::verify_all::run(cfg),
        Command::GoldenDiff { report, golden, eps } => {
            let text = std::fs::read_to_string(report).with_context(|| format!("reading {}", report.display()))?;
            let value: Value = serde_json::from_str(&text).with_context(|| format!("parsing {}", report.display()))?;
            let diff = golden_diff(&value, golden, *eps)?;
            let mut rep = report_for(cfg);
            rep.check("report matches golden", diff.matches(), diff.diffs.len());
            rep.set("diffs", diff.diffs);
            Ok(rep)
        }
    }
}
