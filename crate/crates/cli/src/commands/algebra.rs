use std::sync::Arc;

use anyhow::Result;
use ncg_core::algebra_core::{
    parse_poly, parse_word, poly_normal_form, poly_normal_form_random, poly_reduce, to_json, GeneratorSpec, Phase,
    TorusElement, TwistedPoly,
};
use ncg_core::Cyclotomic;
use num_traits::One;
use serde_json::json;

use super::{exact_phase, report_for, rng, usage};
use crate::config::{parse_list, AlgebraCmd, RunConfig};
use crate::report::Report;
use crate::InModule;

const M: &str = "algebra_core";

type Poly = TwistedPoly<Cyclotomic>;
type Torus = TorusElement<Cyclotomic>;

fn sphere(phase: Phase) -> Result<Arc<GeneratorSpec>> {
    Ok(Arc::new(GeneratorSpec::s4_theta(phase).in_module(M)?))
}

pub fn run(cfg: &RunConfig, cmd: &AlgebraCmd) -> Result<Report> {
    let mut rep = report_for(cfg);
    match cmd {
        AlgebraCmd::NormalForm { theta, word } => {
            let spec = sphere(exact_phase("theta", theta)?)?;
            let names: Vec<&str> = word.split_whitespace().collect();
            let fixed: Poly = poly_normal_form(&names, &spec).in_module(M)?;
            let idx = parse_word(word, &spec).in_module(M)?;
            let random: Poly = poly_normal_form_random(&idx, &spec, &mut rng(cfg)).in_module(M)?;
            rep.check("normal form independent of rewrite order", fixed == random, fixed.len());
            rep.check("normal form is reduced", poly_reduce(&fixed).in_module(M)? == fixed, fixed.len());
            rep.set("normal_form", to_json(&fixed).in_module(M)?);
        }
        AlgebraCmd::Reduce { theta, poly } => {
            let spec = sphere(exact_phase("theta", theta)?)?;
            // Parse without the sphere relation so that reduction has work to do.
            let free = Arc::new(spec.without_relations());
            let raw: Poly = parse_poly(poly, &free).in_module(M)?.transport(&spec).in_module(M)?;
            let reduced = poly_reduce(&raw).in_module(M)?;
            rep.check("reduction is idempotent", poly_reduce(&reduced).in_module(M)? == reduced, reduced.len());
            rep.check("reduction commutes with *", poly_reduce(&raw.star()).in_module(M)? == reduced.star(), reduced.len());
            rep.set("input_terms", raw.len());
            rep.set("reduced", to_json(&reduced).in_module(M)?);
        }
        AlgebraCmd::Torus { theta, x, y } => {
            let phase = exact_phase("theta", theta)?;
            let mono = |field: &str, s: &str| -> Result<Torus> {
                match parse_list::<i64>(field, s)?[..] {
                    [n, m] => Ok(Torus::monomial(phase, n, m, Cyclotomic::one())),
                    _ => Err(usage(field, "expected two exponents n,m")),
                }
            };
            let (x, y) = (mono("x", x)?, mono("y", y)?);
            let xy = x.mul(&y).in_module(M)?;
            let yx = y.mul(&x).in_module(M)?;
            let xs = x.star().in_module(M)?;
            rep.check("τ(xy) = τ(yx)", xy.trace() == yx.trace(), xy.trace().to_string());
            rep.check("(xy)* = y*x*", xy.star().in_module(M)? == y.star().in_module(M)?.mul(&xs).in_module(M)?, true);
            rep.check("x*x = 1", xs.mul(&x).in_module(M)? == Torus::one(phase), true);
            let render = |t: &Torus| -> Vec<serde_json::Value> {
                t.terms().map(|((n, m), c)| json!({"n": n, "m": m, "coeff": c.to_string()})).collect()
            };
            rep.set("xy", render(&xy));
            rep.set("yx", render(&yx));
            rep.set("x_star", render(&xs));
        }
    }
    Ok(rep)
}
