use anyhow::Result;
use ncg_core::renorm::{
    antipode, antipode_left_defect, antipode_right_defect, birkhoff, bogoliubov, coproduct, is_coassociative_on,
    ladder_rule, one_parameter, power_rule, residue_and_beta, scattering_check, scattering_sequence, theta_action,
    AntipodeCache, BirkhoffCache, HopfCharacter, Tree, MAX_SCATTERING_NODES,
};
use ncg_core::scalar::parse_rational;
use ncg_core::{rat, Rational};
use serde_json::{json, Map, Value};

use super::{report_for, usage};
use crate::config::{RenormCmd, Rule, RunConfig};
use crate::report::{num, Report};
use crate::InModule;

const M: &str = "renorm";
const DEFAULT_NODES: usize = 4;

fn parse_l(s: &str) -> Result<Rational> {
    parse_rational(s).map_err(|e| usage("L", e.to_string()))
}

fn parse_tree(s: &str) -> Result<Tree> {
    Tree::parse(s).map_err(|e| usage("tree", e.to_string()))
}

/// Trees up to `nodes`, known far enough in ε for every finite part.
fn character(rule: Rule, l: &Rational, nodes: usize) -> HopfCharacter<Rational> {
    let order = nodes as i32 + 2;
    match rule {
        Rule::Ladder => ladder_rule(l, nodes, order),
        Rule::Power => power_rule(l, nodes, order),
    }
}

fn nodes(cfg: &RunConfig) -> Result<usize> {
    match cfg.order.unwrap_or(DEFAULT_NODES) {
        0 => Err(usage("order", "need at least one node")),
        n if n > 7 => Err(usage("order", "at most 7 nodes")),
        n => Ok(n),
    }
}

pub fn run(cfg: &RunConfig, cmd: &RenormCmd) -> Result<Report> {
    let mut rep = report_for(cfg);
    match cmd {
        RenormCmd::Birkhoff { rule, l } => {
            let gamma = character(*rule, &parse_l(l)?, nodes(cfg)?);
            let split = birkhoff(&gamma).in_module(M)?;
            rep.check("γ₊ = γ₋ ⋆ γ", split.factorization_holds(&gamma).in_module(M)?, true);
            rep.check("γ₋ is pure pole, γ₊ is regular", split.is_split(), true);
            let residue = residue_and_beta(&split.minus);
            let mut cache = BirkhoffCache::new();
            let mut table = Map::new();
            let mut recursion_agrees = true;
            let mut beta_graded = true;
            for t in gamma.trees() {
                let b = bogoliubov(&gamma, t, &mut cache).in_module(M)?;
                recursion_agrees &= b.counterterm == *split.minus.get(t).in_module(M)?
                    && b.counterterm == b.r_bar.pole_part().neg()
                    && b.renormalized == *split.plus.get(t).in_module(M)?;
                let res = residue.res.get(t).cloned().unwrap_or_else(|| rat(0, 1));
                let beta = residue.beta.get(t).cloned().unwrap_or_else(|| rat(0, 1));
                beta_graded &= beta == res.clone() * rat(t.len() as i64, 1);
                table.insert(
                    t.to_string(),
                    json!({
                        "nodes": t.len(),
                        "r_bar": b.r_bar.to_string(),
                        "counterterm": b.counterterm.to_string(),
                        "renormalized": b.renormalized.to_string(),
                        "finite_part": b.renormalized.finite_part().in_module(M)?.to_string(),
                        "res": res.to_string(),
                        "beta": beta.to_string(),
                    }),
                );
            }
            rep.check("C = −pole part of R̄ on every tree", recursion_agrees, table.len());
            rep.check("β = |t|·Res", beta_graded, table.len());
            rep.set("trees", Value::Object(table));
        }
        RenormCmd::Coproduct { tree } => {
            let t = parse_tree(tree)?;
            let terms: Vec<Value> = coproduct(&t)
                .iter()
                .map(|c| json!({"pruned": c.pruned.to_string(), "trunk": c.root.as_ref().map_or("1".to_string(), Tree::to_string)}))
                .collect();
            rep.check("(Δ ⊗ id)Δ = (id ⊗ Δ)Δ", is_coassociative_on(&t), terms.len());
            rep.set("terms", terms);
        }
        RenormCmd::Antipode { tree } => {
            let t = parse_tree(tree)?;
            let mut cache = AntipodeCache::default();
            let s = antipode(&t, &mut cache);
            let left = antipode_left_defect(&t, &mut cache);
            let right = antipode_right_defect(&t, &mut cache);
            rep.check("m(S ⊗ id)Δ = ε", left.is_empty(), left.len());
            rep.check("m(id ⊗ S)Δ = ε", right.is_empty(), right.len());
            let sum: Map<String, Value> = s.iter().map(|(f, c)| (f.to_string(), json!(c))).collect();
            rep.set("antipode", Value::Object(sum));
        }
        RenormCmd::Theta { t, l } => {
            let t = parse_rational(t).map_err(|e| usage("t", e.to_string()))?;
            let gamma = character(Rule::Ladder, &parse_l(l)?, nodes(cfg)?);
            let moved = theta_action(&t, &gamma);
            let (c0, c1) = (birkhoff(&gamma).in_module(M)?.minus, birkhoff(&moved).in_module(M)?.minus);
            rep.check("γ₋ is unchanged by θ_t", c0.agrees_with(&c1), t.to_string());
            let back = theta_action(&-t.clone(), &moved);
            rep.check("θ_{−t}θ_t = id", back.agrees_with(&gamma), true);
            // F_t from the counterterm is a one-parameter group.
            let (s, u) = (rat(1, 3), t.clone());
            let f = one_parameter(&c0, &(s.clone() + u.clone())).in_module(M)?;
            let g = one_parameter(&c0, &s).in_module(M)?.convolve(&one_parameter(&c0, &u).in_module(M)?).in_module(M)?;
            rep.check("F_{s+t} = F_s ⋆ F_t", f.agrees_with(&g), true);
        }
        RenormCmd::Scattering { t, nodes, l } => {
            if *nodes == 0 || *nodes > MAX_SCATTERING_NODES {
                return Err(usage("nodes", format!("between 1 and {MAX_SCATTERING_NODES}")));
            }
            let gamma = character(Rule::Ladder, &parse_l(l)?, *nodes);
            let r = scattering_check(&gamma, *t, *nodes).in_module(M)?;
            rep.check("t → ∞ limit equals γ₋", r.limit_matches, true);
            let seq = scattering_sequence(&gamma, t / 4.0, 3, *nodes).in_module(M)?;
            rep.check("distance decreases along t, 2t, 4t", seq.windows(2).all(|w| w[1].1 <= w[0].1), num(r.distance));
            rep.set("sequence", seq.iter().map(|&(t, d)| json!({"t": num(t), "distance": num(d)})).collect::<Vec<_>>());
        }
    }
    Ok(rep)
}
