use anyhow::Result;
use ncg_core::cyclic::{
    algebra_by_name, characteristic_map, AlgebraCochains, check_identities, chern_character, connes_b, group_cocycle_cochain,
    hochschild_b, hopf_b, hopf_cyclic_ops, is_cyclic, lambda_module_check, lambda_normal_form, lattice_box, pair,
    symmetrizer, trace_cochain, Cochain, CyclicModule, FinAlgebra, GroupCochain, HopfAction, HopfCyclic, HopfData,
    LambdaGen, LambdaMorphism, Lattice,
};
use ncg_core::linalg::{nullspace, Mat};
use ncg_core::{rat, Rational};
use num_traits::{One, Zero};
use rand::Rng;
use serde_json::json;

use super::{report_for, rng, usage};
use crate::config::{CyclicCmd, RunConfig};
use crate::report::Report;
use crate::InModule;

const M: &str = "cyclic";

/// Parses generators `d<i>`, `s<j>`, `t` into a composite starting at `[source]`.
pub fn parse_lambda(source: usize, word: &str) -> Result<LambdaMorphism> {
    let toks: Vec<&str> = word.split_whitespace().collect();
    if toks.is_empty() {
        return Ok(LambdaMorphism::identity(source));
    }
    let mut cur = source;
    let mut gens = Vec::with_capacity(toks.len());
    for tok in toks.iter().rev() {
        let index = || tok[1..].parse::<usize>().map_err(|_| usage("word", format!("bad generator {tok:?}")));
        let g = match tok.chars().next() {
            Some('d') => {
                cur += 1;
                LambdaGen::Face { n: cur, i: index()? }
            }
            Some('s') if cur > 0 => {
                cur -= 1;
                LambdaGen::Degen { n: cur, j: index()? }
            }
            Some('t') if tok.len() == 1 => LambdaGen::Cyc { n: cur },
            _ => return Err(usage("word", format!("bad generator {tok:?} at [{cur}]"))),
        };
        gens.push(g);
    }
    gens.reverse();
    LambdaMorphism::new(gens).in_module(M)
}

fn mat_mul(a: &Mat<Rational>, b: &Mat<Rational>) -> Mat<Rational> {
    (0..a.len())
        .map(|i| (0..b[0].len()).map(|j| (0..b.len()).fold(Rational::zero(), |acc, k| acc + &a[i][k] * &b[k][j])).collect())
        .collect()
}

fn is_identity(m: &Mat<Rational>) -> bool {
    m.iter().enumerate().all(|(i, r)| r.iter().enumerate().all(|(j, x)| *x == if i == j { Rational::one() } else { Rational::zero() }))
}

/// Column `c` is `f(e_c)`.
fn matrix_of(dim: usize, f: impl Fn(&[Rational]) -> Vec<Rational>) -> Mat<Rational> {
    let cols: Vec<Vec<Rational>> = (0..dim)
        .map(|c| f(&(0..dim).map(|i| if i == c { Rational::one() } else { Rational::zero() }).collect::<Vec<_>>()))
        .collect();
    let rows = cols.first().map_or(0, Vec::len);
    (0..rows).map(|r| cols.iter().map(|col| col[r].clone()).collect()).collect()
}

fn area(g: &[Lattice]) -> Rational {
    rat(g[0].0[0] * g[1].0[1] - g[0].0[1] * g[1].0[0], 1)
}

pub fn run(cfg: &RunConfig, cmd: &CyclicCmd) -> Result<Report> {
    let mut rep = report_for(cfg);
    let mut rng = rng(cfg);
    match cmd {
        CyclicCmd::Check { algebra, degree } => {
            let alg: FinAlgebra<Rational> = algebra_by_name(algebra).in_module(M)?;
            let lambda_degree = cfg.order.unwrap_or(4).min(4);
            let r = check_identities(algebra, &alg, *degree, lambda_degree, &mut rng).in_module(M)?;
            for c in &r.identities {
                let tag = if c.normalized { " (normalized)" } else { "" };
                rep.check(format!("{} in degree {}{tag}", c.identity, c.degree), c.pass, json!(c.witness));
            }
            for c in &r.lambda_relations {
                rep.check(format!("Λ: {} at [{}]", c.relation, c.degree), c.pass, json!(c.witness));
            }
            // B lands in cyclic cochains, and b preserves them.
            let phi = Cochain::random(alg.dim(), (*degree).min(2), &mut rng).in_module(M)?;
            rep.check("Bφ is cyclic", is_cyclic(&connes_b(&alg, &phi).in_module(M)?), true);
            let sym = symmetrizer(&phi);
            rep.check("b(Aφ) is cyclic", is_cyclic(&hochschild_b(&alg, &sym).in_module(M)?), true);
        }
        CyclicCmd::Chern { n, mask } => {
            let alg: FinAlgebra<Rational> = FinAlgebra::functions_on_cyclic(*n).in_module(M)?;
            let counting = vec![Rational::one(); *n];
            let e: Vec<Rational> = (0..*n).map(|k| rat(((mask >> k) & 1) as i64, 1)).collect();
            let tau0 = trace_cochain(&alg, &counting, 0).in_module(M)?;
            let ch0 = chern_character(&alg, &vec![vec![e.clone()]], 0).in_module(M)?;
            let value = pair(&tau0, &ch0).in_module(M)?;
            let want = rat(mask.count_ones() as i64, 1) - rat(*n as i64, 2);
            rep.check("⟨τ, ch₀(e)⟩ = rank − n/2", value == want, value.to_string());
            // τ(a⁰a¹a²) is cyclic; on a projection it sums τ(e³ − ½e²) = rank/2.
            let tau2 = trace_cochain(&alg, &counting, 2).in_module(M)?;
            let ch1 = chern_character(&alg, &vec![vec![e]], 1).in_module(M)?;
            let v2 = pair(&tau2, &ch1).in_module(M)?;
            rep.check("⟨τ₂, ch₁(e)⟩ = rank/2", v2 == rat(mask.count_ones() as i64, 2), v2.to_string());
        }
        CyclicCmd::Lambda { source, word } => {
            let m = parse_lambda(*source, word)?;
            let nf = lambda_normal_form(&m);
            rep.check("normal form is normal", nf.is_normal(), nf.to_string());
            rep.check("normal form independent of rewrite order", m.normal_form_random(&mut rng) == nf, nf.to_string());
            // Both words must act alike on the cochains of a noncommutative algebra.
            let m2: FinAlgebra<Rational> = algebra_by_name("m2").in_module(M)?;
            let cochains = AlgebraCochains::new(&m2);
            let x: Vec<Rational> = (0..cochains.object_dim(*source)).map(|_| rat(rng.gen_range(-3..=3), 1)).collect();
            let same = cochains.apply_morphism(&m, &x) == cochains.apply_morphism(&nf, &x);
            rep.check("same action on M₂ cochains", same, json!(nf.simplicial_map()));
            rep.set("input", m.to_string());
            rep.set("normal_form", nf.to_string());
        }
        CyclicCmd::LambdaModule { algebra, n_max } => {
            let alg: FinAlgebra<Rational> = algebra_by_name(algebra).in_module(M)?;
            let r = lambda_module_check(&alg, *n_max, &mut rng).in_module(M)?;
            for c in &r.checks {
                rep.check(format!("{} at [{}]", c.relation, c.degree), c.pass, json!(c.witness));
            }
        }
        CyclicCmd::Hopf { group, sigma_power, dual_point, degree } => {
            let h: HopfData<Rational> = match dual_point {
                Some(p) => HopfData::functions_on_cyclic(*group, *p),
                None => HopfData::cyclic_group(*group, *sigma_power, vec![Rational::one(); *group]),
            }
            .in_module(M)?;
            let witness = h.involution_witness();
            rep.check("(σ⁻¹S̃)² = id", witness.is_none(), json!(witness));
            for i in 0..h.dim() {
                let e = h.algebra().basis(i);
                let st = h.twisted_antipode(&e);
                rep.set(&format!("twisted_antipode[{}]", h.algebra().label(i)), st.iter().map(|c| c.to_string()).collect::<Vec<_>>());
            }
            if witness.is_none() {
                for n in 0..=*degree {
                    let ops = hopf_cyclic_ops(&h, n).in_module(M)?;
                    let mut p = ops.tau.clone();
                    for _ in 0..n {
                        p = mat_mul(&p, &ops.tau);
                    }
                    rep.check(format!("τ_{n}^{} = id", n + 1), is_identity(&p), ops.tau.len());
                }
            }
        }
        CyclicCmd::GroupCocycle { radius } => {
            if *radius < 1 || *radius > 3 {
                return Err(usage("radius", "between 1 and 3"));
            }
            let span = lattice_box(*radius);
            let phi = GroupCochain::new(&span, 2, area).in_module(M)?;
            let witness = phi.cocycle_witness(&span);
            rep.check("c is a group 2-cocycle", witness.is_none(), json!(witness.map(|w| w.into_iter().map(|g| g.0).collect::<Vec<_>>())));
            let dense = group_cocycle_cochain(&span, 2, area).in_module(M)?;
            rep.check("φ_c is cyclic", is_cyclic(&dense), dense.len());
            rep.check("φ_c is nonzero", !dense.is_zero(), dense.len());
        }
        CyclicCmd::Characteristic { group, degree } => {
            let h: HopfData<Rational> = HopfData::cyclic_group(*group, 0, vec![Rational::one(); *group]).in_module(M)?;
            let a: FinAlgebra<Rational> = FinAlgebra::functions_on_cyclic(*group).in_module(M)?;
            let act = HopfAction::translation(*group);
            let tau = vec![Rational::one(); *group];
            let m = HopfCyclic::new(&h).in_module(M)?;
            let mut images = 0;
            for n in 1..=*degree {
                // Hopf-cyclic cocycles: kernel of b stacked with 1 − λ, λ = (−1)^n τ_n.
                let dim = m.object_dim(n);
                let sign = if n % 2 == 0 { rat(1, 1) } else { rat(-1, 1) };
                let mut stacked = matrix_of(dim, |x| hopf_b(&m, n, x));
                let lam = matrix_of(dim, |x| m.cyclic(n, x).into_iter().map(|c| c * sign.clone()).collect());
                for (r, row) in lam.iter().enumerate() {
                    stacked.push(row.iter().enumerate().map(|(c, v)| if r == c { Rational::one() - v } else { -v.clone() }).collect());
                }
                for k in nullspace(&stacked, 0.0) {
                    let gamma = characteristic_map(&h, &a, &act, &tau, n, &k).in_module(M)?;
                    rep.check(format!("degree {n}: bγ = 0"), hochschild_b(&a, &gamma).in_module(M)?.is_zero(), images);
                    rep.check(format!("degree {n}: γ cyclic"), is_cyclic(&gamma), images);
                    images += 1;
                }
            }
            // A random element of H^{⊗1} still maps to a cochain, cocycle or not.
            let x: Vec<Rational> = (0..h.dim()).map(|_| rat(rng.gen_range(-3..=3), 1)).collect();
            characteristic_map(&h, &a, &act, &tau, 1, &x).in_module(M)?;
            rep.set("cocycles_mapped", images);
        }
    }
    Ok(rep)
}
