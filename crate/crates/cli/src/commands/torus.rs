use std::f64::consts::PI;

use anyhow::Result;
use ncg_core::algebra_core::TorusElement;
use ncg_core::torus::{
    butterfly_sweep, curvature_exact, curvature_grid, curvature_hermite, delta, delta_unit, harper_spectrum, GaussPoly,
    Gen, GridVector, HermiteVector,
};
use ncg_core::scalar::Scalar;
use ncg_core::{rat, Cyclotomic, Rational};
use num_complex::Complex64;
use num_traits::{One, Zero};
use serde_json::json;

use super::{exact_phase, report_for, tol, usage, write_csv};
use crate::config::{parse_ratio, RunConfig, TorusCmd};
use crate::report::{num, Report};
use crate::InModule;

const M: &str = "torus";

fn harper_checks(rep: &mut Report, label: &str, ev: &[f64], q: usize, mu: f64, tol: f64) {
    let bound = 2.0 + 2.0 * mu;
    let widest = ev.iter().fold(0.0f64, |m, e| m.max(e.abs()));
    rep.within(format!("{label}: |E| ≤ 2 + 2μ"), widest, 0.0, bound + tol);
    rep.close(format!("{label}: tr H = 0"), ev.iter().sum(), 0.0, tol * q as f64);
    if q >= 3 {
        // Cross terms of (U + U* + μ(V + V*))² are traceless once q ≥ 3.
        let m2: f64 = ev.iter().map(|e| e * e).sum();
        let want = 2.0 * q as f64 * (1.0 + mu * mu);
        rep.close(format!("{label}: tr H² = 2q(1 + μ²)"), m2, want, tol * want);
    }
}

pub fn run(cfg: &RunConfig, cmd: &TorusCmd) -> Result<Report> {
    let mut rep = report_for(cfg);
    match cmd {
        TorusCmd::Butterfly { qmax, mu, out } => {
            let sweep = butterfly_sweep(*qmax, *mu).in_module(M)?;
            let bound = 2.0 + 2.0 * mu;
            let widest = sweep.rows.iter().fold(0.0f64, |m, r| m.max(r.eigenvalue.abs()));
            rep.within("|E| ≤ 2 + 2μ over the sweep", widest, 0.0, bound + tol(cfg, 1e-9));
            let expected_rows: usize = sweep.gaps.iter().map(|&(_, q, _)| q).sum();
            rep.check("one eigenvalue per row, q rows per θ", sweep.rows.len() == expected_rows, sweep.rows.len());
            rep.set("fractions", sweep.gaps.len());
            rep.set("gaps", sweep.gaps.iter().map(|&(p, q, g)| json!({"p": p, "q": q, "gaps": g})).collect::<Vec<_>>());
            if let Some(path) = out.as_ref().or(cfg.csv.as_ref()) {
                write_csv(path, &sweep.rows)?;
                rep.set("csv", path.display().to_string());
            }
        }
        TorusCmd::Curvature { theta } => {
            let (p, q) = parse_ratio("theta", theta)?;
            if p == 0 {
                return Err(usage("theta", "θ = 0 makes the connection singular"));
            }
            let exact = curvature_exact(&rat(p, q), &GaussPoly::gaussian(rat(1, 1))).in_module(M)?;
            rep.check("Ω/(2πi) = 1/θ exactly", exact.constant == rat(q, p), exact.constant.to_string());
            rep.check("θ·Ω/(2πi) = 1 exactly", exact.normalized_total == Rational::one(), exact.normalized_total.to_string());
            let th = p as f64 / q as f64;
            let (_, herm) = curvature_hermite(th, &HermiteVector::gaussian()).in_module(M)?;
            let want = 2.0 * PI / th;
            rep.close("Hermite backend: Im Ω", herm.ratio.im, want, tol(cfg, 1e-6) * want);
            rep.close("Hermite backend: Re Ω", herm.ratio.re, 0.0, tol(cfg, 1e-6) * want);
            rep.close("Hermite backend: θ·Ω/(2πi)", herm.normalized_total, 1.0, tol(cfg, 1e-6));
        }
        TorusCmd::Harper { p, q, mu } => {
            let ev = harper_spectrum(*p, *q, *mu).in_module(M)?;
            harper_checks(&mut rep, &format!("θ = {p}/{q}"), &ev, *q, *mu, tol(cfg, 1e-9));
            rep.set("spectrum", ev.iter().map(|&e| num(e)).collect::<Vec<_>>());
        }
        TorusCmd::Delta { theta, n, m } => {
            let phase = exact_phase("theta", theta)?;
            let x = TorusElement::<Cyclotomic>::monomial(phase, *n, *m, Cyclotomic::one());
            let y = TorusElement::<Cyclotomic>::u(phase).add(&TorusElement::v(phase)).in_module(M)?;
            for j in [1u8, 2] {
                let d = |a: &TorusElement<Cyclotomic>| delta_unit(j, a).in_module(M);
                let lhs = d(&x.mul(&y).in_module(M)?)?;
                let rhs = d(&x)?.mul(&y).in_module(M)?.add(&x.mul(&d(&y)?).in_module(M)?).in_module(M)?;
                rep.check(format!("δ{j}(xy) = δ{j}(x)y + xδ{j}(y)"), lhs == rhs, true);
                rep.check(format!("τ∘δ{j} = 0"), d(&x)?.trace().is_zero(), true);
                let want = if j == 1 { *n } else { *m };
                rep.check(format!("δ{j}/(2πi) U^nV^m = {want} U^nV^m"), d(&x)?.coeff(*n, *m) == Cyclotomic::from_i64(want), true);
            }
            // With floating coefficients δ carries its 2πi.
            let xf = TorusElement::<Complex64>::monomial(phase, *n, *m, Complex64::one());
            let d1 = delta(1, &xf).in_module(M)?.coeff(*n, *m);
            rep.close("δ₁ U^nV^m / U^nV^m (imaginary part)", d1.im, 2.0 * PI * *n as f64, tol(cfg, 1e-12) * (1.0 + d1.norm()));
        }
        TorusCmd::Module { theta } => {
            let th = *theta;
            let xi = GridVector::sample(|s| Complex64::new((-s * s).exp(), 0.0), th).in_module(M)?;
            let (xu, warn_u) = xi.act(Gen::U, th);
            let (xv, warn_v) = xi.act(Gen::V, th);
            let (xuv, _) = xu.act(Gen::V, th);
            let (xvu, _) = xv.act(Gen::U, th);
            // ((ξV)U)(s) = e^{2πi(s+θ)}ξ(s+θ) = e^{2πiθ}((ξU)V)(s).
            let resid = xuv.scale(Complex64::from_polar(1.0, 2.0 * PI * th)).sub(&xvu).max_abs_interior(1.0);
            rep.close("(ξV)U = e^{2πiθ}(ξU)V", resid, 0.0, tol(cfg, 1e-6));
            rep.warn_unless("no mass pushed off the grid", warn_u.is_none() && warn_v.is_none(), xu.tail().max(xv.tail()));
            let a = xi.connection(2, th).in_module(M)?.connection(1, th).in_module(M)?;
            let b = xi.connection(1, th).in_module(M)?.connection(2, th).in_module(M)?;
            let omega = a.sub(&b);
            let want = xi.scale(Complex64::new(0.0, 2.0 * PI / th));
            rep.close("[∇₁, ∇₂]ξ = (2πi/θ)ξ on the grid", omega.sub(&want).max_abs_interior(2.0), 0.0, tol(cfg, 1e-4) * 2.0 * PI / th);
            let (_, report) = curvature_grid(th, &xi).in_module(M)?;
            rep.close("grid backend: θ·Ω/(2πi)", report.normalized_total, 1.0, tol(cfg, 1e-4));
            rep.set("ratio", json!({"re": num(report.ratio.re), "im": num(report.ratio.im), "std": num(report.ratio_std)}));
        }
    }
    Ok(rep)
}
