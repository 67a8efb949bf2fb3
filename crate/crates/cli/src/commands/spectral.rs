use std::f64::consts::{PI, TAU};

use anyhow::Result;
use ncg_core::spectral::{
    check_real_structure, circle_inverse_dirac, circle_shift, circle_triple, distance, distance_with, dixmier_integral,
    dixmier_tau, index_pup, local_index_coefficient, local_index_rational, spectral_action_count, weyl_dart_check,
    CMat, DistanceOptions, FiniteSpectralTriple, State, MAX_CIRCLE_N,
};
use ncg_core::zeta_lab::ln_gamma;
use num_complex::Complex64;
use serde_json::json;

use super::{report_for, tol, usage};
use crate::config::{parse_list, Domain, RunConfig, SpectralCmd, TripleKind};
use crate::report::{num, Report};
use crate::InModule;

const M: &str = "spectral";

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// `ℂ²` with multiplicity two, `D` coupling the copies of each point, and `J = conj`.
fn doubled_two_point(m: f64) -> ncg_core::Result<FiniteSpectralTriple> {
    let z = c(0.0);
    let d = CMat::from_row_slice(4, 4, &[z, c(m), z, z, c(m), z, z, z, z, z, z, c(m), z, z, c(m), z]);
    let gamma = CMat::from_fn(4, 4, |i, j| if i != j { z } else if i % 2 == 0 { c(1.0) } else { c(-1.0) });
    FiniteSpectralTriple::points(d, &[2, 2])?.with_grading(gamma)?.with_real_structure(CMat::identity(4, 4))
}

fn check_circle_n(n: usize) -> Result<()> {
    if n < 2 || n > MAX_CIRCLE_N {
        return Err(usage("n", format!("circle truncation must lie in 2..={MAX_CIRCLE_N}")));
    }
    Ok(())
}

/// `Γ(x)` for `x > 0` through the complex log-gamma.
fn gamma(x: f64) -> f64 {
    ln_gamma(c(x)).re.exp()
}

pub fn run(cfg: &RunConfig, cmd: &SpectralCmd) -> Result<Report> {
    let mut rep = report_for(cfg);
    match cmd {
        SpectralCmd::Distance { triple: TripleKind::TwoPoint, m, .. } => {
            let t = FiniteSpectralTriple::two_point(*m).in_module(M)?;
            let (p, q) = (State::Point(0), State::Point(1));
            let closed = distance(&t, &p, &q).in_module(M)?;
            let opts = DistanceOptions { analytic: false, ..DistanceOptions::default() };
            let solved = distance_with(&t, &p, &q, &opts).in_module(M)?;
            let tl = tol(cfg, 1e-6);
            rep.close("d = 1/m", closed.value, 1.0 / m, tl / m);
            rep.close("optimizer agrees with the closed form", solved.value, closed.value, tl * closed.value);
            rep.check("lower ≤ value ≤ upper", solved.lower_bound <= solved.value && solved.value <= solved.upper_bound, num(solved.upper_bound - solved.lower_bound));
            rep.data = serde_json::to_value(&solved)?;
        }
        SpectralCmd::Distance { triple: TripleKind::Circle, n, x, y, .. } => {
            check_circle_n(*n)?;
            let t = circle_triple(*n).in_module(M)?;
            let r = distance(&t, &State::Angle(*x), &State::Angle(*y)).in_module(M)?;
            let arc = {
                let s = (y - x).rem_euclid(TAU);
                s.min(TAU - s)
            };
            let tl = tol(cfg, 0.03);
            // Truncation blurs separations below a few mode spacings; see the README.
            rep.warn_unless("within tolerance of the geodesic distance", (r.value - arc).abs() <= tl * arc.max(1e-12), num(r.value));
            rep.check("lower ≤ value ≤ upper", r.lower_bound <= r.value && r.value <= r.upper_bound, num(r.upper_bound - r.lower_bound));
            rep.data = serde_json::to_value(&r)?;
        }
        SpectralCmd::Dixmier { domain, n } => match domain {
            Domain::Circle => {
                if *n < 1025 {
                    return Err(usage("n", "need at least 1025 eigenvalues"));
                }
                let mu = circle_inverse_dirac(*n);
                let lambda = ((*n - 1) / 2) as f64;
                let est = dixmier_integral(&mu, lambda).in_module(M)?;
                let raw = dixmier_tau(&mu, lambda).in_module(M)?;
                rep.close("∫|D|⁻¹ = 2 on the circle", est.value, 2.0, tol(cfg, 0.02) * 2.0);
                rep.set("tau_lambda", num(raw));
                rep.set("drift", num(est.drift));
            }
            Domain::Square | Domain::Rectangle => {
                let a = if *domain == Domain::Square { 1.0 } else { 2.0 };
                let w = weyl_dart_check(a, 1.0, *n).in_module(M)?;
                let weyl = 1.0 / (4.0 * PI);
                rep.close("∫Δ⁻¹ / area = 1/(4π)", w.ratio, weyl, tol(cfg, 0.05) * weyl);
                rep.set("weyl", serde_json::to_value(&w)?);
            }
        },
        SpectralCmd::Index { n, winding } => {
            check_circle_n(*n)?;
            if winding.unsigned_abs() as usize >= *n {
                return Err(usage("winding", "must be smaller than the truncation"));
            }
            let t = circle_triple(*n).in_module(M)?;
            let idx = index_pup(&t, &circle_shift(*n, *winding)).in_module(M)?;
            rep.check("Index(PUP) = −winding", idx == -winding, idx);
        }
        SpectralCmd::Real { m, dim } => {
            let t = doubled_two_point(*m).in_module(M)?;
            let r = check_real_structure(&t, *dim).in_module(M)?;
            rep.check("J² = ε", r.j_squared.passed, num(r.j_squared.residual));
            rep.check("JD = ε′DJ", r.j_dirac.passed, num(r.j_dirac.residual));
            if let Some(g) = r.j_grading {
                rep.check("Jγ = ε″γJ", g.passed, num(g.residual));
            }
            rep.check("[a, Jb*J⁻¹] = 0", r.commutant.passed, num(r.commutant.residual));
            rep.check("[[D, a], Jb*J⁻¹] = 0", r.order_one.passed, num(r.order_one.residual));
            rep.set("signs", json!({"epsilon": r.signs.epsilon, "epsilon_prime": r.signs.epsilon_prime, "epsilon_second": r.signs.epsilon_second}));
        }
        SpectralCmd::LocalIndex { n, k } => {
            let k: Vec<u32> = parse_list("k", k)?;
            let got = local_index_coefficient(*n, &k).in_module(M)?;
            let r = local_index_rational(*n, &k).in_module(M)?;
            // Direct evaluation of the closed form with Γ from the log-gamma routine.
            let total: u32 = k.iter().sum();
            let mut denom = 1.0;
            let mut partial = 0u32;
            for (j, &kj) in k.iter().enumerate() {
                partial += kj;
                denom *= gamma(kj as f64 + 1.0) * (partial as f64 + j as f64 + 1.0);
            }
            let sign = if total % 2 == 1 { -1.0 } else { 1.0 };
            let want = Complex64::new(1.0, 1.0) * sign * gamma(total as f64 + *n as f64 / 2.0) / denom;
            let tl = tol(cfg, 1e-10) * want.norm().max(1.0);
            rep.close("Re c_{n,k}", got.re, want.re, tl);
            rep.close("Im c_{n,k}", got.im, want.im, tl);
            rep.set("rational_part", r.to_string());
        }
        SpectralCmd::Action { n, lambda } => {
            check_circle_n(*n)?;
            let t = circle_triple(*n).in_module(M)?;
            let count = spectral_action_count(&t, *lambda);
            let want = 2 * (lambda.floor() as usize).min(*n) + 1;
            rep.check("#{|λ| ≤ Λ} = 2⌊Λ⌋ + 1", count == want, count);
        }
    }
    Ok(rep)
}
