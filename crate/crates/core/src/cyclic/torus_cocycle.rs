//! The torus 2-cocycle `φ(a⁰, a¹, a²) = τ(a⁰(δ₁a¹δ₂a² − δ₂a¹δ₁a²))` and its
//! pairing with a Powers–Rieffel projection.

use serde::Serialize;

use crate::algebra_core::{Phase, TorusElement};
use crate::cyclic::Cochain;
use crate::error::{NcgError, Result};
use crate::scalar::ComplexScalar;
use crate::torus::delta_unit;

/// The cocycle with `δ_j` replaced by `δ_j/(2πi)`, so values stay exact.
pub fn torus_cocycle_value<C: ComplexScalar>(a0: &TorusElement<C>, a1: &TorusElement<C>, a2: &TorusElement<C>) -> Result<C> {
    let (d1a1, d2a1) = (delta_unit(1, a1)?, delta_unit(2, a1)?);
    let (d1a2, d2a2) = (delta_unit(1, a2)?, delta_unit(2, a2)?);
    let inner = d1a1.mul(&d2a2)?.sub(&d2a1.mul(&d1a2)?)?;
    Ok(a0.mul(&inner)?.trace())
}

/// Dense cocycle on the span of the given monomials `U^nV^m`.
pub fn torus_cocycle<C: ComplexScalar>(phase: Phase, monomials: &[(i64, i64)]) -> Result<Cochain<C>> {
    let basis: Vec<TorusElement<C>> = monomials.iter().map(|&(n, m)| TorusElement::monomial(phase, n, m, C::one())).collect();
    let d = basis.len();
    let mut values = Vec::with_capacity(d * d * d);
    for x in &basis {
        for y in &basis {
            for z in &basis {
                values.push(torus_cocycle_value(x, y, z)?);
            }
        }
    }
    Cochain::from_values(d, 2, values)
}

/// `(bφ)(a⁰, a¹, a², a³)` using the torus product.
pub fn torus_cocycle_coboundary<C: ComplexScalar>(a: [&TorusElement<C>; 4]) -> Result<C> {
    let v = |x: &TorusElement<C>, y: &TorusElement<C>, z: &TorusElement<C>| torus_cocycle_value(x, y, z);
    Ok(v(&a[0].mul(a[1])?, a[2], a[3])? - v(a[0], &a[1].mul(a[2])?, a[3])? + v(a[0], a[1], &a[2].mul(a[3])?)?
        - v(&a[3].mul(a[0])?, a[1], a[2])?)
}

/// Monomials `U^nV^m` with `|n|, |m| ≤ r`.
pub fn monomial_box(r: i64) -> Vec<(i64, i64)> {
    (-r..=r).flat_map(|n| (-r..=r).map(move |m| (n, m))).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct PairingReport {
    pub theta: f64,
    /// `τ(e)`, which should equal θ.
    pub trace: f64,
    /// `⟨φ, Ch₁(e)⟩ = (2πi)⁻¹ τ((e − ½)[δ₁e, δ₂e])`.
    pub chern: f64,
    pub nearest_integer: i64,
    /// `max |e² − e|` over the grid.
    pub idempotent_residual: f64,
}

/// `ψ(s) = exp(−1/s)` glued into a smooth step `h` on `[0, 1]` with its derivative.
fn smooth_step(s: f64) -> (f64, f64) {
    let psi = |x: f64| if x > 0.0 { (-1.0 / x).exp() } else { 0.0 };
    let dpsi = |x: f64| if x > 0.0 { (-1.0 / x).exp() / (x * x) } else { 0.0 };
    let (a, b) = (psi(s), psi(1.0 - s));
    let den = a + b;
    (a / den, (dpsi(s) * b + a * dpsi(1.0 - s)) / (den * den))
}

/// Coefficient functions of `e = gV + f + V*g`, sampled with derivatives.
struct Projection {
    /// `(value, derivative)` of `f` and `g`.
    f: Vec<(f64, f64)>,
    g: Vec<(f64, f64)>,
}

fn build(theta: f64, eps: f64, n: usize) -> Projection {
    use std::f64::consts::PI;
    let mut f = vec![(0.0, 0.0); n];
    let mut g = vec![(0.0, 0.0); n];
    for j in 0..n {
        let x = j as f64 / n as f64;
        if x < eps {
            let (h, dh) = smooth_step(x / eps);
            let s = (PI * h / 2.0).sin().powi(2);
            f[j] = (s, (PI * h).sin() * PI / 2.0 * dh / eps);
            g[j] = (0.5 * (PI * h).sin(), 0.5 * (PI * h).cos() * PI * dh / eps);
        } else if x < theta {
            f[j] = (1.0, 0.0);
        } else if x < theta + eps {
            let (h, dh) = smooth_step((x - theta) / eps);
            f[j] = ((PI * h / 2.0).cos().powi(2), -(PI * h).sin() * PI / 2.0 * dh / eps);
        }
    }
    Projection { f, g }
}

/// Elements `Σ_k a_k(x) V^k`, `|k| ≤ 2`, sampled on the grid; index `k + 2`.
type GridElem = Vec<Vec<f64>>;

fn grid_mul(a: &GridElem, b: &GridElem, shift: usize) -> GridElem {
    let n = a[0].len();
    let mut out = vec![vec![0.0; n]; 5];
    for (ia, ca) in a.iter().enumerate() {
        for (ib, cb) in b.iter().enumerate() {
            let k = ia as i64 + ib as i64 - 4;
            if !(-2..=2).contains(&k) || ca.iter().all(|v| *v == 0.0) {
                continue;
            }
            let s = ((ia as i64 - 2) * shift as i64).rem_euclid(n as i64) as usize;
            let o = &mut out[(k + 2) as usize];
            for j in 0..n {
                o[j] += ca[j] * cb[(j + s) % n];
            }
        }
    }
    out
}

/// Pairs the torus 2-cocycle with `Ch₁` of the Powers–Rieffel projection at
/// `θ = p/q`, with transition width `eps < θ` and `q · points_per_q` grid points.
pub fn powers_rieffel_pairing(p: i64, q: i64, eps: f64, points_per_q: usize) -> Result<PairingReport> {
    if q <= 0 || p <= 0 || p >= q {
        return Err(NcgError::Parameter("need 0 < p/q < 1".into()));
    }
    let theta = p as f64 / q as f64;
    if !(eps > 0.0 && eps < theta && 2.0 * theta + eps <= 1.0) {
        return Err(NcgError::Parameter(format!("eps must satisfy 0 < eps < θ and 2θ + eps ≤ 1 (θ = {theta})")));
    }
    let n = q as usize * points_per_q;
    let shift = p as usize * points_per_q;
    let pr = build(theta, eps, n);
    let back = |v: &Vec<(f64, f64)>, d: bool| -> Vec<f64> {
        (0..n).map(|j| { let w = v[(j + n - shift) % n]; if d { w.1 } else { w.0 } }).collect()
    };
    let val = |v: &Vec<(f64, f64)>, d: bool| -> Vec<f64> { v.iter().map(|w| if d { w.1 } else { w.0 }).collect() };
    let zero = vec![0.0; n];
    let e: GridElem = vec![zero.clone(), back(&pr.g, false), val(&pr.f, false), val(&pr.g, false), zero.clone()];
    let d1e: GridElem = vec![zero.clone(), back(&pr.g, true), val(&pr.f, true), val(&pr.g, true), zero.clone()];
    let d2e: GridElem = e.iter().enumerate().map(|(i, c)| c.iter().map(|v| v * (i as f64 - 2.0)).collect()).collect();
    let mean = |v: &[f64]| v.iter().sum::<f64>() / n as f64;
    let e2 = grid_mul(&e, &e, shift);
    let idempotent_residual = e2.iter().zip(&e).flat_map(|(a, b)| a.iter().zip(b).map(|(x, y)| (x - y).abs())).fold(0.0, f64::max);
    let comm: GridElem = {
        let a = grid_mul(&d1e, &d2e, shift);
        let b = grid_mul(&d2e, &d1e, shift);
        a.iter().zip(&b).map(|(x, y)| x.iter().zip(y).map(|(u, v)| u - v).collect()).collect()
    };
    let mut e_half = e.clone();
    for v in e_half[2].iter_mut() {
        *v -= 0.5;
    }
    // δ₁ = d/dx already carries 2πi relative to U∂/∂U; δ₂ = 2πi·k, so the 2πi cancels.
    let chern = mean(&grid_mul(&e_half, &comm, shift)[2]);
    Ok(PairingReport {
        theta,
        trace: mean(&e[2]),
        chern,
        nearest_integer: chern.round() as i64,
        idempotent_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic::is_cyclic;
    use crate::Cyclotomic;
    use crate::Scalar;
    use num_traits::Zero;

    #[test]
    fn torus_cocycle_is_cyclic_on_a_box() {
        let ph = Phase::rational(1, 5).unwrap();
        let phi = torus_cocycle::<Cyclotomic>(ph, &monomial_box(1)).unwrap();
        assert!(is_cyclic(&phi));
        assert!(!phi.is_zero());
    }

    #[test]
    fn torus_cocycle_is_closed() {
        let ph = Phase::rational(2, 5).unwrap();
        let basis: Vec<TorusElement<Cyclotomic>> =
            monomial_box(1).into_iter().map(|(n, m)| TorusElement::monomial(ph, n, m, Cyclotomic::from_i64(1))).collect();
        for a in &basis {
            for b in &basis {
                for c in &basis {
                    for d in basis.iter().step_by(2) {
                        assert!(torus_cocycle_coboundary([a, b, c, d]).unwrap().is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn value_on_generators() {
        // φ(V*U*, U, V) = τ(V*U*·UV) = 1.
        let ph = Phase::rational(1, 3).unwrap();
        let u = TorusElement::<Cyclotomic>::u(ph);
        let v = TorusElement::<Cyclotomic>::v(ph);
        let a0 = v.star().unwrap().mul(&u.star().unwrap()).unwrap();
        assert_eq!(torus_cocycle_value(&a0, &u, &v).unwrap(), Cyclotomic::from_i64(1));
    }

    #[test]
    fn powers_rieffel_is_a_projection_with_integer_chern_number() {
        let r = powers_rieffel_pairing(1, 5, 0.15, 4000).unwrap();
        assert!(r.idempotent_residual < 1e-12, "{r:?}");
        assert!((r.trace - 0.2).abs() < 1e-9, "{r:?}");
        assert_eq!(r.nearest_integer.abs(), 1);
        assert!((r.chern - r.nearest_integer as f64).abs() < 1e-6, "{r:?}");
    }

    #[test]
    fn bad_width_rejected() {
        assert!(powers_rieffel_pairing(1, 5, 0.3, 100).is_err());
        assert!(powers_rieffel_pairing(0, 5, 0.1, 100).is_err());
    }
}
