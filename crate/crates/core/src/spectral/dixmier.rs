//! Dixmier trace estimates from characteristic values, and the Weyl-law check for
//! Dirichlet Laplacians on rectangles.
//!
//! `τ_Λ(T) = (1/log Λ) ∫_e^Λ Trace_μ(T)/log μ dμ/μ` with `Trace_N = Σ_{n<N} μ_n`
//! interpolated affinely between integers. For `Trace_μ = a log μ + b + o(1)` one gets
//! `τ_Λ = a − a/log Λ + b·log log Λ/log Λ + …`, so `τ_Λ` reaches its limit only at rate
//! `1/log Λ`. [`dixmier_integral`] fits that form over a doubling schedule of `Λ`
//! and reports the constant term.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{NcgError, Result};

/// Number of points `Λ, Λ/2, …` in one extrapolation window.
pub const SCHEDULE_LEN: usize = 6;
/// Smallest `Λ` accepted by [`dixmier_integral`]: two windows must stay above `e`.
pub const MIN_SCHEDULE_LAMBDA: f64 = 256.0;
/// Relative drift between consecutive windows accepted as stabilized.
pub const STABILIZATION_TOL: f64 = 0.02;

// Five-point Gauss–Legendre rule on [−1, 1].
const GL_NODES: [f64; 5] = [0.0, -0.538_469_310_105_683_1, 0.538_469_310_105_683_1, -0.906_179_845_938_664, 0.906_179_845_938_664];
const GL_WEIGHTS: [f64; 5] = [
    0.568_888_888_888_888_9,
    0.478_628_670_499_366_5,
    0.478_628_670_499_366_5,
    0.236_926_885_056_189_1,
    0.236_926_885_056_189_1,
];

fn check_sequence(mu: &[f64]) -> Result<()> {
    if let Some(i) = mu.iter().position(|x| !x.is_finite() || *x < 0.0) {
        return Err(NcgError::Parameter(format!("characteristic value {i} is not a nonnegative number")));
    }
    if let Some(i) = mu.windows(2).position(|w| w[1] > w[0]) {
        return Err(NcgError::Parameter(format!("characteristic values increase at index {}", i + 1)));
    }
    Ok(())
}

/// Values `∫_e^N Trace_μ/log μ dμ/μ` at every integer `N ≥ 3`.
struct CesaroTable {
    cumulative: Vec<f64>,
    trace: Vec<f64>,
    mu: Vec<f64>,
}

impl CesaroTable {
    fn new(mu: &[f64], upto: usize) -> Self {
        let mut trace = vec![0.0; upto + 1];
        for n in 0..upto {
            trace[n + 1] = trace[n] + mu[n];
        }
        let mut t = CesaroTable { cumulative: vec![0.0; upto + 1], trace, mu: mu[..upto].to_vec() };
        if upto >= 3 {
            t.cumulative[3] = t.piece(2, std::f64::consts::E, 3.0);
            for n in 3..upto {
                t.cumulative[n + 1] = t.cumulative[n] + t.piece(n, n as f64, n as f64 + 1.0);
            }
        }
        t
    }

    /// `∫_a^b (Trace_N + (μ − N)μ_N)/(μ log μ) dμ` for `N ≤ a < b ≤ N + 1`.
    fn piece(&self, n: usize, a: f64, b: f64) -> f64 {
        let constant = self.trace[n] * (b.ln() / a.ln()).ln();
        let (mid, half) = ((a + b) / 2.0, (b - a) / 2.0);
        let slope: f64 = GL_NODES
            .iter()
            .zip(GL_WEIGHTS)
            .map(|(x, w)| {
                let m = mid + half * x;
                w * (m - n as f64) / (m * m.ln())
            })
            .sum();
        constant + self.mu[n] * half * slope
    }

    fn tau(&self, lambda: f64) -> f64 {
        let n = lambda.floor() as usize;
        let integral = if n < 3 {
            self.piece(2, std::f64::consts::E, lambda)
        } else if (lambda - n as f64) > 0.0 {
            self.cumulative[n] + self.piece(n, n as f64, lambda)
        } else {
            self.cumulative[n]
        };
        integral / lambda.ln()
    }
}

fn needed(lambda: f64) -> usize {
    lambda.ceil() as usize
}

/// `τ_Λ` for characteristic values `μ_0 ≥ μ_1 ≥ …`.
pub fn dixmier_tau(mu: &[f64], lambda: f64) -> Result<f64> {
    if !(lambda > std::f64::consts::E) || !lambda.is_finite() {
        return Err(NcgError::Domain(format!("Λ = {lambda} must exceed e")));
    }
    check_sequence(mu)?;
    if mu.len() < needed(lambda) {
        return Err(NcgError::DataExhausted { needed: needed(lambda), have: mu.len() });
    }
    Ok(CesaroTable::new(mu, needed(lambda)).tau(lambda))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DixmierEstimate {
    pub lambda: f64,
    /// `τ_Λ` itself.
    pub tau_lambda: f64,
    /// `(Λ/2^j, τ_{Λ/2^j})` for both windows, largest `Λ` first.
    pub schedule: Vec<(f64, f64)>,
    /// Constant term of the fit over `Λ, …, Λ/2^{SCHEDULE_LEN−1}`.
    pub value: f64,
    /// `|value − value'|` with `value'` from the window one doubling lower.
    pub drift: f64,
}

impl DixmierEstimate {
    pub fn relative_drift(&self) -> f64 {
        self.drift / self.value.abs().max(1e-300)
    }
}

/// Least-squares fit of `τ + A/ℓ + B log ℓ/ℓ`, `ℓ = log Λ`; returns `τ`.
fn extrapolate(points: &[(f64, f64)]) -> f64 {
    let a = DMatrix::from_fn(points.len(), 3, |i, j| {
        let l = points[i].0.ln();
        [1.0, 1.0 / l, l.ln() / l][j]
    });
    let b = DVector::from_iterator(points.len(), points.iter().map(|p| p.1));
    a.svd(true, true).solve(&b, 1e-14).expect("requested")[0]
}

/// The Dixmier integral `∫T` estimated from `τ_Λ` on a doubling schedule ending at `Λ`.
pub fn dixmier_integral(mu: &[f64], lambda: f64) -> Result<DixmierEstimate> {
    if !(lambda >= MIN_SCHEDULE_LAMBDA) || !lambda.is_finite() {
        return Err(NcgError::Domain(format!("Λ = {lambda} is below the schedule minimum {MIN_SCHEDULE_LAMBDA}")));
    }
    check_sequence(mu)?;
    if mu.len() < needed(lambda) {
        return Err(NcgError::DataExhausted { needed: needed(lambda), have: mu.len() });
    }
    let table = CesaroTable::new(mu, needed(lambda));
    let schedule: Vec<(f64, f64)> = (0..=SCHEDULE_LEN)
        .map(|j| {
            let l = lambda / 2f64.powi(j as i32);
            (l, table.tau(l))
        })
        .collect();
    let value = extrapolate(&schedule[..SCHEDULE_LEN]);
    let lower = extrapolate(&schedule[1..]);
    Ok(DixmierEstimate { lambda, tau_lambda: schedule[0].1, schedule, value, drift: (value - lower).abs() })
}

/// Each `1/|n|`, `n ≠ 0`, twice: the characteristic values of `|D|⁻¹` on the circle.
pub fn circle_inverse_dirac(count: usize) -> Vec<f64> {
    (0..count).map(|i| 1.0 / (i / 2 + 1) as f64).collect()
}

/// The `count` smallest Dirichlet eigenvalues `π²(m²/a² + k²/b²)` of `[0, a] × [0, b]`.
pub fn dirichlet_eigenvalues(a: f64, b: f64, count: usize) -> Result<Vec<f64>> {
    if !(a > 0.0 && b > 0.0) || !a.is_finite() || !b.is_finite() {
        return Err(NcgError::Parameter("sides must be positive".into()));
    }
    let mut cut = 4.0 * PI * count as f64 / (a * b) * 1.1 + PI * PI * (1.0 / (a * a) + 1.0 / (b * b));
    loop {
        let mut values = Vec::new();
        let mut m = 1.0f64;
        while PI * PI * m * m / (a * a) < cut {
            let kmax = (b * (cut / (PI * PI) - m * m / (a * a)).sqrt()).floor() as usize;
            values.extend((1..=kmax).map(|k| PI * PI * (m * m / (a * a) + (k * k) as f64 / (b * b))));
            m += 1.0;
        }
        if values.len() >= count {
            values.sort_by(f64::total_cmp);
            values.truncate(count);
            return Ok(values);
        }
        cut *= 1.2;
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WeylReport {
    pub side_a: f64,
    pub side_b: f64,
    pub n_eigs: usize,
    pub weight: f64,
    /// `∫ f dp` with `dp = Δ⁻¹`.
    pub integral: f64,
    /// `∫ f dp / area`.
    pub ratio: f64,
    /// `τ_Λ / area` without extrapolation.
    pub literal_ratio: f64,
    /// The Weyl-law constant `1/(4π)`.
    pub weyl_constant: f64,
    pub drift: f64,
}

/// `∫ f dp / area(Ω)` for a constant weight `f` and `Ω = [0, a] × [0, b]`.
pub fn weyl_dart_check_weighted(a: f64, b: f64, n_eigs: usize, weight: f64) -> Result<WeylReport> {
    if (n_eigs as f64) < MIN_SCHEDULE_LAMBDA {
        return Err(NcgError::DataExhausted { needed: MIN_SCHEDULE_LAMBDA as usize, have: n_eigs });
    }
    let mu: Vec<f64> = dirichlet_eigenvalues(a, b, n_eigs)?.iter().map(|l| 1.0 / l).collect();
    let est = dixmier_integral(&mu, n_eigs as f64)?;
    if est.relative_drift() > STABILIZATION_TOL {
        return Err(NcgError::Convergence(format!("Dixmier estimate drifts by {:.3} between windows", est.relative_drift())));
    }
    let area = a * b;
    Ok(WeylReport {
        side_a: a,
        side_b: b,
        n_eigs,
        weight,
        integral: weight * est.value,
        ratio: weight * est.value / area,
        literal_ratio: weight * est.tau_lambda / area,
        weyl_constant: 1.0 / (4.0 * PI),
        drift: weight * est.drift,
    })
}

pub fn weyl_dart_check(a: f64, b: f64, n_eigs: usize) -> Result<WeylReport> {
    weyl_dart_check_weighted(a, b, n_eigs, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn harmonic(n: usize) -> Vec<f64> {
        (1..=n).map(|k| 1.0 / k as f64).collect()
    }

    /// Trapezoid rule in `u = log μ` on a fine grid, straight from the definition.
    fn tau_oracle(mu: &[f64], lambda: f64) -> f64 {
        let trace = |x: f64| {
            let n = x.floor() as usize;
            mu[..n].iter().sum::<f64>() + (x - n as f64) * mu[n]
        };
        let steps = 200_000;
        let (u0, u1) = (1.0, lambda.ln());
        let h = (u1 - u0) / steps as f64;
        let f = |u: f64| trace(u.exp()) / u;
        let inner: f64 = (1..steps).map(|i| f(u0 + i as f64 * h)).sum();
        (inner + 0.5 * (f(u0) + f(u1))) * h / u1
    }

    #[test]
    fn literal_tau_matches_definition() {
        let mu = harmonic(2000);
        for lambda in [10.0, 123.4, 1000.0] {
            let got = dixmier_tau(&mu, lambda).unwrap();
            assert!((got - tau_oracle(&mu, lambda)).abs() < 1e-6, "{lambda}: {got}");
        }
    }

    #[test]
    fn harmonic_series_converges_to_one() {
        let est = dixmier_integral(&harmonic(10_000), 1e4).unwrap();
        assert!((est.value - 1.0).abs() < 0.02, "{est:?}");
        // τ_Λ itself is still 4% high at this Λ.
        assert!(est.tau_lambda > 1.03);
    }

    #[test]
    fn order_two_sequence_has_zero_integral() {
        let mu: Vec<f64> = (1..=10_000).map(|k| 1.0 / (k * k) as f64).collect();
        let est = dixmier_integral(&mu, 1e4).unwrap();
        assert!(est.value.abs() < 0.01, "{est:?}");
    }

    #[test]
    fn circle_inverse_dirac_gives_two() {
        let est = dixmier_integral(&circle_inverse_dirac(10_000), 1e4).unwrap();
        assert!((est.value - 2.0).abs() < 0.04, "{est:?}");
    }

    #[test]
    fn errors() {
        let mu = harmonic(100);
        assert!(matches!(dixmier_tau(&mu, 2.0), Err(NcgError::Domain(_))));
        assert_eq!(dixmier_tau(&mu, 150.5), Err(NcgError::DataExhausted { needed: 151, have: 100 }));
        assert!(matches!(dixmier_tau(&[1.0, 2.0, 0.5], 2.9), Err(NcgError::Parameter(_))));
        assert!(matches!(dixmier_integral(&harmonic(1000), 100.0), Err(NcgError::Domain(_))));
    }

    #[test]
    fn dirichlet_spectrum_of_unit_square() {
        let ev = dirichlet_eigenvalues(1.0, 1.0, 4).unwrap();
        let p2 = PI * PI;
        assert_eq!(ev, vec![2.0 * p2, 5.0 * p2, 5.0 * p2, 8.0 * p2]);
    }

    #[test]
    fn zero_weight_gives_zero() {
        let r = weyl_dart_check_weighted(1.0, 1.0, 20_000, 0.0).unwrap();
        assert_eq!(r.integral, 0.0);
    }

    #[test]
    fn too_few_eigenvalues_do_not_stabilize() {
        assert!(matches!(weyl_dart_check(1.0, 1.0, 300), Err(NcgError::Convergence(_))));
    }
}
