//! Clock-and-shift representations and the Harper operator `U + U* + μ(V + V*)`.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{NcgError, Result};

pub const DEFAULT_MAX_Q: usize = 1000;

/// `U = diag(1, ω, …, ω^{q−1})` and the cyclic shift `V`, with `ω = e^{2πip/q}`.
#[derive(Clone, Debug)]
pub struct ClockShiftRep {
    pub p: i64,
    pub q: usize,
    pub u: DMatrix<Complex64>,
    pub v: DMatrix<Complex64>,
}

fn check_pq(p: i64, q: usize, max_q: usize) -> Result<()> {
    if q == 0 {
        return Err(NcgError::Parameter("q must be positive".into()));
    }
    if q > max_q {
        return Err(NcgError::Size { size: q, budget: max_q });
    }
    if p.gcd(&(q as i64)) != 1 && !(p == 0 && q == 1) {
        return Err(NcgError::Parameter(format!("{p}/{q} is not reduced")));
    }
    Ok(())
}

impl ClockShiftRep {
    pub fn new(p: i64, q: usize) -> Result<Self> {
        check_pq(p, q, DEFAULT_MAX_Q)?;
        let omega = |k: usize| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * (p * k as i64) as f64 / q as f64);
        let u = DMatrix::from_fn(q, q, |i, j| if i == j { omega(i) } else { Complex64::new(0.0, 0.0) });
        // V e_j = e_{j−1}, so that V U = ω U V.
        let v = DMatrix::from_fn(q, q, |i, j| if (i + 1) % q == j { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) });
        Ok(ClockShiftRep { p, q, u, v })
    }

    pub fn omega(&self) -> Complex64 {
        Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * self.p as f64 / self.q as f64)
    }

    /// `‖VU − ωUV‖_max`.
    pub fn relation_residual(&self) -> f64 {
        let r = &self.v * &self.u - &self.u * &self.v * self.omega();
        r.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn harper_matrix(&self, mu: f64) -> DMatrix<Complex64> {
        let mu = Complex64::new(mu, 0.0);
        &self.u + self.u.adjoint() + (&self.v + self.v.adjoint()) * mu
    }
}

/// The real symmetric form of the Harper matrix: `2cos(2πpk/q)` on the
/// diagonal plus `μ` times the cyclic shift and its transpose.
pub fn harper_real(p: i64, q: usize, mu: f64) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(q, q);
    for k in 0..q {
        m[(k, k)] = 2.0 * (2.0 * std::f64::consts::PI * (p * k as i64) as f64 / q as f64).cos();
        m[((k + 1) % q, k)] += mu;
        m[(k, (k + 1) % q)] += mu;
    }
    m
}

/// Sorted eigenvalues of the Harper operator at θ = p/q.
pub fn harper_spectrum(p: i64, q: usize, mu: f64) -> Result<Vec<f64>> {
    harper_spectrum_with_budget(p, q, mu, DEFAULT_MAX_Q)
}

pub fn harper_spectrum_with_budget(p: i64, q: usize, mu: f64, max_q: usize) -> Result<Vec<f64>> {
    check_pq(p, q, max_q)?;
    let m = harper_real(p, q, mu);
    let mut ev: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    Ok(ev)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ButterflyRow {
    pub theta_num: i64,
    pub theta_den: usize,
    pub eigenvalue_index: usize,
    pub eigenvalue: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ButterflySweep {
    pub rows: Vec<ButterflyRow>,
    /// `(p, q, gap count)` per θ.
    pub gaps: Vec<(i64, usize, usize)>,
}

/// Number of gaps between distinct eigenvalue clusters.
pub fn gap_count(spectrum: &[f64], tol: f64) -> usize {
    spectrum.windows(2).filter(|w| w[1] - w[0] > tol).count()
}

/// All reduced `p/q ∈ [0, 1)` with `q ≤ q_max`, in increasing `(q, p)` order.
pub fn reduced_fractions(q_max: usize) -> Vec<(i64, usize)> {
    let mut out = vec![(0, 1)];
    for q in 2..=q_max {
        for p in 1..q as i64 {
            if p.gcd(&(q as i64)) == 1 {
                out.push((p, q));
            }
        }
    }
    out
}

pub fn butterfly_sweep(q_max: usize, mu: f64) -> Result<ButterflySweep> {
    if q_max < 2 {
        return Err(NcgError::Parameter("q_max must be at least 2".into()));
    }
    let fracs = reduced_fractions(q_max);
    let spectra: Vec<Vec<f64>> = fracs
        .par_iter()
        .map(|&(p, q)| harper_spectrum(p, q, mu))
        .collect::<Result<_>>()?;
    let mut rows = Vec::new();
    let mut gaps = Vec::new();
    for (&(p, q), spec) in fracs.iter().zip(&spectra) {
        gaps.push((p, q, gap_count(spec, 1e-9)));
        rows.extend(spec.iter().enumerate().map(|(i, &e)| ButterflyRow {
            theta_num: p,
            theta_den: q,
            eigenvalue_index: i,
            eigenvalue: e,
        }));
    }
    Ok(ButterflySweep { rows, gaps })
}

/// Euler's totient.
pub fn totient(n: usize) -> usize {
    if n == 1 {
        return 1;
    }
    (1..n).filter(|k| k.gcd(&n) == 1).count()
}
