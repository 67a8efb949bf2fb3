use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{NcgError, Result};
use crate::zeta_lab::zeros::{count_zeros, ZeroList};

/// Scan spacing used when counting for comparisons.
pub const DEFAULT_RESOLUTION: f64 = 0.05;

/// `(E/2π)(log(E/2π) − 1) + 7/8`.
pub fn smooth_n(e: f64) -> Result<f64> {
    if !(e > 0.0 && e.is_finite()) {
        return Err(NcgError::Domain(format!("E must be positive, got {e}")));
    }
    let x = e / (2.0 * PI);
    Ok(x * (x.ln() - 1.0) + 7.0 / 8.0)
}

/// `−(1/π) Σ_{p ≤ p_max} Σ_{m ≤ m_max} (1/m) p^{−m/2} sin(mE log p)`.
pub fn osc_prime_sum(e: f64, p_max: u64, m_max: u32) -> f64 {
    -prime_sum_magnitude(e, p_max, m_max) / PI
}

fn prime_sum_magnitude(e: f64, p_max: u64, m_max: u32) -> f64 {
    primal::Primes::all()
        .take_while(|&p| p as u64 <= p_max)
        .map(|p| {
            let lp = (p as f64).ln();
            (1..=m_max)
                .map(|m| {
                    let m = m as f64;
                    (-0.5 * m * lp).exp() * (m * e * lp).sin() / m
                })
                .sum::<f64>()
        })
        .sum()
}

/// Number of listed ordinates strictly below `e`.
pub fn count_below(zeros: &ZeroList, e: f64) -> usize {
    zeros.ordinates.partition_point(|&t| t < e)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CompareRow {
    pub e: f64,
    pub n: usize,
    pub smooth: f64,
    pub osc_measured: f64,
    pub osc_predicted: f64,
}

/// Counts, smooth part, measured oscillation `N − smooth` and the truncated prime sum on a grid.
pub fn compare(grid: &[f64], p_max: u64, m_max: u32) -> Result<Vec<CompareRow>> {
    let top = grid.iter().copied().fold(f64::NAN, f64::max);
    if grid.is_empty() || !top.is_finite() {
        return Err(NcgError::Parameter("empty E grid".into()));
    }
    let zeros = count_zeros(top, DEFAULT_RESOLUTION)?.zeros;
    grid.iter()
        .map(|&e| {
            let n = count_below(&zeros, e);
            let smooth = smooth_n(e)?;
            Ok(CompareRow { e, n, smooth, osc_measured: n as f64 - smooth, osc_predicted: osc_prime_sum(e, p_max, m_max) })
        })
        .collect()
}

/// Pearson correlation coefficient.
pub fn pearson(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() || x.len() < 2 {
        return Err(NcgError::Parameter("correlation needs two samples of equal length ≥ 2".into()));
    }
    let n = x.len() as f64;
    let (mx, my) = (x.iter().sum::<f64>() / n, y.iter().sum::<f64>() / n);
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(NcgError::Degenerate("constant sample has no correlation".into()));
    }
    Ok(sxy / (sxx * syy).sqrt())
}

/// Correlation between measured and predicted oscillation over the rows.
pub fn osc_correlation(rows: &[CompareRow]) -> Result<f64> {
    let measured: Vec<f64> = rows.iter().map(|r| r.osc_measured).collect();
    let predicted: Vec<f64> = rows.iter().map(|r| r.osc_predicted).collect();
    pearson(&measured, &predicted)
}
