use rayon::prelude::*;
use serde::Serialize;

use crate::error::{NcgError, Result};
use crate::zeta_lab::counting::smooth_n;
use crate::zeta_lab::hardy::{hardy_z, MAX_T};

/// Bisection stops once the bracket is this narrow.
pub const BISECTION_TOL: f64 = 1e-6;

/// Expected zeros in a stretch with no sign change before it is flagged.
pub const MISSED_PAIR_DENSITY: f64 = 2.0;

/// Ordinates of critical-line zeros in `(0, E]`, each bracketed by a sign change of `Z`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZeroList {
    pub ordinates: Vec<f64>,
    pub resolution: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZeroCount {
    pub e: f64,
    pub count: usize,
    pub zeros: ZeroList,
    /// Midpoints of zero-free stretches over which the smooth counting term grows by at
    /// least [`MISSED_PAIR_DENSITY`]: a pair closer than the resolution may hide there.
    pub suspected_missed: Vec<f64>,
}

impl ZeroCount {
    pub fn warning(&self) -> bool {
        !self.suspected_missed.is_empty()
    }
}

fn bisect(mut a: f64, mut b: f64, mut za: f64) -> Result<f64> {
    while b - a > BISECTION_TOL {
        let m = 0.5 * (a + b);
        let zm = hardy_z(m)?;
        if zm == 0.0 {
            return Ok(m);
        }
        if (zm > 0.0) == (za > 0.0) {
            a = m;
            za = zm;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}

/// Sign changes of `Z` on a grid of spacing `resolution` over `(0, E]`, each refined by
/// bisection to [`BISECTION_TOL`].
pub fn count_zeros(e: f64, resolution: f64) -> Result<ZeroCount> {
    if !(e > 0.0 && e <= MAX_T) {
        return Err(NcgError::Range(format!("E = {e} is outside (0, {MAX_T}]")));
    }
    if !(resolution > 0.0 && resolution.is_finite()) {
        return Err(NcgError::Parameter(format!("resolution must be positive, got {resolution}")));
    }
    let steps = (e / resolution).ceil() as usize;
    let grid: Vec<f64> = (1..=steps).map(|k| (k as f64 * resolution).min(e)).collect();
    let values: Vec<f64> = grid.par_iter().map(|&t| hardy_z(t)).collect::<Result<_>>()?;
    let brackets: Vec<usize> = (1..grid.len()).filter(|&k| (values[k - 1] > 0.0) != (values[k] > 0.0)).collect();
    let ordinates: Vec<f64> = brackets
        .par_iter()
        .map(|&k| if values[k] == 0.0 { Ok(grid[k]) } else { bisect(grid[k - 1], grid[k], values[k - 1]) })
        .collect::<Result<_>>()?;
    let mut suspected_missed = Vec::new();
    let ends: Vec<f64> = ordinates.iter().copied().chain(std::iter::once(e)).collect();
    for w in ends.windows(2) {
        if smooth_n(w[1])? - smooth_n(w[0])? >= MISSED_PAIR_DENSITY {
            suspected_missed.push(0.5 * (w[0] + w[1]));
        }
    }
    Ok(ZeroCount {
        e,
        count: ordinates.len(),
        zeros: ZeroList { ordinates, resolution },
        suspected_missed,
    })
}
