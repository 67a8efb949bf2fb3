//! Counting zeros of ζ on the critical line against the smooth counting term, the
//! prime-sum oscillation and the semiclassical phase-space area.

mod area;
mod counting;
mod hardy;
mod zeros;

pub use area::{semiclassical_area, AreaReport};
pub use counting::{
    compare, count_below, osc_correlation, osc_prime_sum, pearson, smooth_n, CompareRow, DEFAULT_RESOLUTION,
};
pub use hardy::{hardy_z, hardy_z_complex, ln_gamma, riemann_siegel_theta, zeta, MAX_T};
pub use zeros::{count_zeros, ZeroCount, ZeroList, BISECTION_TOL, MISSED_PAIR_DENSITY};
