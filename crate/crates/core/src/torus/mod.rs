//! Differential geometry of the noncommutative torus.

pub mod derivation;
pub mod harper;
pub mod schwartz;

pub use derivation::{delta, delta_unit};
pub use harper::{butterfly_sweep, gap_count, harper_spectrum, ButterflyRow, ButterflySweep, ClockShiftRep};
pub use schwartz::{
    curvature_exact, curvature_grid, curvature_hermite, CurvatureReport, ExactCurvature, GaussPoly, Gen, GridVector,
    HermiteVector, TruncationWarning,
};
