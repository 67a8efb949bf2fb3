use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{NcgError, Result};

/// Absolute target handed to the quadrature, relative to the box area `Λ²`.
const QUADRATURE_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AreaReport {
    pub e: f64,
    pub lambda: f64,
    /// `½ ∫_D dp dq` by quadrature.
    pub numeric: f64,
    /// `(2E/2π) log Λ − (E/2π)(log(E/2π) − 1)`.
    pub closed_form: f64,
}

impl AreaReport {
    pub fn relative_gap(&self) -> f64 {
        (self.numeric - self.closed_form).abs() / self.closed_form.abs().max(f64::MIN_POSITIVE)
    }
}

/// Half the area of `{pq ≥ 0, |q| ≤ Λ, |p| ≤ Λ, |pq| ≤ E/2π}`.
///
/// Each of the two quadrants has height `min(Λ, c/q)` over `0 < q ≤ Λ` with
/// `c = E/2π`; the quadrature is split at the corner `q = c/Λ`.
pub fn semiclassical_area(e: f64, lambda: f64) -> Result<AreaReport> {
    if !(e > 0.0 && e.is_finite() && lambda.is_finite()) {
        return Err(NcgError::Parameter(format!("need finite E > 0 and Λ, got E = {e}, Λ = {lambda}")));
    }
    let c = e / (2.0 * PI);
    if lambda < c.sqrt() * (1.0 - 1e-12) {
        return Err(NcgError::Domain(format!("Λ = {lambda} is below √(E/2π) = {}: the hyperbola misses the box", c.sqrt())));
    }
    let corner = (c / lambda).min(lambda);
    let tol = QUADRATURE_TOL * lambda * lambda;
    let flat = quadrature::integrate(|_| lambda, 0.0, corner, tol).integral;
    let curved = if corner < lambda { quadrature::integrate(|q| c / q, corner, lambda, tol).integral } else { 0.0 };
    let quadrant = flat + curved;
    Ok(AreaReport { e, lambda, numeric: 0.5 * (2.0 * quadrant), closed_form: 2.0 * c * lambda.ln() - c * (c.ln() - 1.0) })
}
