use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{NcgError, Result};

/// Largest ordinate the accelerated series is sized for.
pub const MAX_T: f64 = 200.0;

/// `B_{2k} / (2k(2k − 1))` for the Stirling series.
const STIRLING: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
];

/// `ln Γ(z)` for `Re z > 0`, continuous in `Im z`: Stirling's series after shifting
/// the argument past 10.
pub fn ln_gamma(z: Complex64) -> Complex64 {
    let mut shift = Complex64::new(0.0, 0.0);
    let mut w = z;
    while w.norm() < 10.0 {
        shift += w.ln();
        w += 1.0;
    }
    let mut series = Complex64::new(0.0, 0.0);
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut p = inv;
    for c in STIRLING {
        series += p * c;
        p *= inv2;
    }
    (w - 0.5) * w.ln() - w + 0.5 * (2.0 * PI).ln() + series - shift
}

/// `θ(t) = arg Γ(¼ + it/2) − (t/2) ln π`, the phase making `e^{iθ}ζ(½ + it)` real.
pub fn riemann_siegel_theta(t: f64) -> f64 {
    ln_gamma(Complex64::new(0.25, 0.5 * t)).im - 0.5 * t * PI.ln()
}

/// `η(s) = Σ_{k≥0} (−1)^k (k + 1)^{−s}`, accelerated with Chebyshev weights over `n` terms.
fn eta(s: Complex64, n: usize) -> Complex64 {
    let mut d = (3.0 + 8f64.sqrt()).powi(n as i32);
    d = 0.5 * (d + 1.0 / d);
    let mut b = -1.0;
    let mut c = -d;
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 0..n {
        c = b - c;
        sum += (-s * ((k + 1) as f64).ln()).exp() * c;
        let kf = k as f64;
        let nf = n as f64;
        b *= (kf + nf) * (kf - nf) / ((kf + 0.5) * (kf + 1.0));
    }
    sum / d
}

/// Terms needed for `|t| ≤ MAX_T`: the weights lose `e^{π|t|/2}` against `(3 + √8)^n`.
fn terms_for(t: f64) -> usize {
    (1.3 * t.abs()).ceil() as usize + 30
}

/// `ζ(s)` on `0 < Re s < 1`, `|Im s| ≤ MAX_T`, through `ζ = η / (1 − 2^{1−s})`.
pub fn zeta(s: Complex64) -> Result<Complex64> {
    if !(s.re > 0.0 && s.re < 1.0) || s.im.abs() > MAX_T || !s.im.is_finite() {
        return Err(NcgError::Range(format!("ζ({s}) is outside 0 < Re s < 1, |Im s| ≤ {MAX_T}")));
    }
    let denom = Complex64::new(1.0, 0.0) - (Complex64::new(1.0, 0.0) - s).expf(2.0);
    Ok(eta(s, terms_for(s.im)) / denom)
}

/// `e^{iθ(t)} ζ(½ + it)`; the imaginary part is roundoff.
pub fn hardy_z_complex(t: f64) -> Result<Complex64> {
    if !(t > 0.0 && t <= MAX_T) {
        return Err(NcgError::Range(format!("t = {t} is outside (0, {MAX_T}]")));
    }
    Ok(Complex64::from_polar(1.0, riemann_siegel_theta(t)) * zeta(Complex64::new(0.5, t))?)
}

/// Hardy's function `Z(t)`, real with `|Z(t)| = |ζ(½ + it)|`.
pub fn hardy_z(t: f64) -> Result<f64> {
    Ok(hardy_z_complex(t)?.re)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_at_known_points() {
        assert!((ln_gamma(Complex64::new(0.5, 0.0)).re - 0.5 * PI.ln()).abs() < 1e-13);
        assert!(ln_gamma(Complex64::new(5.0, 0.0)).re - 24f64.ln() < 1e-13);
        // |Γ(½ + iy)|² = π / cosh(πy)
        let y = 3.7;
        let g = ln_gamma(Complex64::new(0.5, y));
        assert!((2.0 * g.re - (PI / (PI * y).cosh()).ln()).abs() < 1e-12);
    }

    #[test]
    fn zeta_off_the_line() {
        // ζ(½) = −1.4603545088095868
        let z = zeta(Complex64::new(0.5, 0.0)).unwrap();
        assert!((z.re + 1.4603545088095868).abs() < 1e-12 && z.im.abs() < 1e-15);
    }

    #[test]
    fn z_is_real_and_in_range() {
        for k in 1..200 {
            let t = k as f64 + 0.37;
            let z = hardy_z_complex(t).unwrap();
            assert!(z.im.abs() < 1e-10, "t = {t}: {z}");
        }
        assert!(hardy_z(0.0).is_err());
        assert!(hardy_z(200.5).is_err());
    }
}
