//! The Schwartz-space module over the torus algebra, its connection, and curvature.
//!
//! Right action: `(ξU)(s) = ξ(s+θ)`, `(ξV)(s) = e^{2πis}ξ(s)`.
//! Connection: `∇₁ξ = −(2πis/θ)ξ`, `∇₂ξ = ξ'`, so `[∇₁, ∇₂] = 2πi/θ`.
//!
//! Three backends: a sampled grid (needed for the shift), a Hermite-function
//! expansion (multiplication by `s` and `d/ds` are exact ladder operators),
//! and an exact `P(s)·e^{−as²}` form with `P ∈ ℚ[s]`.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::error::{NcgError, Result};
use crate::poly::Poly;
use crate::scalar::{Field, Rational};

fn check_theta(theta: f64) -> Result<()> {
    if theta == 0.0 || !theta.is_finite() {
        Err(NcgError::Parameter("θ = 0 makes the connection singular".into()))
    } else {
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gen {
    U,
    V,
}

/// Samples `ξ(s_k)` on `s_k = −L + k·h`.
#[derive(Clone, Debug)]
pub struct GridVector {
    pub start: f64,
    pub step: f64,
    pub samples: Vec<Complex64>,
    pub tail_tol: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TruncationWarning {
    pub tail: f64,
    pub tol: f64,
}

impl GridVector {
    /// Default grid for parameter θ: `L = 10`, `h = θ/32`.
    pub fn sample(f: impl Fn(f64) -> Complex64, theta: f64) -> Result<Self> {
        check_theta(theta)?;
        Self::sample_on(f, 10.0, theta.abs() / 32.0)
    }

    pub fn sample_on(f: impl Fn(f64) -> Complex64, half_width: f64, step: f64) -> Result<Self> {
        if step <= 0.0 || half_width <= 0.0 {
            return Err(NcgError::Parameter("grid needs positive width and step".into()));
        }
        let n = (2.0 * half_width / step).round() as usize + 1;
        let samples = (0..n).map(|k| f(-half_width + k as f64 * step)).collect();
        Ok(GridVector { start: -half_width, step, samples, tail_tol: 1e-8 })
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.samples.len()).map(|k| self.start + k as f64 * self.step)
    }

    fn with_samples(&self, samples: Vec<Complex64>) -> Self {
        GridVector { samples, ..self.clone() }
    }

    pub fn tail(&self) -> f64 {
        let n = self.samples.len();
        self.samples[0].norm().max(self.samples[n - 1].norm())
    }

    /// Five-point Lagrange interpolation; zero outside the grid.
    pub fn value_at(&self, s: f64) -> Complex64 {
        let x = (s - self.start) / self.step;
        let n = self.samples.len() as isize;
        let k = x.round();
        if (x - k).abs() < 1e-9 {
            let k = k as isize;
            return if (0..n).contains(&k) { self.samples[k as usize] } else { Complex64::zero() };
        }
        let base = x.floor() as isize - 2;
        let mut acc = Complex64::zero();
        for i in 0..5isize {
            let idx = base + i;
            if !(0..n).contains(&idx) {
                continue;
            }
            let mut w = 1.0;
            for j in 0..5isize {
                if j != i {
                    w *= (x - (base + j) as f64) / ((i - j) as f64);
                }
            }
            acc += self.samples[idx as usize] * w;
        }
        acc
    }

    /// Right action of `U` or `V`; returns a warning when mass is pushed off the grid.
    pub fn act(&self, g: Gen, theta: f64) -> (Self, Option<TruncationWarning>) {
        let out = match g {
            Gen::U => self.with_samples(self.points().map(|s| self.value_at(s + theta)).collect()),
            Gen::V => self.with_samples(
                self.points()
                    .zip(&self.samples)
                    .map(|(s, x)| x * Complex64::from_polar(1.0, 2.0 * PI * s))
                    .collect(),
            ),
        };
        let tail = out.tail();
        let warn = (tail > self.tail_tol).then_some(TruncationWarning { tail, tol: self.tail_tol });
        (out, warn)
    }

    /// `∇₁` (pointwise) or `∇₂` (fourth-order central differences).
    pub fn connection(&self, j: u8, theta: f64) -> Result<Self> {
        check_theta(theta)?;
        match j {
            1 => Ok(self.with_samples(
                self.points()
                    .zip(&self.samples)
                    .map(|(s, x)| x * Complex64::new(0.0, -2.0 * PI * s / theta))
                    .collect(),
            )),
            2 => {
                let n = self.samples.len();
                let f = |k: isize| {
                    if (0..n as isize).contains(&k) { self.samples[k as usize] } else { Complex64::zero() }
                };
                let h = self.step;
                Ok(self.with_samples(
                    (0..n as isize)
                        .map(|k| (f(k - 2) - f(k - 1) * 8.0 + f(k + 1) * 8.0 - f(k + 2)) / (12.0 * h))
                        .collect(),
                ))
            }
            _ => Err(NcgError::Parameter(format!("connection index must be 1 or 2, got {j}"))),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.with_samples(self.samples.iter().zip(&other.samples).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: Complex64) -> Self {
        self.with_samples(self.samples.iter().map(|x| x * c).collect())
    }

    /// Largest deviation over points at least `margin` away from the grid ends.
    pub fn max_abs_interior(&self, margin: f64) -> f64 {
        self.points()
            .zip(&self.samples)
            .filter(|(s, _)| (s - self.start) >= margin && (self.start + (self.samples.len() - 1) as f64 * self.step - s) >= margin)
            .map(|(_, x)| x.norm())
            .fold(0.0, f64::max)
    }
}

/// Coefficients in the orthonormal Hermite functions `h_n(s) ∝ H_n(s)e^{−s²/2}`.
#[derive(Clone, Debug, PartialEq)]
pub struct HermiteVector {
    pub coeffs: Vec<Complex64>,
}

/// Values `h_0(s), …, h_{n−1}(s)` by the stable three-term recurrence.
pub fn hermite_functions(n: usize, s: f64) -> Vec<f64> {
    let mut h = vec![0.0; n.max(1)];
    h[0] = PI.powf(-0.25) * (-s * s / 2.0).exp();
    if n > 1 {
        h[1] = 2f64.sqrt() * s * h[0];
    }
    for k in 2..n {
        h[k] = (2.0 / k as f64).sqrt() * s * h[k - 1] - ((k - 1) as f64 / k as f64).sqrt() * h[k - 2];
    }
    h.truncate(n);
    h
}

impl HermiteVector {
    pub fn basis(n: usize) -> Self {
        let mut coeffs = vec![Complex64::zero(); n + 1];
        coeffs[n] = Complex64::one();
        HermiteVector { coeffs }
    }

    /// `e^{−s²/2} = π^{1/4} h₀`.
    pub fn gaussian() -> Self {
        HermiteVector { coeffs: vec![Complex64::new(PI.powf(0.25), 0.0)] }
    }

    /// Projects `f` onto `h_0 … h_{n−1}` by trapezoidal quadrature on `[−L, L]`.
    pub fn project(f: impl Fn(f64) -> Complex64, n: usize) -> Self {
        let (l, m) = (14.0, 4000);
        let h = 2.0 * l / m as f64;
        let mut coeffs = vec![Complex64::zero(); n];
        for k in 0..=m {
            let s = -l + k as f64 * h;
            let fs = f(s) * h;
            for (c, hn) in coeffs.iter_mut().zip(hermite_functions(n, s)) {
                *c += fs * hn;
            }
        }
        HermiteVector { coeffs }
    }

    pub fn eval(&self, s: f64) -> Complex64 {
        hermite_functions(self.coeffs.len(), s)
            .into_iter()
            .zip(&self.coeffs)
            .map(|(h, c)| c * h)
            .sum()
    }

    /// Multiplication by `s`: `s h_n = √(n/2) h_{n−1} + √((n+1)/2) h_{n+1}`.
    pub fn times_s(&self) -> Self {
        let mut out = vec![Complex64::zero(); self.coeffs.len() + 1];
        for (n, c) in self.coeffs.iter().enumerate() {
            if n > 0 {
                out[n - 1] += c * (n as f64 / 2.0).sqrt();
            }
            out[n + 1] += c * ((n + 1) as f64 / 2.0).sqrt();
        }
        HermiteVector { coeffs: out }
    }

    /// `h_n' = √(n/2) h_{n−1} − √((n+1)/2) h_{n+1}`.
    pub fn derivative(&self) -> Self {
        let mut out = vec![Complex64::zero(); self.coeffs.len() + 1];
        for (n, c) in self.coeffs.iter().enumerate() {
            if n > 0 {
                out[n - 1] += c * (n as f64 / 2.0).sqrt();
            }
            out[n + 1] -= c * ((n + 1) as f64 / 2.0).sqrt();
        }
        HermiteVector { coeffs: out }
    }

    pub fn connection(&self, j: u8, theta: f64) -> Result<Self> {
        check_theta(theta)?;
        match j {
            1 => Ok(self.times_s().scale(Complex64::new(0.0, -2.0 * PI / theta))),
            2 => Ok(self.derivative()),
            _ => Err(NcgError::Parameter(format!("connection index must be 1 or 2, got {j}"))),
        }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        HermiteVector { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |v: &[Complex64], k: usize| v.get(k).copied().unwrap_or_default();
        HermiteVector { coeffs: (0..n).map(|k| get(&self.coeffs, k) - get(&other.coeffs, k)).collect() }
    }

    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }
}

/// Result of a curvature computation in a float backend.
#[derive(Clone, Debug)]
pub struct CurvatureReport {
    /// Mean pointwise ratio `([∇₁,∇₂]ξ)/ξ`; expected `2πi/θ`.
    pub ratio: Complex64,
    /// Standard deviation of the pointwise ratio over sampled points.
    pub ratio_std: f64,
    /// `θ · Ω/(2πi)`; expected 1.
    pub normalized_total: f64,
}

fn ratio_stats(num: impl Fn(f64) -> Complex64, den: impl Fn(f64) -> Complex64, pts: impl Iterator<Item = f64>) -> Result<(Complex64, f64)> {
    let rs: Vec<Complex64> = pts
        .filter_map(|s| {
            let d = den(s);
            (d.norm() > 1e-3).then(|| num(s) / d)
        })
        .collect();
    if rs.is_empty() {
        return Err(NcgError::Degenerate("test vector vanishes on the sample points".into()));
    }
    let mean = rs.iter().sum::<Complex64>() / rs.len() as f64;
    let var = rs.iter().map(|r| (r - mean).norm_sqr()).sum::<f64>() / rs.len() as f64;
    Ok((mean, var.sqrt()))
}

pub fn curvature_hermite(theta: f64, xi: &HermiteVector) -> Result<(HermiteVector, CurvatureReport)> {
    check_theta(theta)?;
    if xi.norm() < 1e-12 {
        return Err(NcgError::Degenerate("ξ is zero".into()));
    }
    let a = xi.connection(2, theta)?.connection(1, theta)?;
    let b = xi.connection(1, theta)?.connection(2, theta)?;
    let omega = a.sub(&b);
    let pts = (0..81).map(|k| -4.0 + k as f64 * 0.1);
    let (ratio, std) = ratio_stats(|s| omega.eval(s), |s| xi.eval(s), pts)?;
    let normalized_total = theta * (ratio / Complex64::new(0.0, 2.0 * PI)).re;
    Ok((omega, CurvatureReport { ratio, ratio_std: std, normalized_total }))
}

pub fn curvature_grid(theta: f64, xi: &GridVector) -> Result<(GridVector, CurvatureReport)> {
    check_theta(theta)?;
    let a = xi.connection(2, theta)?.connection(1, theta)?;
    let b = xi.connection(1, theta)?.connection(2, theta)?;
    let omega = a.sub(&b);
    let n = xi.samples.len();
    let idx = |s: f64| (((s - xi.start) / xi.step).round() as usize).min(n - 1);
    let pts: Vec<f64> = xi.points().filter(|s| s.abs() <= 3.0).collect();
    let (ratio, std) = ratio_stats(|s| omega.samples[idx(s)], |s| xi.samples[idx(s)], pts.into_iter())?;
    let normalized_total = theta * (ratio / Complex64::new(0.0, 2.0 * PI)).re;
    Ok((omega, CurvatureReport { ratio, ratio_std: std, normalized_total }))
}

/// Exact test vector `P(s)·e^{−a s²}`.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussPoly {
    pub poly: Poly<Rational>,
    pub a: Rational,
}

impl GaussPoly {
    pub fn gaussian(a: Rational) -> Self {
        GaussPoly { poly: Poly::one(), a }
    }

    /// `∇₁/(2πi)`: multiplication by `−s/θ`.
    pub fn connection1_unit(&self, theta: &Rational) -> Result<Self> {
        if theta.is_zero() {
            return Err(NcgError::Parameter("θ = 0 makes the connection singular".into()));
        }
        Ok(GaussPoly { poly: self.poly.shift(1).scale(&-theta.inv()), a: self.a.clone() })
    }

    /// `∇₂ = d/ds`, acting as `P ↦ P' − 2asP`.
    pub fn connection2(&self) -> Self {
        let two_a = self.a.clone() * Rational::from_integer(2.into());
        GaussPoly { poly: self.poly.derivative() - self.poly.shift(1).scale(&two_a), a: self.a.clone() }
    }
}

/// Exact curvature data: `Ω/(2πi)` and the normalized total `θ·Ω/(2πi)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactCurvature {
    pub constant: Rational,
    pub normalized_total: Rational,
}

pub fn curvature_exact(theta: &Rational, xi: &GaussPoly) -> Result<ExactCurvature> {
    if xi.poly.is_zero() {
        return Err(NcgError::Degenerate("ξ is zero".into()));
    }
    let a = xi.connection2().connection1_unit(theta)?;
    let b = xi.connection1_unit(theta)?.connection2();
    let omega = a.poly - b.poly;
    // Ω/(2πi) must be a constant multiple of ξ; find it from the leading coefficients.
    let deg = xi.poly.degree().unwrap_or(0);
    let c = omega.coeff(deg) / xi.poly.coeff(deg);
    if omega != xi.poly.scale(&c) {
        return Err(NcgError::Degenerate("curvature is not a scalar multiple of ξ".into()));
    }
    Ok(ExactCurvature { normalized_total: theta.clone() * c.clone(), constant: c })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn hermite_ladder_matches_recurrence_oracle() {
        // d/ds h_3 = √(3/2) h_2 − √2 h_4, checked pointwise against finite differences.
        let d = HermiteVector::basis(3).derivative();
        assert!((d.coeffs[2].re - 1.5f64.sqrt()).abs() < 1e-15);
        assert!((d.coeffs[4].re + 2f64.sqrt()).abs() < 1e-15);
        for s in [-1.3, 0.2, 2.1] {
            let e = 1e-5;
            let h = |x: f64| hermite_functions(5, x)[3];
            let fd = (h(s + e) - h(s - e)) / (2.0 * e);
            assert!((d.eval(s).re - fd).abs() < 1e-8);
        }
    }

    #[test]
    fn gaussian_curvature_is_constant() {
        let theta = 1.0 / 3.0;
        let (_, rep) = curvature_hermite(theta, &HermiteVector::gaussian()).unwrap();
        assert!((rep.ratio - Complex64::new(0.0, 6.0 * PI)).norm() < 1e-6);
        assert!(rep.ratio_std < 1e-9);
        let (_, rep3) = curvature_hermite(theta, &HermiteVector::basis(3).scale(Complex64::new(1.0, 0.0))).unwrap();
        assert!((rep3.ratio - rep.ratio).norm() < 1e-6);
    }

    #[test]
    fn exact_total_curvature_is_one() {
        let c = curvature_exact(&rat(2, 7), &GaussPoly::gaussian(rat(1, 1))).unwrap();
        assert_eq!(c.constant, rat(7, 2));
        assert_eq!(c.normalized_total, rat(1, 1));
        assert!(curvature_exact(&rat(0, 1), &GaussPoly::gaussian(rat(1, 1))).is_err());
    }

    #[test]
    fn grid_shift_substitution() {
        let theta = 0.25;
        let xi = GridVector::sample(|s| Complex64::new((-s * s).exp(), 0.0), theta).unwrap();
        let (xu, warn) = xi.act(Gen::U, theta);
        assert!(warn.is_none());
        for (s, v) in xu.points().zip(&xu.samples).step_by(97) {
            assert!((v.re - (-(s + theta) * (s + theta)).exp()).abs() < 1e-12);
        }
    }

    #[test]
    fn half_shift_twice_is_unit_shift() {
        let xi = GridVector::sample(|s| Complex64::new((-s * s).exp(), 0.0), 0.5).unwrap();
        let (a, _) = xi.act(Gen::U, 0.5);
        let (b, _) = a.act(Gen::U, 0.5);
        for (s, v) in b.points().zip(&b.samples).step_by(31) {
            assert!((v.re - (-(s + 1.0) * (s + 1.0)).exp()).abs() < 1e-12);
        }
    }

    #[test]
    fn tail_violation_is_reported() {
        let xi = GridVector::sample_on(|s| Complex64::new((-(s - 9.0) * (s - 9.0)).exp(), 0.0), 10.0, 0.01).unwrap();
        let (_, warn) = xi.act(Gen::U, -1.0);
        assert!(warn.is_some());
    }

    #[test]
    fn zero_theta_is_singular() {
        assert!(HermiteVector::gaussian().connection(1, 0.0).is_err());
        assert!(curvature_hermite(0.3, &HermiteVector { coeffs: vec![Complex64::zero()] }).is_err());
    }
}
