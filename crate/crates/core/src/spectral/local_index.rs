//! Coefficients `c_{n,k}` of the odd local index cocycle.
//!
//! For odd `n` the Gamma factor sits at a half integer, `Γ(m + ½) = (2m)! √π / (4^m m!)`,
//! so `c_{n,k}` is an exact rational times `√(2i) √π = (1 + i) √π`.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive};

use crate::error::{NcgError, Result};
use crate::scalar::Rational;

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, j| acc * j)
}

fn check(n: usize, k: &[u32]) -> Result<()> {
    if n % 2 == 0 {
        return Err(NcgError::Parameter(format!("n = {n} must be odd")));
    }
    if k.len() != n {
        return Err(NcgError::Parameter(format!("multi-index has {} entries, expected {n}", k.len())));
    }
    Ok(())
}

/// The rational `r` with `c_{n,k} = r · (1 + i) √π`.
pub fn local_index_rational(n: usize, k: &[u32]) -> Result<Rational> {
    check(n, k)?;
    let total: u64 = k.iter().map(|&x| x as u64).sum();
    let m = total + (n as u64 - 1) / 2;
    let gamma = Rational::new(factorial(2 * m), BigInt::from(4).pow(m as u32) * factorial(m));
    let mut denom = BigInt::one();
    let mut partial = 0u64;
    for (j, &kj) in k.iter().enumerate() {
        partial += kj as u64;
        denom *= factorial(kj as u64) * (partial + j as u64 + 1);
    }
    let value = gamma / Rational::from_integer(denom);
    Ok(if total % 2 == 1 { -value } else { value })
}

/// `c_{n,k} = (−1)^{|k|} √(2i) (k₁!⋯k_n!)⁻¹ ((k₁+1)(k₁+k₂+2)⋯(|k|+n))⁻¹ Γ(|k| + n/2)`.
pub fn local_index_coefficient(n: usize, k: &[u32]) -> Result<Complex64> {
    let r = local_index_rational(n, k)?;
    let r = r.to_f64().ok_or_else(|| NcgError::Range("coefficient outside f64 range".into()))?;
    Ok(Complex64::new(1.0, 1.0) * std::f64::consts::PI.sqrt() * r)
}
