//! Index pairing `Index(PUP)` with `P` the spectral projection of `D` onto `[0, ∞)`.
//!
//! On a truncated space `PUP` is a square matrix and its plain index is zero: the
//! truncation adds kernel vectors at the top of the spectrum that mirror the genuine
//! ones near `0`. Kernel and cokernel vectors are therefore sorted by where they live
//! in `ran P`: weight on the lower half of the positive spectrum counts, weight on
//! the upper half is truncation defect.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{NcgError, Result};
use crate::spectral::dixmier::dixmier_integral;
use crate::spectral::triple::{c, hermitian_eigen, CMat, FiniteSpectralTriple};

/// Singular values below this (relative to `‖PUP‖`) span the kernel.
pub const KERNEL_TOL: f64 = 1e-8;
/// Singular values between [`KERNEL_TOL`] and this make the rank ambiguous.
pub const AMBIGUITY_TOL: f64 = 1e-4;

/// `dim ker(PUP) − dim ker((PUP)*)` on `ran P`, counting only vectors localized away
/// from the truncation boundary.
pub fn index_pup(t: &FiniteSpectralTriple, u: &CMat) -> Result<i64> {
    if u.nrows() != t.dim() || u.ncols() != t.dim() {
        return Err(NcgError::Parameter("U has the wrong size".into()));
    }
    let (values, vectors) = hermitian_eigen(t.dirac());
    let scale = values.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    let positive: Vec<usize> = (0..values.len()).filter(|&i| values[i] >= -1e-12 * scale).collect();
    let r = positive.len();
    if r == 0 {
        return Ok(0);
    }
    let q = CMat::from_fn(t.dim(), r, |i, j| vectors[(i, positive[j])]);
    let b = q.adjoint() * u * &q;
    let svd = b.clone().svd(true, true);
    let norm = svd.singular_values.max().max(1e-300);
    if let Some(s) = svd.singular_values.iter().find(|&&s| s > KERNEL_TOL * norm && s < AMBIGUITY_TOL * norm) {
        return Err(NcgError::Indeterminate(format!("singular value {s:e} of PUP is neither zero nor separated from zero")));
    }
    let zero: Vec<usize> = (0..r).filter(|&i| svd.singular_values[i] <= KERNEL_TOL * norm).collect();
    let v_t = svd.v_t.expect("requested");
    let u_s = svd.u.expect("requested");
    let kernel = CMat::from_fn(r, zero.len(), |i, j| v_t[(zero[j], i)].conj());
    let cokernel = CMat::from_fn(r, zero.len(), |i, j| u_s[(i, zero[j])]);
    Ok(count_low(&kernel, r)? as i64 - count_low(&cokernel, r)? as i64)
}

/// Number of directions in `span(basis)` concentrated on the first half of the modes.
fn count_low(basis: &CMat, r: usize) -> Result<usize> {
    if basis.ncols() == 0 {
        return Ok(0);
    }
    let half = r.div_ceil(2);
    let low = basis.rows(0, half);
    let gram = low.adjoint() * low;
    let (weights, _) = hermitian_eigen(&gram);
    if let Some(w) = weights.iter().find(|&&w| w > 0.1 && w < 0.9) {
        return Err(NcgError::Indeterminate(format!("kernel vector with weight {w:.3} on both ends of ran P")));
    }
    Ok(weights.iter().filter(|&&w| w >= 0.9).count())
}

/// `−½ ∫ U*[D, U] |D|⁻¹`: characteristic values of `U*[D, U]|D|⁻¹` (zero modes of `D`
/// dropped) fed to the Dixmier estimate at `Λ`.
pub fn pairing_estimate(t: &FiniteSpectralTriple, u: &CMat, lambda: f64) -> Result<f64> {
    let (values, vectors) = hermitian_eigen(t.dirac());
    let scale = values.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    let inv_abs = DMatrix::from_fn(t.dim(), t.dim(), |i, j| {
        if i == j && values[i].abs() > 1e-12 * scale { c(1.0 / values[i].abs()) } else { Complex64::new(0.0, 0.0) }
    });
    let abs_inv = &vectors * inv_abs * vectors.adjoint();
    let x = u.adjoint() * t.commutator(u) * abs_inv;
    let mut mu: Vec<f64> = x.singular_values().iter().copied().filter(|s| *s > 1e-14).collect();
    mu.sort_by(|a, b| b.total_cmp(a));
    Ok(-0.5 * dixmier_integral(&mu, lambda)?.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::triple::{circle_shift, circle_triple};

    #[test]
    fn shifts_on_the_circle() {
        let t = circle_triple(16).unwrap();
        assert_eq!(index_pup(&t, &circle_shift(16, 0)).unwrap(), 0);
        assert_eq!(index_pup(&t, &circle_shift(16, 1)).unwrap(), -1);
        assert_eq!(index_pup(&t, &circle_shift(16, 2)).unwrap(), -2);
        assert_eq!(index_pup(&t, &circle_shift(16, -1)).unwrap(), 1);
    }

    #[test]
    fn near_singular_pup_is_indeterminate() {
        let t = circle_triple(4).unwrap();
        let mut u = CMat::identity(9, 9);
        u[(6, 6)] = c(1e-6);
        assert!(matches!(index_pup(&t, &u), Err(NcgError::Indeterminate(_))));
    }

    #[test]
    fn wrong_size_is_rejected() {
        let t = circle_triple(4).unwrap();
        assert!(index_pup(&t, &CMat::identity(3, 3)).is_err());
    }
}
