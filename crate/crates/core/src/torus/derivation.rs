use crate::algebra_core::TorusElement;
use crate::error::{NcgError, Result};
use crate::scalar::{ComplexScalar, Transcendental};

fn check_index(j: u8) -> Result<()> {
    if j == 1 || j == 2 {
        Ok(())
    } else {
        Err(NcgError::Parameter(format!("derivation index must be 1 or 2, got {j}")))
    }
}

/// `δ_j/(2πi)`: multiplies `U^nV^m` by `n` (j = 1) or `m` (j = 2). Exact over any coefficients.
pub fn delta_unit<C: ComplexScalar>(j: u8, a: &TorusElement<C>) -> Result<TorusElement<C>> {
    check_index(j)?;
    Ok(a.map_coeffs(|n, m, c| {
        let k = if j == 1 { n } else { m };
        c.clone() * C::from_i64(k)
    }))
}

/// `δ₁ = 2πi U∂/∂U`, `δ₂ = 2πi V∂/∂V`.
pub fn delta<C: Transcendental>(j: u8, a: &TorusElement<C>) -> Result<TorusElement<C>> {
    Ok(delta_unit(j, a)?.scale(&C::two_pi_i()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_core::Phase;
    use crate::Cyclotomic;
    use num_complex::Complex64;
    use crate::Scalar;
    use num_traits::One;
    use std::f64::consts::PI;

    #[test]
    fn delta_on_monomials() {
        let p = Phase::rational(1, 3).unwrap();
        let u = TorusElement::<Complex64>::u(p);
        let d = delta(1, &u).unwrap();
        assert!((d.coeff(1, 0) - Complex64::new(0.0, 2.0 * PI)).norm() < 1e-14);
        let one = TorusElement::<Complex64>::one(p);
        assert!(delta(1, &one).unwrap().is_zero());
        let x = TorusElement::<Complex64>::monomial(p, 2, 3, Complex64::one());
        assert!((delta(1, &x).unwrap().coeff(2, 3) - Complex64::new(0.0, 4.0 * PI)).norm() < 1e-13);
        assert!(delta(3, &x).is_err());
    }

    #[test]
    fn exact_unit_derivation() {
        let p = Phase::rational(2, 5).unwrap();
        let x = TorusElement::<Cyclotomic>::monomial(p, 2, -3, Cyclotomic::one());
        assert_eq!(delta_unit(2, &x).unwrap().coeff(2, -3), Cyclotomic::from_i64(-3));
    }

}
