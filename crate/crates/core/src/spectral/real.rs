//! Real structure `J` and the mod-8 sign table.

use serde::Serialize;

use crate::error::{NcgError, Result};
use crate::spectral::triple::{c, max_abs, CMat, FiniteSpectralTriple};

/// Signs `(ε, ε′, ε″)` in `J² = ε`, `JD = ε′DJ`, `Jγ = ε″γJ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Signs {
    pub epsilon: i8,
    pub epsilon_prime: i8,
    /// Only defined in even dimension.
    pub epsilon_second: Option<i8>,
}

/// The sign table indexed by the dimension modulo 8.
#[derive(Clone, Copy, Debug)]
pub struct SignTable;

impl SignTable {
    const EPSILON: [i8; 8] = [1, 1, -1, -1, -1, -1, 1, 1];
    const EPSILON_PRIME: [i8; 8] = [1, -1, 1, 1, 1, -1, 1, 1];
    const EPSILON_SECOND: [i8; 4] = [1, -1, 1, -1];

    pub fn row(n: i64) -> Signs {
        let r = n.rem_euclid(8) as usize;
        Signs {
            epsilon: Self::EPSILON[r],
            epsilon_prime: Self::EPSILON_PRIME[r],
            epsilon_second: (r % 2 == 0).then(|| Self::EPSILON_SECOND[r / 2]),
        }
    }

    pub fn rows() -> [Signs; 8] {
        std::array::from_fn(|r| Self::row(r as i64))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Check {
    pub residual: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RealStructureReport {
    pub dimension: i64,
    pub signs: Signs,
    /// `J² = ε`.
    pub j_squared: Check,
    /// `JD = ε′DJ`.
    pub j_dirac: Check,
    /// `Jγ = ε″γJ`, even dimension only.
    pub j_grading: Option<Check>,
    /// `[a, b⁰] = 0` with `b⁰ = Jb*J⁻¹`.
    pub commutant: Check,
    /// `[[D, a], b⁰] = 0`.
    pub order_one: Check,
}

impl RealStructureReport {
    pub fn passed(&self) -> bool {
        self.j_squared.passed
            && self.j_dirac.passed
            && self.j_grading.is_none_or(|g| g.passed)
            && self.commutant.passed
            && self.order_one.passed
    }
}

/// `b⁰ = Jb*J⁻¹`. With `J = V ∘ conj` this is the linear map `V bᵀ V*`.
pub fn opposite(v: &CMat, b: &CMat) -> CMat {
    v * b.transpose() * v.adjoint()
}

/// Checks the sign relations at dimension `n`, the commutant condition and the
/// order-one condition, each with its largest residual entry.
pub fn check_real_structure(t: &FiniteSpectralTriple, n: i64) -> Result<RealStructureReport> {
    let v = t.real_unitary().ok_or_else(|| NcgError::Precondition("no real structure J".into()))?;
    let signs = SignTable::row(n);
    let tol = 1e-9 * max_abs(t.dirac()).max(1.0);
    let check = |residual: f64| Check { residual, passed: residual <= tol };
    let dim = t.dim();
    let j_squared = check(max_abs(&(v * v.map(|z| z.conj()) - CMat::identity(dim, dim) * c(signs.epsilon as f64))));
    let d = t.dirac();
    let j_dirac = check(max_abs(&(v * d.map(|z| z.conj()) - d * v * c(signs.epsilon_prime as f64))));
    let j_grading = match (signs.epsilon_second, t.grading()) {
        (None, _) => None,
        (Some(_), None) => {
            return Err(NcgError::Precondition(format!("incomplete data: dimension {n} is even and γ is missing")));
        }
        (Some(s), Some(g)) => Some(check(max_abs(&(v * g.map(|z| z.conj()) - g * v * c(s as f64))))),
    };
    let mut commutant = 0.0f64;
    let mut order_one = 0.0f64;
    for a in t.generators() {
        let da = t.commutator(a);
        for b in t.generators() {
            let b0 = opposite(v, &b.adjoint());
            commutant = commutant.max(max_abs(&(a * &b0 - &b0 * a)));
            order_one = order_one.max(max_abs(&(&da * &b0 - &b0 * &da)));
        }
    }
    Ok(RealStructureReport {
        dimension: n,
        signs,
        j_squared,
        j_dirac,
        j_grading,
        commutant: check(commutant),
        order_one: check(order_one),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn table_rows() {
        assert_eq!(SignTable::row(0), Signs { epsilon: 1, epsilon_prime: 1, epsilon_second: Some(1) });
        assert_eq!(SignTable::row(3), Signs { epsilon: -1, epsilon_prime: 1, epsilon_second: None });
        assert_eq!(SignTable::row(6), Signs { epsilon: 1, epsilon_prime: 1, epsilon_second: Some(-1) });
        assert_eq!(SignTable::row(-3), SignTable::row(5));
        assert_eq!(SignTable::rows().iter().filter(|s| s.epsilon_second.is_some()).count(), 4);
    }

    /// `ℂ²` acting with multiplicity two; `D` couples the two copies of each point.
    fn doubled_two_point(m: f64, imaginary: bool) -> FiniteSpectralTriple {
        let z = Complex64::new(0.0, 0.0);
        let (x, y) = if imaginary { (Complex64::new(0.0, -m), Complex64::new(0.0, m)) } else { (c(m), c(m)) };
        let d = CMat::from_row_slice(4, 4, &[z, x, z, z, y, z, z, z, z, z, z, x, z, z, y, z]);
        let gamma = CMat::from_diagonal(&nalgebra::DVector::from_vec(vec![c(1.0), c(-1.0), c(1.0), c(-1.0)]));
        FiniteSpectralTriple::points(d, &[2, 2])
            .unwrap()
            .with_grading(gamma)
            .unwrap()
            .with_real_structure(CMat::identity(4, 4))
            .unwrap()
    }

    #[test]
    fn commutative_example_in_dimension_zero() {
        let r = check_real_structure(&doubled_two_point(1.5, false), 0).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.order_one.residual, 0.0);
    }

    #[test]
    fn imaginary_dirac_breaks_j_d_sign() {
        let r = check_real_structure(&doubled_two_point(1.5, true), 0).unwrap();
        assert!(!r.j_dirac.passed);
        assert!(r.j_squared.passed && r.commutant.passed);
    }

    #[test]
    fn missing_pieces() {
        let t = FiniteSpectralTriple::two_point(1.0).unwrap();
        assert!(matches!(check_real_structure(&t, 1), Err(NcgError::Precondition(_))));
        let t = t.with_real_structure(CMat::identity(2, 2)).unwrap();
        assert!(matches!(check_real_structure(&t, 2), Err(NcgError::Precondition(_))));
        assert!(check_real_structure(&t, 1).is_ok());
    }

    #[test]
    fn order_one_residual_for_points_coupled_by_d() {
        // With D linking different points, [[D, a], b] has entries D_ij (a_j − a_i)(b_j − b_i).
        let m = 2.0;
        let t = FiniteSpectralTriple::two_point(m).unwrap().with_real_structure(CMat::identity(2, 2)).unwrap();
        let r = check_real_structure(&t, 1).unwrap();
        assert_eq!(r.commutant.residual, 0.0);
        assert_eq!(r.order_one.residual, m);
    }
}
