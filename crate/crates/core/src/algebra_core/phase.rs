use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{NcgError, Result};
use crate::scalar::ComplexScalar;

/// The deformation parameter θ together with `λ = exp(2πiθ)`.
///
/// Rational θ = p/q keeps λ-powers as integers mod q, so no rounding ever
/// enters the phase bookkeeping.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Phase {
    Rational { p: i64, q: i64 },
    Float(f64),
}

impl Phase {
    pub fn rational(p: i64, q: i64) -> Result<Self> {
        if q <= 0 {
            return Err(NcgError::Parameter(format!("denominator must be positive, got {q}")));
        }
        let p = p.rem_euclid(q);
        let g = p.gcd(&q);
        Ok(Phase::Rational { p: p / g, q: q / g })
    }

    pub fn float(theta: f64) -> Result<Self> {
        if !theta.is_finite() {
            return Err(NcgError::Parameter("θ must be finite".into()));
        }
        Ok(Phase::Float(theta.rem_euclid(1.0)))
    }

    /// Parses `"p/q"`, an integer, or a decimal.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || NcgError::Parse { pos: 0, msg: format!("bad θ: {s:?}") };
        if let Some((p, q)) = s.split_once('/') {
            let p: i64 = p.trim().parse().map_err(|_| bad())?;
            let q: i64 = q.trim().parse().map_err(|_| bad())?;
            return Self::rational(p, q);
        }
        if let Ok(n) = s.trim().parse::<i64>() {
            return Self::rational(n, 1);
        }
        Self::float(s.trim().parse().map_err(|_| bad())?)
    }

    pub fn commutative() -> Self {
        Phase::Rational { p: 0, q: 1 }
    }

    pub fn theta(&self) -> f64 {
        match *self {
            Phase::Rational { p, q } => p as f64 / q as f64,
            Phase::Float(t) => t,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Phase::Rational { .. })
    }

    /// Reduced exponent of λ^k for rational θ.
    pub fn exponent(&self, k: i64) -> Option<i64> {
        match *self {
            Phase::Rational { q, .. } => Some(k.rem_euclid(q)),
            Phase::Float(_) => None,
        }
    }

    /// `λ^k` in the coefficient type.
    pub fn lambda_pow<C: ComplexScalar>(&self, k: i64) -> Result<C> {
        match *self {
            Phase::Rational { p, q } => Ok(C::root_of_unity((p * k).rem_euclid(q), q)),
            Phase::Float(t) => C::from_turns((t * k as f64).rem_euclid(1.0)),
        }
    }

    pub fn is_minus_one(&self) -> bool {
        match *self {
            Phase::Rational { p, q } => 2 * p == q,
            Phase::Float(t) => (t - 0.5).abs() < 1e-15,
        }
    }

    pub fn same_as(&self, other: &Phase) -> bool {
        match (self, other) {
            (Phase::Float(a), Phase::Float(b)) => a == b,
            _ => self == other,
        }
    }
}

impl std::fmt::Display for Phase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Phase::Rational { p, q } => write!(f, "{p}/{q}"),
            Phase::Float(t) => write!(f, "{t}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Cyclotomic;
    use num_complex::Complex64;
    use num_traits::One;

    #[test]
    fn reduces_and_wraps() {
        assert_eq!(Phase::rational(6, 4).unwrap(), Phase::Rational { p: 1, q: 2 });
        assert_eq!(Phase::parse("-1/3").unwrap(), Phase::Rational { p: 2, q: 3 });
        assert!(Phase::rational(1, 0).is_err());
        assert_eq!(Phase::parse("0").unwrap(), Phase::commutative());
        assert!(matches!(Phase::parse("0.25").unwrap(), Phase::Float(_)));
    }

    #[test]
    fn lambda_has_order_q() {
        let ph = Phase::rational(2, 5).unwrap();
        let l: Cyclotomic = ph.lambda_pow(5).unwrap();
        assert!(l.is_one());
        let l1: Cyclotomic = ph.lambda_pow(1).unwrap();
        let l6: Cyclotomic = ph.lambda_pow(6).unwrap();
        assert_eq!(l1, l6);
        assert_eq!(ph.exponent(-1), Some(4));
    }

    #[test]
    fn float_phase_is_unit() {
        let ph = Phase::float(0.3).unwrap();
        let l: Complex64 = ph.lambda_pow(3).unwrap();
        assert!((l.norm() - 1.0).abs() < 1e-14);
        assert!(ph.lambda_pow::<Cyclotomic>(1).is_err());
        assert!(Phase::rational(1, 2).unwrap().is_minus_one());
    }
}
