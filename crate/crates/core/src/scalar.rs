//! Coefficient traits shared by every algebraic layer.
//!
//! The ring hierarchy is deliberately small: [`Scalar`] is a commutative ring
//! with rational constants, [`Field`] adds division, and [`ComplexScalar`]
//! adds conjugation and roots of unity. Exact types (rationals, cyclotomics)
//! and floating types (`f32`, `f64`, complex floats) implement the same traits
//! so the algebra code is written once.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::{Complex32, Complex64};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{NcgError, Result};

pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn from_i64(n: i64) -> Self;

    /// The rational `n/d`. Panics when `d == 0`.
    fn from_ratio(n: i64, d: i64) -> Self;

    fn from_rational(r: &Rational) -> Self;

    /// Size used for tolerance checks. Exact types return 0 only for zero.
    fn magnitude(&self) -> f64;

    /// True when arithmetic never rounds.
    fn is_exact() -> bool;

    /// Zero test honouring the type's notion of tolerance.
    fn is_negligible(&self, tol: f64) -> bool {
        if Self::is_exact() {
            self.is_zero()
        } else {
            self.magnitude() <= tol
        }
    }
}

pub trait Field: Scalar + Div<Output = Self> {
    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }
}

pub trait ComplexScalar: Field {
    fn conj(&self) -> Self;

    fn i() -> Self;

    /// `exp(2πi·num/den)`.
    fn root_of_unity(num: i64, den: i64) -> Self;

    /// `exp(2πiθ)` for a float angle. Exact types cannot represent this.
    fn from_turns(theta: f64) -> Result<Self>;

    fn to_c64(&self) -> Complex64;
}

/// Scalars that can hold transcendental constants such as `2πi`.
pub trait Transcendental: ComplexScalar {
    fn from_f64(x: f64) -> Self;
    fn two_pi_i() -> Self {
        Self::from_f64(2.0 * std::f64::consts::PI) * Self::i()
    }
}

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Scalar for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_ratio(n: i64, d: i64) -> Self {
        rat(n, d)
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn magnitude(&self) -> f64 {
        self.to_f64().map(f64::abs).unwrap_or(f64::INFINITY)
    }
    fn is_exact() -> bool {
        true
    }
}

impl Field for BigRational {}

macro_rules! float_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            fn from_i64(n: i64) -> Self {
                n as $t
            }
            fn from_ratio(n: i64, d: i64) -> Self {
                assert!(d != 0, "zero denominator");
                n as $t / d as $t
            }
            fn from_rational(r: &Rational) -> Self {
                r.to_f64().unwrap_or(f64::NAN) as $t
            }
            fn magnitude(&self) -> f64 {
                self.abs() as f64
            }
            fn is_exact() -> bool {
                false
            }
        }
        impl Field for $t {}
    };
}

float_scalar!(f64);
float_scalar!(f32);

macro_rules! complex_scalar {
    ($t:ty, $r:ty) => {
        impl Scalar for $t {
            fn from_i64(n: i64) -> Self {
                <$t>::new(n as $r, 0.0)
            }
            fn from_ratio(n: i64, d: i64) -> Self {
                assert!(d != 0, "zero denominator");
                <$t>::new(n as $r / d as $r, 0.0)
            }
            fn from_rational(r: &Rational) -> Self {
                <$t>::new(r.to_f64().unwrap_or(f64::NAN) as $r, 0.0)
            }
            fn magnitude(&self) -> f64 {
                self.norm() as f64
            }
            fn is_exact() -> bool {
                false
            }
        }
        impl Field for $t {}
        impl ComplexScalar for $t {
            fn conj(&self) -> Self {
                <$t>::conj(self)
            }
            fn i() -> Self {
                <$t>::new(0.0, 1.0)
            }
            fn root_of_unity(num: i64, den: i64) -> Self {
                let k = num.rem_euclid(den);
                let x = 2.0 * std::f64::consts::PI * k as f64 / den as f64;
                <$t>::new(x.cos() as $r, x.sin() as $r)
            }
            fn from_turns(theta: f64) -> Result<Self> {
                let x = 2.0 * std::f64::consts::PI * theta;
                Ok(<$t>::new(x.cos() as $r, x.sin() as $r))
            }
            fn to_c64(&self) -> Complex64 {
                Complex64::new(self.re as f64, self.im as f64)
            }
        }
        impl Transcendental for $t {
            fn from_f64(x: f64) -> Self {
                <$t>::new(x as $r, 0.0)
            }
        }
    };
}

complex_scalar!(Complex64, f64);
complex_scalar!(Complex32, f32);

/// Parses `"p/q"` or `"p"` into a reduced rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || NcgError::Parse {
        pos: 0,
        msg: format!("not a rational: {s:?}"),
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}
