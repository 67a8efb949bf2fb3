//! Dense univariate polynomials, used as coefficients (`ℚ[L]`) and as
//! prefactors of Gaussian test functions (`ℚ[s]`).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::scalar::{Field, Scalar};

#[derive(Clone, PartialEq)]
pub struct Poly<F> {
    /// Constant term first; no trailing zeros.
    coeffs: Vec<F>,
}

impl<F: Field> Poly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![c])
    }

    /// The indeterminate.
    pub fn x() -> Self {
        Self::new(vec![F::zero(), F::one()])
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(F::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * F::from_i64(k as i64))
                .collect(),
        )
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::new(self.coeffs.iter().map(|x| x.clone() * c.clone()).collect())
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        let mut v = vec![F::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Self::new(v)
    }

    pub fn eval(&self, x: &F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(F::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn fmt_var(&self, var: &str) -> String
    where
        F: fmt::Display,
    {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            let cs = c.to_string();
            parts.push(match (k, cs.as_str()) {
                (0, _) => cs,
                (_, "1") => mono,
                (_, "-1") => format!("-{mono}"),
                _ => format!("{cs} {mono}"),
            });
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

impl<F: Field + fmt::Debug> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.coeffs)
    }
}

impl<F: Field + fmt::Display> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_var("L"))
    }
}

impl<F: Field> Zero for Poly<F> {
    fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<F: Field> One for Poly<F> {
    fn one() -> Self {
        Self::constant(F::one())
    }
}

impl<F: Field> Add for Poly<F> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let (mut long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self.coeffs, rhs.coeffs)
        } else {
            (rhs.coeffs, self.coeffs)
        };
        for (a, b) in long.iter_mut().zip(short) {
            *a = a.clone() + b;
        }
        Self::new(long)
    }
}

impl<F: Field> Neg for Poly<F> {
    type Output = Self;
    fn neg(self) -> Self {
        Poly {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl<F: Field> Sub for Poly<F> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<F: Field> Mul for Poly<F> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }
}

impl<F: Field> Scalar for Poly<F> {
    fn from_i64(n: i64) -> Self {
        Self::constant(F::from_i64(n))
    }
    fn from_ratio(n: i64, d: i64) -> Self {
        Self::constant(F::from_ratio(n, d))
    }
    fn from_rational(r: &crate::scalar::Rational) -> Self {
        Self::constant(F::from_rational(r))
    }
    fn magnitude(&self) -> f64 {
        self.coeffs.iter().map(Scalar::magnitude).fold(0.0, f64::max)
    }
    fn is_exact() -> bool {
        F::is_exact()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rational};

    type P = Poly<Rational>;

    #[test]
    fn arithmetic_and_derivative() {
        let x = P::x();
        let p = x.clone() * x.clone() - P::from_i64(1);
        assert_eq!(p.degree(), Some(2));
        assert_eq!(p.derivative(), x.scale(&rat(2, 1)));
        assert_eq!(p.eval(&rat(3, 1)), rat(8, 1));
        assert!((p.clone() - p).is_zero());
    }

    #[test]
    fn display() {
        let x = P::x();
        let p = x.clone() * x.scale(&rat(1, 2)) - x + P::from_i64(3);
        assert_eq!(p.to_string(), "1/2 L^2 - L + 3");
        assert_eq!(P::zero().to_string(), "0");
    }
}
