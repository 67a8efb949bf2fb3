//! Truncated Laurent series in `ε` with coefficients in a ring such as `ℚ` or `ℚ[L]`.

use std::fmt;

use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{NcgError, Result};
use crate::scalar::{Rational, Scalar};
use crate::RationalPoly;

/// Order marker for series that are exact (finitely many terms, nothing truncated).
pub const EXACT: i32 = 1 << 28;

/// Default truncation order `K`.
pub const DEFAULT_ORDER: i32 = 6;

fn cap(o: i64) -> i32 {
    if o >= (EXACT / 2) as i64 {
        EXACT
    } else {
        o as i32
    }
}

/// Coefficient rings usable in renormalization.
pub trait Coefficient: Scalar + fmt::Display {
    /// Numeric value, when the coefficient is a plain number.
    fn to_f64(&self) -> Option<f64>;

    /// False when the coefficient involves the log-scale symbol `L`.
    fn is_l_free(&self) -> bool {
        true
    }
}

impl Coefficient for Rational {
    fn to_f64(&self) -> Option<f64> {
        ToPrimitive::to_f64(self)
    }
}

impl Coefficient for f64 {
    fn to_f64(&self) -> Option<f64> {
        Some(*self)
    }
}

impl Coefficient for RationalPoly {
    fn to_f64(&self) -> Option<f64> {
        if self.is_l_free() {
            ToPrimitive::to_f64(&self.coeff(0))
        } else {
            None
        }
    }

    fn is_l_free(&self) -> bool {
        self.degree().unwrap_or(0) == 0
    }
}

/// `Σ_{k = low}^{order} c_k ε^k`, with every coefficient past `order` unknown.
#[derive(Clone, PartialEq)]
pub struct LaurentSeries<S> {
    low: i32,
    /// `coeffs[i]` multiplies `ε^{low + i}`; no leading or trailing zeros.
    coeffs: Vec<S>,
    order: i32,
}

impl<S: Coefficient> LaurentSeries<S> {
    /// Builds `Σ coeffs[i] ε^{low+i}` known through `ε^order`; later terms are dropped.
    pub fn new(low: i32, coeffs: Vec<S>, order: i32) -> Self {
        let mut s = LaurentSeries { low, coeffs, order };
        s.normalize();
        s
    }

    pub fn exact(low: i32, coeffs: Vec<S>) -> Self {
        Self::new(low, coeffs, EXACT)
    }

    pub fn zero() -> Self {
        Self::exact(0, Vec::new())
    }

    /// `O(ε^{order+1})`.
    pub fn zero_to(order: i32) -> Self {
        Self::new(0, Vec::new(), order)
    }

    pub fn one() -> Self {
        Self::constant(S::one())
    }

    pub fn constant(c: S) -> Self {
        Self::exact(0, vec![c])
    }

    /// `c ε^k`.
    pub fn monomial(c: S, k: i32) -> Self {
        Self::exact(k, vec![c])
    }

    /// `e^{cε}` through `ε^order`.
    pub fn exp_linear(c: &S, order: i32) -> Self {
        let mut coeffs = Vec::new();
        let mut term = S::one();
        for k in 0..=order.max(-1) {
            if k > 0 {
                term = term * c.clone() * S::from_ratio(1, k as i64);
            }
            coeffs.push(term.clone());
        }
        Self::new(0, coeffs, order)
    }

    fn normalize(&mut self) {
        let keep = (self.order as i64 - self.low as i64 + 1).max(0) as usize;
        self.coeffs.truncate(keep);
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        self.coeffs.drain(..lead);
        self.low = if self.coeffs.is_empty() { 0 } else { self.low + lead as i32 };
    }

    /// Coefficient of `ε^k`; zero outside the stored range.
    pub fn coeff(&self, k: i32) -> S {
        if k < self.low {
            return S::zero();
        }
        self.coeffs.get((k - self.low) as usize).cloned().unwrap_or_else(S::zero)
    }

    /// Coefficient of `ε^k`, or an order error when `k` lies past the truncation.
    pub fn coeff_checked(&self, k: i32) -> Result<S> {
        if k > self.order {
            return Err(NcgError::Order(format!("ε^{k} requested from a series known through ε^{}", self.order)));
        }
        Ok(self.coeff(k))
    }

    /// `(exponent, coefficient)` for the stored nonzero terms.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &S)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(i, c)| (self.low + i as i32, c))
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<i32> {
        (!self.coeffs.is_empty()).then_some(self.low)
    }

    /// Highest exponent whose coefficient is known.
    pub fn order(&self) -> i32 {
        self.order
    }

    pub fn is_exact(&self) -> bool {
        self.order >= EXACT
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `p` with the lowest exponent `−p`, or 0 for a series without poles.
    pub fn pole_order(&self) -> i32 {
        self.valuation().map_or(0, |v| (-v).max(0))
    }

    fn effective_low(&self) -> i64 {
        self.valuation().map_or(self.order as i64 + 1, |v| v as i64)
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        if self.is_zero() {
            return Self::new(other.low, other.coeffs.clone(), order);
        }
        if other.is_zero() {
            return Self::new(self.low, self.coeffs.clone(), order);
        }
        let low = self.low.min(other.low);
        let high = (self.low + self.coeffs.len() as i32).max(other.low + other.coeffs.len() as i32);
        let coeffs = (low..high).map(|k| self.coeff(k) + other.coeff(k)).collect();
        Self::new(low, coeffs, order)
    }

    pub fn neg(&self) -> Self {
        LaurentSeries { low: self.low, coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(), order: self.order }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = cap((self.order as i64 + other.effective_low()).min(other.order as i64 + self.effective_low()));
        if self.is_zero() || other.is_zero() {
            return Self::zero_to(order);
        }
        let mut coeffs = vec![S::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(self.low + other.low, coeffs, order)
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::new(self.low, self.coeffs.iter().map(|x| x.clone() * c.clone()).collect(), self.order)
    }

    /// Multiplies by `ε^k`.
    pub fn shift(&self, k: i32) -> Self {
        let order = if self.is_exact() { EXACT } else { self.order + k };
        Self::new(self.low + k, self.coeffs.clone(), order)
    }

    /// Drops every term past `ε^order`.
    pub fn truncate(&self, order: i32) -> Self {
        Self::new(self.low, self.coeffs.clone(), self.order.min(order))
    }

    /// `T`: the strictly negative powers of `ε`.
    ///
    /// Exact whenever the `ε^{-1}` coefficient is known.
    pub fn pole_part(&self) -> Self {
        let order = if self.order >= -1 { EXACT } else { self.order };
        let n = (-self.low).max(0) as usize;
        Self::new(self.low, self.coeffs.iter().take(n).cloned().collect(), order)
    }

    /// `1 − T`: the terms with nonnegative powers of `ε`.
    pub fn regular_part(&self) -> Self {
        self.sub(&self.pole_part())
    }

    /// Coefficient of `ε⁰`, the value at `ε = 0` of a pole-free series.
    pub fn finite_part(&self) -> Result<S> {
        self.coeff_checked(0)
    }

    pub fn map<T: Coefficient>(&self, f: impl Fn(&S) -> T) -> LaurentSeries<T> {
        LaurentSeries::new(self.low, self.coeffs.iter().map(f).collect(), self.order)
    }

    pub fn is_l_free(&self) -> bool {
        self.coeffs.iter().all(Coefficient::is_l_free)
    }

    /// Agreement through `ε^order`, where `order` is the smaller of the two truncations.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }

    /// Largest coefficient magnitude of the difference, through the common order.
    pub fn distance(&self, other: &Self) -> f64 {
        self.sub(other).coeffs.iter().map(Scalar::magnitude).fold(0.0, f64::max)
    }
}

impl LaurentSeries<RationalPoly> {
    /// Substitutes a value for `L`.
    pub fn eval_l(&self, l: &Rational) -> LaurentSeries<Rational> {
        self.map(|c| c.eval(l))
    }
}

impl<S: Coefficient> fmt::Display for LaurentSeries<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (k, c) in self.terms() {
            let mut cs = c.to_string();
            if cs.contains(' ') && k != 0 {
                cs = format!("({cs})");
            }
            let eps = match k {
                0 => String::new(),
                1 => "ε".to_string(),
                _ => format!("ε^{k}"),
            };
            parts.push(match (k, cs.as_str()) {
                (0, _) => cs,
                (_, "1") => eps,
                (_, "-1") => format!("-{eps}"),
                _ => format!("{cs} {eps}"),
            });
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        if !self.is_exact() {
            parts.push(format!("O(ε^{})", self.order + 1));
        }
        write!(f, "{}", parts.join(" + ").replace("+ -", "- "))
    }
}

impl<S: Coefficient> fmt::Debug for LaurentSeries<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<S: Coefficient> Serialize for LaurentSeries<S> {
    fn serialize<T: Serializer>(&self, s: T) -> std::result::Result<T::Ok, T::Error> {
        s.serialize_str(&self.to_string())
    }
}
