use std::collections::{BTreeMap, HashMap};

use crate::algebra_core::Phase;
use crate::error::{NcgError, Result};
use crate::scalar::ComplexScalar;

/// A finite sum `Σ b_{nm} U^n V^m` in the torus algebra with `VU = λUV`.
#[derive(Clone, Debug)]
pub struct TorusElement<C> {
    coeffs: BTreeMap<(i64, i64), C>,
    phase: Phase,
}

impl<C: ComplexScalar> TorusElement<C> {
    pub fn zero(phase: Phase) -> Self {
        TorusElement { coeffs: BTreeMap::new(), phase }
    }

    pub fn one(phase: Phase) -> Self {
        Self::monomial(phase, 0, 0, C::one())
    }

    pub fn monomial(phase: Phase, n: i64, m: i64, c: C) -> Self {
        let mut e = Self::zero(phase);
        e.add_term(n, m, c);
        e
    }

    pub fn u(phase: Phase) -> Self {
        Self::monomial(phase, 1, 0, C::one())
    }

    pub fn v(phase: Phase) -> Self {
        Self::monomial(phase, 0, 1, C::one())
    }

    pub fn from_terms(phase: Phase, terms: impl IntoIterator<Item = ((i64, i64), C)>) -> Self {
        let mut e = Self::zero(phase);
        for ((n, m), c) in terms {
            e.add_term(n, m, c);
        }
        e
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64), &C)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, n: i64, m: i64) -> C {
        self.coeffs.get(&(n, m)).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, n: i64, m: i64, c: C) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.remove(&(n, m)) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.coeffs.insert((n, m), s);
                }
            }
            None => {
                self.coeffs.insert((n, m), c);
            }
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.phase.same_as(&other.phase) {
            Ok(())
        } else {
            Err(NcgError::Parameter(format!(
                "mismatched θ: {} vs {}",
                self.phase, other.phase
            )))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for ((n, m), c) in &other.coeffs {
            out.add_term(*n, *m, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-C::one()))
    }

    pub fn scale(&self, s: &C) -> Self {
        Self::from_terms(
            self.phase,
            self.coeffs.iter().map(|(k, c)| (*k, c.clone() * s.clone())),
        )
    }

    /// Product using `(U^aV^b)(U^cV^d) = λ^{bc} U^{a+c} V^{b+d}`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut cache: HashMap<i64, C> = HashMap::new();
        let mut out = Self::zero(self.phase);
        for ((a, b), x) in &self.coeffs {
            for ((c, d), y) in &other.coeffs {
                let k = b * c;
                let key = self.phase.exponent(k).unwrap_or(k);
                let lam = match cache.get(&key) {
                    Some(l) => l.clone(),
                    None => {
                        let l: C = self.phase.lambda_pow(key)?;
                        cache.insert(key, l.clone());
                        l
                    }
                };
                out.add_term(a + c, b + d, x.clone() * y.clone() * lam);
            }
        }
        Ok(out)
    }

    /// `(U^nV^m)* = λ^{nm} U^{-n}V^{-m}`, extended conjugate-linearly.
    pub fn star(&self) -> Result<Self> {
        let mut out = Self::zero(self.phase);
        for ((n, m), c) in &self.coeffs {
            let lam: C = self.phase.lambda_pow(n * m)?;
            out.add_term(-n, -m, c.conj() * lam);
        }
        Ok(out)
    }

    /// The canonical trace, picking out `b_{00}`.
    pub fn trace(&self) -> C {
        self.coeff(0, 0)
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    /// Equality up to a tolerance (exact types ignore it).
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        match self.sub(other) {
            Ok(d) => d.coeffs.values().all(|c| c.is_negligible(tol)),
            Err(_) => false,
        }
    }

    pub fn max_coeff(&self) -> f64 {
        self.coeffs.values().map(|c| c.magnitude()).fold(0.0, f64::max)
    }

    pub fn map_coeffs(&self, f: impl Fn(i64, i64, &C) -> C) -> Self {
        Self::from_terms(self.phase, self.coeffs.iter().map(|((n, m), c)| ((*n, *m), f(*n, *m, c))))
    }
}

impl<C: ComplexScalar> PartialEq for TorusElement<C> {
    fn eq(&self, other: &Self) -> bool {
        self.phase.same_as(&other.phase) && self.coeffs == other.coeffs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Cyclotomic;
    use num_complex::Complex64;
    use num_traits::{One, Zero};

    type E = TorusElement<Cyclotomic>;

    fn ph() -> Phase {
        Phase::rational(1, 5).unwrap()
    }

    #[test]
    fn vu_is_lambda_uv() {
        let (u, v) = (E::u(ph()), E::v(ph()));
        let lam: Cyclotomic = ph().lambda_pow(1).unwrap();
        assert_eq!(v.mul(&u).unwrap(), u.mul(&v).unwrap().scale(&lam));
    }

    #[test]
    fn uv_squared() {
        let uv = E::monomial(ph(), 1, 1, Cyclotomic::one());
        let lam: Cyclotomic = ph().lambda_pow(1).unwrap();
        assert_eq!(uv.mul(&uv).unwrap(), E::monomial(ph(), 2, 2, lam));
    }

    #[test]
    fn star_of_generators() {
        assert_eq!(E::u(ph()).star().unwrap(), E::monomial(ph(), -1, 0, Cyclotomic::one()));
        let uv = E::monomial(ph(), 1, 1, Cyclotomic::one());
        let lam: Cyclotomic = ph().lambda_pow(1).unwrap();
        assert_eq!(uv.star().unwrap(), E::monomial(ph(), -1, -1, lam));
        let vs = E::v(ph()).star().unwrap();
        let us = E::u(ph()).star().unwrap();
        assert_eq!(uv.star().unwrap(), vs.mul(&us).unwrap());
    }

    #[test]
    fn unit_and_trace() {
        let one = E::one(ph());
        let u = E::u(ph());
        assert_eq!(one.mul(&u).unwrap(), u);
        assert!(one.trace().is_one());
        assert!(u.trace().is_zero());
    }

    #[test]
    fn mismatched_phase_rejected() {
        let a = E::u(ph());
        let b = E::u(Phase::rational(1, 3).unwrap());
        assert!(matches!(a.mul(&b), Err(NcgError::Parameter(_))));
    }

    #[test]
    fn float_backend_agrees() {
        let p = Phase::float(0.2).unwrap();
        let (u, v) = (TorusElement::<Complex64>::u(p), TorusElement::<Complex64>::v(p));
        let lam: Complex64 = p.lambda_pow(1).unwrap();
        assert!(v.mul(&u).unwrap().approx_eq(&u.mul(&v).unwrap().scale(&lam), 1e-14));
    }
}
