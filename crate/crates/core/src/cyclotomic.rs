//! Exact arithmetic in cyclotomic fields `ℚ(ζ_n)`.
//!
//! An element remembers the order `n` of the field it was built in and stores
//! rational coordinates in the power basis `1, ζ, …, ζ^{φ(n)−1}`. Binary
//! operations lift both operands to the field of order `lcm(n, m)`, so values
//! from different fields mix freely. Rationals live in order 1.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::rc::Rc;

use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::Result;
use crate::scalar::{rat, ComplexScalar, Field, Rational, Scalar};
use crate::NcgError;

thread_local! {
    static PHI_CACHE: RefCell<HashMap<u32, Rc<Vec<i64>>>> = RefCell::new(HashMap::new());
}

/// Coefficients (constant term first) of the `n`-th cyclotomic polynomial.
pub fn cyclotomic_poly(n: u32) -> Rc<Vec<i64>> {
    if let Some(p) = PHI_CACHE.with(|c| c.borrow().get(&n).cloned()) {
        return p;
    }
    // x^n - 1 divided by every Φ_d with d | n, d < n.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic_poly(d);
            num = exact_div(&num, &phi_d);
        }
    }
    let rc = Rc::new(num);
    PHI_CACHE.with(|c| c.borrow_mut().insert(n, rc.clone()));
    rc
}

fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let nd = rem.len() - 1;
    let mut q = vec![0i64; nd - dd + 1];
    for k in (0..=nd - dd).rev() {
        let c = rem[k + dd];
        q[k] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[k + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

pub fn euler_phi(n: u32) -> u32 {
    (cyclotomic_poly(n).len() - 1) as u32
}

#[derive(Clone)]
pub struct Cyclotomic {
    order: u32,
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    pub fn rational(r: Rational) -> Self {
        Cyclotomic {
            order: 1,
            coeffs: vec![r],
        }
    }

    /// `ζ_n^k`.
    pub fn zeta_pow(n: u32, k: i64) -> Self {
        assert!(n > 0);
        let k = k.rem_euclid(n as i64) as usize;
        let mut poly = vec![Rational::zero(); k + 1];
        poly[k] = Rational::one();
        Self::from_poly(n, poly)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Reduces an arbitrary polynomial in `ζ_n` modulo `Φ_n`.
    pub fn from_poly(n: u32, mut poly: Vec<Rational>) -> Self {
        let phi = cyclotomic_poly(n);
        let deg = phi.len() - 1;
        while poly.len() > deg {
            let top = poly.len() - 1;
            let c = poly.pop().unwrap();
            if !c.is_zero() {
                let shift = top - deg;
                for (j, &pj) in phi.iter().enumerate().take(deg) {
                    if pj != 0 {
                        poly[shift + j] -= &c * Rational::from_i64(pj);
                    }
                }
            }
        }
        poly.resize(deg, Rational::zero());
        Cyclotomic {
            order: n,
            coeffs: poly,
        }
    }

    /// Re-expresses the element in the field of order `n` (a multiple of the current order).
    pub fn lift(&self, n: u32) -> Self {
        if n == self.order {
            return self.clone();
        }
        assert!(n % self.order == 0, "cannot lift order {} to {}", self.order, n);
        let step = (n / self.order) as usize;
        let mut poly = vec![Rational::zero(); (self.coeffs.len().max(1) - 1) * step + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            poly[k * step] = c.clone();
        }
        Self::from_poly(n, poly)
    }

    fn common(&self, other: &Self) -> (Self, Self) {
        let n = self.order.lcm(&other.order);
        (self.lift(n), other.lift(n))
    }

    /// The multiplication-by-self matrix in the power basis.
    fn mul_matrix(&self) -> Vec<Vec<Rational>> {
        let d = self.coeffs.len();
        let mut cols = Vec::with_capacity(d);
        for j in 0..d {
            let basis = Self::zeta_pow(self.order, j as i64);
            cols.push((self.clone() * basis).coeffs);
        }
        (0..d)
            .map(|i| (0..d).map(|j| cols[j][i].clone()).collect())
            .collect()
    }

    /// Writes the element as `Σ (re + i·im) λ^e` with `λ = exp(2πi p/q)`, `0 ≤ e < q`.
    pub fn decompose(&self, p: i64, q: i64) -> Result<Vec<(Rational, Rational, i64)>> {
        let n = (4i64).lcm(&q) as u32;
        if n % self.order != 0 {
            return Err(NcgError::Domain(format!(
                "coefficient of order {} is not in Q(i, exp(2πi{p}/{q}))",
                self.order
            )));
        }
        let x = self.lift(n);
        let ni = n as i64;
        let step_i = ni / 4;
        let step_l = (p * (ni / q)).rem_euclid(ni);
        let mut by_e: Vec<(Rational, Rational)> = vec![(Rational::zero(), Rational::zero()); q as usize];
        for (k, c) in x.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (a, b) = (0..4i64)
                .flat_map(|a| (0..q).map(move |b| (a, b)))
                .find(|&(a, b)| (a * step_i + b * step_l - k as i64).rem_euclid(ni) == 0)
                .ok_or_else(|| NcgError::Domain("power basis element not reachable".into()))?;
            let slot = &mut by_e[b as usize];
            match a {
                0 => slot.0 += c,
                1 => slot.1 += c,
                2 => slot.0 -= c,
                _ => slot.1 -= c,
            }
        }
        Ok(by_e
            .into_iter()
            .enumerate()
            .filter(|(_, (re, im))| !(re.is_zero() && im.is_zero()))
            .map(|(e, (re, im))| (re, im, e as i64))
            .collect())
    }

    /// Inverse of [`Cyclotomic::decompose`].
    pub fn compose(p: i64, q: i64, terms: &[(Rational, Rational, i64)]) -> Self {
        let lam = Self::zeta_pow(q as u32, p);
        let mut acc = Self::zero();
        for (re, im, e) in terms {
            let c = Self::rational(re.clone()) + Self::rational(im.clone()) * Self::i();
            acc = acc + c * lam.pow(*e);
        }
        acc
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc * base.clone();
        }
        acc
    }

    /// The rational value when the element lies in `ℚ`.
    pub fn as_rational(&self) -> Option<Rational> {
        let c0 = self.coeffs.first().cloned().unwrap_or_else(Rational::zero);
        if (self.clone() - Self::rational(c0.clone())).is_zero() {
            Some(c0)
        } else {
            None
        }
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                _ => write!(f, "({c})z{}^{k}", self.order)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.common(other);
        a.coeffs == b.coeffs
    }
}

impl Zero for Cyclotomic {
    fn zero() -> Self {
        Self::rational(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

impl One for Cyclotomic {
    fn one() -> Self {
        Self::rational(Rational::one())
    }
}

impl Add for Cyclotomic {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let (mut a, b) = self.common(&rhs);
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs) {
            *x += y;
        }
        a
    }
}

impl Sub for Cyclotomic {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for Cyclotomic {
    type Output = Self;
    fn neg(mut self) -> Self {
        for c in &mut self.coeffs {
            *c = -c.clone();
        }
        self
    }
}

impl Mul for Cyclotomic {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.order == 1 && rhs.order == 1 {
            return Self::rational(&self.coeffs[0] * &rhs.coeffs[0]);
        }
        if self.order == 1 || rhs.order == 1 {
            let (s, mut v) = if self.order == 1 { (self, rhs) } else { (rhs, self) };
            let s = &s.coeffs[0];
            for c in &mut v.coeffs {
                *c *= s;
            }
            return v;
        }
        let (a, b) = self.common(&rhs);
        let mut poly = vec![Rational::zero(); a.coeffs.len() + b.coeffs.len()];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    poly[i + j] += x * y;
                }
            }
        }
        Self::from_poly(a.order, poly)
    }
}

impl Div for Cyclotomic {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        self * rhs.inv()
    }
}

impl Scalar for Cyclotomic {
    fn from_i64(n: i64) -> Self {
        Self::rational(Rational::from_i64(n))
    }
    fn from_ratio(n: i64, d: i64) -> Self {
        Self::rational(rat(n, d))
    }
    fn from_rational(r: &Rational) -> Self {
        Self::rational(r.clone())
    }
    fn magnitude(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            self.to_c64().norm().max(f64::MIN_POSITIVE)
        }
    }
    fn is_exact() -> bool {
        true
    }
}

impl Field for Cyclotomic {
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        if self.order == 1 {
            return Self::rational(self.coeffs[0].recip());
        }
        let m = self.mul_matrix();
        let mut rhs = vec![Rational::zero(); m.len()];
        rhs[0] = Rational::one();
        let x = crate::linalg::solve(&m, &rhs).expect("nonzero field element is invertible");
        Cyclotomic {
            order: self.order,
            coeffs: x,
        }
    }
}

impl ComplexScalar for Cyclotomic {
    fn conj(&self) -> Self {
        let n = self.order as usize;
        let mut poly = vec![Rational::zero(); n.max(1)];
        for (k, c) in self.coeffs.iter().enumerate() {
            poly[(n - k) % n.max(1)] += c;
        }
        Self::from_poly(self.order, poly)
    }
    fn i() -> Self {
        Self::zeta_pow(4, 1)
    }
    fn root_of_unity(num: i64, den: i64) -> Self {
        let g = num.gcd(&den).max(1);
        let (num, den) = (num / g, den / g);
        let den = den.unsigned_abs() as u32;
        Self::zeta_pow(den.max(1), num)
    }
    fn from_turns(theta: f64) -> Result<Self> {
        Err(NcgError::Domain(format!(
            "exact coefficients need a rational angle, got {theta}"
        )))
    }
    fn to_c64(&self) -> Complex64 {
        let n = self.order as f64;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let x = 2.0 * std::f64::consts::PI * k as f64 / n;
                Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN), x)
            })
            .sum()
    }
}

impl From<BigRational> for Cyclotomic {
    fn from(r: BigRational) -> Self {
        Self::rational(r)
    }
}
