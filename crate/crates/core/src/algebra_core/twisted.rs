use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::algebra_core::generators::{GeneratorSpec, Monomial, Strategy};
use crate::error::{NcgError, Result};
use crate::scalar::{ComplexScalar, Scalar};

/// Element of a λ-twisted polynomial *-algebra: normal monomial → coefficient.
#[derive(Clone)]
pub struct TwistedPoly<C> {
    terms: BTreeMap<Monomial, C>,
    spec: Arc<GeneratorSpec>,
}

impl<C: ComplexScalar> TwistedPoly<C> {
    pub fn zero(spec: &Arc<GeneratorSpec>) -> Self {
        TwistedPoly { terms: BTreeMap::new(), spec: spec.clone() }
    }

    pub fn constant(spec: &Arc<GeneratorSpec>, c: C) -> Self {
        Self::term(spec, vec![0; spec.len()], c)
    }

    pub fn one(spec: &Arc<GeneratorSpec>) -> Self {
        Self::constant(spec, C::one())
    }

    pub fn term(spec: &Arc<GeneratorSpec>, mono: Monomial, c: C) -> Self {
        let mut p = Self::zero(spec);
        p.add_term(mono, c);
        p
    }

    pub fn generator(spec: &Arc<GeneratorSpec>, name: &str) -> Result<Self> {
        let g = spec.generator(name)?;
        let mut m = vec![0; spec.len()];
        m[g] = 1;
        Ok(Self::term(spec, m, C::one()))
    }

    pub fn spec(&self) -> &Arc<GeneratorSpec> {
        &self.spec
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &[u32]) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    /// Coefficient of the empty monomial.
    pub fn scalar_part(&self) -> C {
        self.coeff(&vec![0; self.spec.len()])
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&m) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(m, s);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-C::one()))
    }

    pub fn scale(&self, s: &C) -> Self {
        let mut out = Self::zero(&self.spec);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.clone() * s.clone());
        }
        out
    }

    /// Product of normal forms; polynomial relations are not applied.
    pub fn mul(&self, other: &Self) -> Self {
        let mut lam = LambdaCache::new(&self.spec);
        let mut out = Self::zero(&self.spec);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let k = self.spec.product_exponent(a, b);
                let m: Monomial = a.iter().zip(b).map(|(p, q)| p + q).collect();
                out.add_term(m, x.clone() * y.clone() * lam.get(k));
            }
        }
        out
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(&self.spec), |acc, _| acc.mul(self))
    }

    /// Conjugate-linear anti-involution extending `g ↦ g*`.
    pub fn star(&self) -> Self {
        let mut lam = LambdaCache::new(&self.spec);
        let mut out = Self::zero(&self.spec);
        for (m, c) in &self.terms {
            let word: Vec<usize> = self
                .spec
                .word_of(m)
                .into_iter()
                .rev()
                .map(|g| self.spec.generators()[g].star)
                .collect();
            let (mono, k) = self.spec.rewrite_word(&word, Strategy::Leftmost);
            out.add_term(mono, c.conj() * lam.get(k));
        }
        out
    }

    /// Applies the relation rules until no leading monomial divides any term.
    pub fn reduce(&self) -> Result<Self> {
        if self.spec.relations().is_empty() {
            return Ok(self.clone());
        }
        let mut lam = LambdaCache::new(&self.spec);
        let mut cur = self.clone();
        let mut steps = 0usize;
        loop {
            let hit = cur.terms.iter().rev().find_map(|(m, _)| {
                self.spec
                    .relations()
                    .iter()
                    .position(|r| r.lead.iter().zip(m).all(|(l, x)| l <= x))
                    .map(|i| (m.clone(), i))
            });
            let Some((m, ri)) = hit else { break };
            steps += 1;
            if steps > self.spec.budget() {
                return Err(NcgError::Reduction(self.spec.budget()));
            }
            let rel = &self.spec.relations()[ri];
            let c = cur.terms.remove(&m).expect("term present");
            let rest: Monomial = m.iter().zip(&rel.lead).map(|(x, l)| x - l).collect();
            // m = λ^{-k} lead·rest, so m ≡ λ^{-k} rhs·rest.
            let k = self.spec.product_exponent(&rel.lead, &rest);
            let factor = c * lam.get(-k);
            for t in &rel.rhs {
                let k2 = self.spec.product_exponent(&t.mono, &rest);
                let mono: Monomial = t.mono.iter().zip(&rest).map(|(a, b)| a + b).collect();
                let coef = factor.clone() * C::from_rational(&t.coeff) * lam.get(t.lambda_exp + k2);
                cur.add_term(mono, coef);
            }
        }
        Ok(cur)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.sub(other).terms.values().all(|c| c.is_negligible(tol))
    }

    /// Total degree of the highest monomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|m| m.iter().sum()).max().unwrap_or(0)
    }

    /// Re-homes the polynomial onto an equivalent spec with the same generator names.
    pub fn transport(&self, target: &Arc<GeneratorSpec>) -> Result<Self> {
        let names: Vec<usize> = self
            .spec
            .generators()
            .iter()
            .map(|g| target.generator(&g.name))
            .collect::<Result<_>>()?;
        let mut lam = LambdaCache::new(target);
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let word: Vec<usize> = self.spec.word_of(m).into_iter().map(|g| names[g]).collect();
            let (mono, k) = target.rewrite_word(&word, Strategy::Leftmost);
            out.add_term(mono, c.clone() * lam.get(k));
        }
        Ok(out)
    }
}

/// Normal form of a generator word.
pub fn poly_normal_form<C: ComplexScalar>(word: &[&str], spec: &Arc<GeneratorSpec>) -> Result<TwistedPoly<C>> {
    let w: Vec<usize> = word.iter().map(|n| spec.generator(n)).collect::<Result<_>>()?;
    let (m, k) = spec.rewrite_word(&w, Strategy::Leftmost);
    Ok(TwistedPoly::term(spec, m, spec.phase().lambda_pow(k)?))
}

/// Normal form of a word with rules applied in random order.
pub fn poly_normal_form_random<C: ComplexScalar, R: Rng>(
    word: &[usize],
    spec: &Arc<GeneratorSpec>,
    rng: &mut R,
) -> Result<TwistedPoly<C>> {
    let (m, k) = spec.rewrite_word_random(word, rng);
    Ok(TwistedPoly::term(spec, m, spec.phase().lambda_pow(k)?))
}

pub fn poly_reduce<C: ComplexScalar>(p: &TwistedPoly<C>) -> Result<TwistedPoly<C>> {
    p.reduce()
}

struct LambdaCache<C> {
    spec: Arc<GeneratorSpec>,
    cache: HashMap<i64, C>,
}

impl<C: ComplexScalar> LambdaCache<C> {
    fn new(spec: &Arc<GeneratorSpec>) -> Self {
        LambdaCache { spec: spec.clone(), cache: HashMap::new() }
    }

    fn get(&mut self, k: i64) -> C {
        let phase = self.spec.phase();
        let key = phase.exponent(k).unwrap_or(k);
        self.cache
            .entry(key)
            .or_insert_with(|| phase.lambda_pow(key).expect("phase compatible with coefficients"))
            .clone()
    }
}

impl<C: ComplexScalar> PartialEq for TwistedPoly<C> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl<C: ComplexScalar> fmt::Debug for TwistedPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| format!("({c:?}) {}", self.spec.monomial_string(m)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<C: ComplexScalar> TwistedPoly<C> {
    /// Number of nonzero terms of the scalar-free part.
    pub fn nonscalar_len(&self) -> usize {
        self.terms.keys().filter(|m| m.iter().any(|&e| e > 0)).count()
    }

    /// Removes the constant term.
    pub fn without_scalar(&self) -> Self {
        let mut out = self.clone();
        out.terms.remove(&vec![0; self.spec.len()]);
        out
    }

    pub fn max_coeff(&self) -> f64 {
        self.terms.values().map(Scalar::magnitude).fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_core::Phase;
    use crate::Cyclotomic;
    use crate::Field;
    use num_traits::One;

    type P = TwistedPoly<Cyclotomic>;

    fn spec(p: i64, q: i64) -> Arc<GeneratorSpec> {
        Arc::new(GeneratorSpec::s4_theta(Phase::rational(p, q).unwrap()).unwrap())
    }

    #[test]
    fn beta_alpha_normal_form() {
        let s = spec(1, 5);
        let lam: Cyclotomic = s.phase().lambda_pow(1).unwrap();
        let ba: P = poly_normal_form(&["b", "a"], &s).unwrap();
        let ab: P = poly_normal_form(&["a", "b"], &s).unwrap();
        assert_eq!(ba, ab.scale(&lam.inv()));
        let ta: P = poly_normal_form(&["t", "a"], &s).unwrap();
        assert_eq!(ta, poly_normal_form(&["a", "t"], &s).unwrap());
    }

    #[test]
    fn sphere_relation_reduces_to_zero() {
        let s = spec(1, 4);
        let g = |n| P::generator(&s, n).unwrap();
        let r = g("a").mul(&g("a*")).add(&g("b").mul(&g("b*"))).add(&g("t").mul(&g("t"))).sub(&g("t"));
        assert!(r.reduce().unwrap().is_zero());
        assert!(P::zero(&s).reduce().unwrap().is_zero());
    }

    #[test]
    fn alpha_alpha_star_central_in_alpha_beta() {
        let s = spec(1, 5);
        let g = |n| P::generator(&s, n).unwrap();
        let aa = g("a").mul(&g("a*"));
        assert!(aa.commutator(&g("b")).reduce().unwrap().is_zero());
    }

    #[test]
    fn reduction_is_idempotent_and_t_degree_bounded() {
        let s = spec(1, 5);
        let t = P::generator(&s, "t").unwrap();
        let p = t.pow(5).mul(&P::generator(&s, "b").unwrap());
        let r = p.reduce().unwrap();
        assert_eq!(r.reduce().unwrap(), r);
        assert!(r.terms().all(|(m, _)| m[4] <= 1));
    }

    #[test]
    fn budget_guard() {
        let s = Arc::new(GeneratorSpec::s4_theta(Phase::rational(1, 5).unwrap()).unwrap().with_budget(2));
        let t = P::generator(&s, "t").unwrap();
        assert!(matches!(t.pow(8).reduce(), Err(NcgError::Reduction(2))));
    }

    #[test]
    fn star_is_anti_multiplicative() {
        let s = spec(2, 5);
        let g = |n| P::generator(&s, n).unwrap();
        let x = g("a").mul(&g("b")).add(&g("t").scale(&Cyclotomic::i()));
        let y = g("b*").mul(&g("a*")).add(&P::one(&s));
        assert_eq!(x.mul(&y).star(), y.star().mul(&x.star()));
        assert_eq!(x.star().star(), x);
    }

    #[test]
    fn transport_to_reversed_order() {
        let ph = Phase::rational(1, 5).unwrap();
        let s = Arc::new(GeneratorSpec::s4_theta(ph).unwrap());
        let r = Arc::new(GeneratorSpec::s4_theta_reversed(ph).unwrap());
        let ab: P = poly_normal_form(&["a", "b"], &s).unwrap();
        let back = ab.transport(&r).unwrap().transport(&s).unwrap();
        assert_eq!(back, ab);
        assert!(P::one(&s).transport(&r).unwrap().scalar_part().is_one());
    }
}
