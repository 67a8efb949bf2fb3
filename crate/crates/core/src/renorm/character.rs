//! Characters of the tree Hopf algebra with Laurent-series values.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{NcgError, Result};
use crate::renorm::hopf::{antipode_forest, coproduct, coproduct_forest, AntipodeCache};
use crate::renorm::laurent::{Coefficient, LaurentSeries, DEFAULT_ORDER};
use crate::renorm::tree::{Forest, Tree};
use crate::scalar::{rat, Rational};

/// A character given by its values on trees, extended multiplicatively to forests.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HopfCharacter<S: Coefficient> {
    values: BTreeMap<Tree, LaurentSeries<S>>,
}

impl<S: Coefficient> HopfCharacter<S> {
    /// A character from a user table. The domain must be closed under taking
    /// admissible-cut pieces, which holds when it contains every tree up to some size.
    pub fn from_table(values: BTreeMap<Tree, LaurentSeries<S>>) -> Result<Self> {
        for t in values.keys() {
            for term in coproduct(t) {
                let missing = term.pruned.trees().iter().chain(term.root.iter()).find(|p| !values.contains_key(p));
                if let Some(m) = missing {
                    return Err(NcgError::Precondition(format!("table has {t} but not its piece {m}")));
                }
            }
        }
        Ok(HopfCharacter { values })
    }

    /// The counit `ε`, zero on every tree with at most `max_nodes` nodes.
    pub fn counit(max_nodes: usize) -> Self {
        Self::from_fn(max_nodes, |_| LaurentSeries::zero())
    }

    pub fn from_fn(max_nodes: usize, f: impl Fn(&Tree) -> LaurentSeries<S>) -> Self {
        HopfCharacter { values: Tree::enumerate_up_to(max_nodes).into_iter().map(|t| { let v = f(&t); (t, v) }).collect() }
    }

    pub fn get(&self, t: &Tree) -> Result<&LaurentSeries<S>> {
        self.values.get(t).ok_or_else(|| NcgError::Precondition(format!("character undefined on {t}")))
    }

    /// `φ(t₁⋯t_k) = φ(t₁)⋯φ(t_k)`, with `φ(1) = 1`.
    pub fn eval_forest(&self, f: &Forest) -> Result<LaurentSeries<S>> {
        f.trees().iter().try_fold(LaurentSeries::one(), |acc, t| Ok(acc.mul(self.get(t)?)))
    }

    pub fn trees(&self) -> impl Iterator<Item = &Tree> {
        self.values.keys()
    }

    pub fn values(&self) -> &BTreeMap<Tree, LaurentSeries<S>> {
        &self.values
    }

    /// Largest tree size in the domain.
    pub fn max_nodes(&self) -> usize {
        self.values.keys().map(Tree::len).max().unwrap_or(0)
    }

    /// Restriction to trees with at most `n` nodes.
    pub fn restrict(&self, n: usize) -> Self {
        HopfCharacter { values: self.values.iter().filter(|(t, _)| t.len() <= n).map(|(t, v)| (t.clone(), v.clone())).collect() }
    }

    pub fn map_values(&self, f: impl Fn(&Tree, &LaurentSeries<S>) -> LaurentSeries<S>) -> Self {
        HopfCharacter { values: self.values.iter().map(|(t, v)| (t.clone(), f(t, v))).collect() }
    }

    /// Applies `f` to every coefficient, e.g. to substitute a value for `L`.
    pub fn map_coefficients<T: Coefficient>(&self, f: impl Fn(&S) -> T) -> HopfCharacter<T> {
        HopfCharacter { values: self.values.iter().map(|(t, v)| (t.clone(), v.map(&f))).collect() }
    }

    /// Convolution `(f ⋆ g)(t) = Σ f(P_c) g(R_c)` over the full coproduct.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        let mut values = BTreeMap::new();
        for t in self.values.keys().filter(|t| other.values.contains_key(*t)) {
            values.insert(t.clone(), convolve_at(self, other, &Forest::single(t.clone()))?);
        }
        Ok(HopfCharacter { values })
    }

    /// `φ⁻¹ = φ ∘ S`.
    pub fn inverse(&self) -> Result<Self> {
        let mut cache = AntipodeCache::default();
        let mut values = BTreeMap::new();
        for t in self.values.keys() {
            let s = antipode_forest(&Forest::single(t.clone()), &mut cache);
            let mut acc = LaurentSeries::zero();
            for (f, c) in s {
                acc = acc.add(&self.eval_forest(&f)?.scale(&S::from_i64(c)));
            }
            values.insert(t.clone(), acc);
        }
        Ok(HopfCharacter { values })
    }

    /// True when both characters agree on their common domain through the common truncation.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.values.iter().all(|(t, v)| other.values.get(t).is_none_or(|w| v.agrees_with(w)))
    }

    /// True when no value involves the symbol `L`.
    pub fn is_l_free(&self) -> bool {
        self.values.values().all(LaurentSeries::is_l_free)
    }
}

/// `(f ⋆ g)` evaluated on a forest through the multiplicative coproduct.
pub fn convolve_at<S: Coefficient>(f: &HopfCharacter<S>, g: &HopfCharacter<S>, x: &Forest) -> Result<LaurentSeries<S>> {
    let mut acc = LaurentSeries::zero();
    for ((a, b), c) in coproduct_forest(x) {
        acc = acc.add(&f.eval_forest(&a)?.mul(&g.eval_forest(&b)?).scale(&S::from_i64(c)));
    }
    Ok(acc)
}

/// `θ_{tε}`: multiplies `γ(t)` by `e^{|t|·tε}`.
///
/// Each value keeps its own truncation; exact values are expanded through
/// `ε^{DEFAULT_ORDER}`.
pub fn theta_action<S: Coefficient>(t_param: &S, gamma: &HopfCharacter<S>) -> HopfCharacter<S> {
    theta_action_to(t_param, gamma, DEFAULT_ORDER)
}

/// [`theta_action`] with an explicit truncation for exact values.
pub fn theta_action_to<S: Coefficient>(t_param: &S, gamma: &HopfCharacter<S>, order: i32) -> HopfCharacter<S> {
    gamma.map_values(|t, v| {
        if v.is_zero() && v.is_exact() {
            return v.clone();
        }
        let target = if v.is_exact() { order } else { v.order() };
        let low = v.valuation().unwrap_or(0);
        let c = t_param.clone() * S::from_i64(t.len() as i64);
        v.mul(&LaurentSeries::exp_linear(&c, target - low)).truncate(target)
    })
}

/// The toy rule `φ_L(B₊(F)) = e^{εL} (w(|B₊F|)/ε) φ_L(F)`, that is
/// `φ_L(t) = e^{|t|εL} ε^{−|t|} Π_v w(|t_v|)`, on trees up to `max_nodes` and
/// known through `ε^order`.
pub fn b_plus_rule<S: Coefficient>(
    weight: impl Fn(usize) -> Rational,
    l: &S,
    max_nodes: usize,
    order: i32,
) -> HopfCharacter<S> {
    HopfCharacter::from_fn(max_nodes, |t| {
        let n = t.len() as i32;
        let w = t.sizes().iter().fold(S::one(), |acc, &s| acc * S::from_rational(&weight(s)));
        let c = l.clone() * S::from_i64(n as i64);
        LaurentSeries::exp_linear(&c, order + n).shift(-n).scale(&w)
    })
}

/// The ladder rule `φ_L(t) = e^{|t|εL}/(t! ε^{|t|})`, so `φ_L(ℓ_n) = e^{nεL}/(n! εⁿ)`.
pub fn ladder_rule<S: Coefficient>(l: &S, max_nodes: usize, order: i32) -> HopfCharacter<S> {
    b_plus_rule(|s| rat(1, s as i64), l, max_nodes, order)
}

/// The unit-weight rule `φ_L(t) = (e^{εL}/ε)^{|t|}`. Its counterterms depend on `L`.
pub fn power_rule<S: Coefficient>(l: &S, max_nodes: usize, order: i32) -> HopfCharacter<S> {
    b_plus_rule(|_| rat(1, 1), l, max_nodes, order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use crate::RationalPoly;

    type Q = Rational;
    type P = RationalPoly;

    #[test]
    fn ladder_values() {
        let phi = ladder_rule(&P::x(), 3, 2);
        let l2 = phi.get(&Tree::ladder(2)).unwrap();
        // e^{2εL}/(2ε²) = 1/(2ε²) + L/ε + L² + …
        assert_eq!(l2.coeff(-2), P::constant(rat(1, 2)));
        assert_eq!(l2.coeff(-1), P::x());
        assert_eq!(l2.coeff(0), P::x() * P::x());
        assert_eq!(l2.order(), 2);
        assert_eq!(phi.trees().count(), 4);
    }

    #[test]
    fn convolution_with_counit() {
        let phi = ladder_rule(&rat(1, 1), 4, 3);
        let e = HopfCharacter::<Q>::counit(4);
        assert!(phi.convolve(&e).unwrap().agrees_with(&phi));
        assert!(e.convolve(&phi).unwrap().agrees_with(&phi));
    }

    #[test]
    fn inverse_is_two_sided() {
        let phi = ladder_rule(&P::x(), 4, 4);
        let inv = phi.inverse().unwrap();
        let e = HopfCharacter::<P>::counit(4);
        assert!(phi.convolve(&inv).unwrap().agrees_with(&e));
        assert!(inv.convolve(&phi).unwrap().agrees_with(&e));
    }

    #[test]
    fn theta_shifts_l() {
        // θ_{tε}(φ_L) = φ_{L+t}
        let phi = ladder_rule(&P::x(), 4, 3);
        let t = P::constant(rat(3, 2));
        let shifted = ladder_rule(&(P::x() + t.clone()), 4, 3);
        assert_eq!(theta_action(&t, &phi), shifted);
        assert_eq!(theta_action(&P::zero(), &phi), phi);
    }

    #[test]
    fn table_domain_checked() {
        let mut m = BTreeMap::new();
        m.insert(Tree::ladder(2), LaurentSeries::<Q>::one());
        assert!(matches!(HopfCharacter::from_table(m.clone()), Err(NcgError::Precondition(_))));
        m.insert(Tree::single(), LaurentSeries::one());
        assert!(HopfCharacter::from_table(m).is_ok());
    }
}
