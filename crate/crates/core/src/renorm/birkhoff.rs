//! Bogoliubov recursion, Birkhoff decomposition, residue and β-function.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{NcgError, Result};
use crate::renorm::character::HopfCharacter;
use crate::renorm::hopf::proper_cuts;
use crate::renorm::laurent::{Coefficient, LaurentSeries};
use crate::renorm::tree::Tree;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Bogoliubov<S: Coefficient> {
    /// `R̄(t) = U(t) + Σ_c C(P_c) U(R_c)`.
    pub r_bar: LaurentSeries<S>,
    /// `C(t) = −T(R̄(t))`.
    pub counterterm: LaurentSeries<S>,
    /// `R(t) = R̄(t) + C(t)`.
    pub renormalized: LaurentSeries<S>,
}

/// Counterterms computed so far, keyed by tree. One writer at a time.
#[derive(Clone, Debug, Default)]
pub struct BirkhoffCache<S: Coefficient> {
    counterterms: BTreeMap<Tree, LaurentSeries<S>>,
}

impl<S: Coefficient> BirkhoffCache<S> {
    pub fn new() -> Self {
        BirkhoffCache { counterterms: BTreeMap::new() }
    }

    pub fn get(&self, t: &Tree) -> Option<&LaurentSeries<S>> {
        self.counterterms.get(t)
    }

    pub fn len(&self) -> usize {
        self.counterterms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counterterms.is_empty()
    }
}

fn counterterm<S: Coefficient>(gamma: &HopfCharacter<S>, t: &Tree, cache: &mut BirkhoffCache<S>) -> Result<LaurentSeries<S>> {
    if let Some(c) = cache.get(t) {
        return Ok(c.clone());
    }
    Ok(bogoliubov(gamma, t, cache)?.counterterm)
}

/// One step of the recursion, reusing and filling `cache` for every subtree.
pub fn bogoliubov<S: Coefficient>(
    gamma: &HopfCharacter<S>,
    t: &Tree,
    cache: &mut BirkhoffCache<S>,
) -> Result<Bogoliubov<S>> {
    let mut r_bar = gamma.get(t)?.clone();
    for (pruned, trunk) in proper_cuts(t) {
        let mut c = LaurentSeries::one();
        for p in pruned.trees() {
            c = c.mul(&counterterm(gamma, p, cache)?);
        }
        r_bar = r_bar.add(&c.mul(gamma.get(&trunk)?));
    }
    if r_bar.order() < 0 {
        return Err(NcgError::Order(format!(
            "R̄({t}) is known only through ε^{}; raise the truncation to reach the finite part",
            r_bar.order()
        )));
    }
    let counterterm = r_bar.pole_part().neg();
    let renormalized = r_bar.add(&counterterm);
    cache.counterterms.insert(t.clone(), counterterm.clone());
    Ok(Bogoliubov { r_bar, counterterm, renormalized })
}

/// `γ = γ₋⁻¹ γ₊` with `γ₋ = C` and `γ₊ = R` on every tree of the domain.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Birkhoff<S: Coefficient> {
    pub minus: HopfCharacter<S>,
    pub plus: HopfCharacter<S>,
    pub r_bar: BTreeMap<Tree, LaurentSeries<S>>,
}

pub fn birkhoff<S: Coefficient>(gamma: &HopfCharacter<S>) -> Result<Birkhoff<S>> {
    let mut cache = BirkhoffCache::new();
    birkhoff_with(gamma, &mut cache)
}

pub fn birkhoff_with<S: Coefficient>(gamma: &HopfCharacter<S>, cache: &mut BirkhoffCache<S>) -> Result<Birkhoff<S>> {
    let mut minus = BTreeMap::new();
    let mut plus = BTreeMap::new();
    let mut r_bar = BTreeMap::new();
    for t in gamma.trees() {
        let b = bogoliubov(gamma, t, cache)?;
        minus.insert(t.clone(), b.counterterm);
        plus.insert(t.clone(), b.renormalized);
        r_bar.insert(t.clone(), b.r_bar);
    }
    Ok(Birkhoff { minus: HopfCharacter::from_table(minus)?, plus: HopfCharacter::from_table(plus)?, r_bar })
}

impl<S: Coefficient> Birkhoff<S> {
    /// `γ₊ − γ₋ ⋆ γ` on every tree, through the available truncation.
    pub fn factorization_holds(&self, gamma: &HopfCharacter<S>) -> Result<bool> {
        Ok(self.minus.convolve(gamma)?.agrees_with(&self.plus))
    }

    /// `γ₋` takes values in `ε⁻¹ℚ[ε⁻¹]` and `γ₊` has no poles.
    pub fn is_split(&self) -> bool {
        self.minus.values().values().all(|c| c.valuation().is_none_or(|_| c.terms().all(|(k, _)| k < 0)))
            && self.plus.values().values().all(|r| r.pole_order() == 0)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Residue<S: Coefficient> {
    /// `Res γ(t) = −[ε⁻¹] γ₋(t)`.
    pub res: BTreeMap<Tree, S>,
    /// `β(t) = |t| Res γ(t)`.
    pub beta: BTreeMap<Tree, S>,
}

/// Residue `−(∂_u γ₋(1/u))_{u=0}` and `β = Y Res` with `Y` the node-count grading.
///
/// With `γ₋(t) = Σ_k c_k ε^{−k}`, `γ₋(1/u)(t) = Σ_k c_k u^k`, so the derivative
/// at `u = 0` is the `ε⁻¹` coefficient.
pub fn residue_and_beta<S: Coefficient>(minus: &HopfCharacter<S>) -> Residue<S> {
    let mut res = BTreeMap::new();
    let mut beta = BTreeMap::new();
    for (t, c) in minus.values() {
        let r = -c.coeff(-1);
        beta.insert(t.clone(), r.clone() * S::from_i64(t.len() as i64));
        res.insert(t.clone(), r);
    }
    Residue { res, beta }
}
