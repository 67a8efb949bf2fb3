//! The scattering formula `γ₋(ε) = lim_{t→∞} e^{−t(β/ε + Z₀)} e^{tZ₀}` and the
//! one-parameter group `F_t`.
//!
//! In `G ⋊ ℝ` with `[Z₀, X] = Y(X)`, the product `g(t) = e^{−t(X + Z₀)} e^{tZ₀}`
//! solves `g' = −g ⋆ θ_{−t}(X)`, `g(0) = 1`. On trees of size at most `N` the
//! solution is a finite sum `Σ_k a_k e^{−kt}` with Laurent coefficients `a_k`,
//! computed exactly degree by degree.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{NcgError, Result};
use crate::renorm::birkhoff::{birkhoff, residue_and_beta};
use crate::renorm::character::{theta_action_to, HopfCharacter};
use crate::renorm::hopf::coproduct;
use crate::renorm::laurent::{Coefficient, LaurentSeries};
use crate::renorm::tree::Tree;

/// `Σ_k a_k e^{−kt}`, keyed by `k`.
type ExpSum<S> = BTreeMap<u32, LaurentSeries<S>>;

fn exp_mul<S: Coefficient>(a: &ExpSum<S>, b: &ExpSum<S>) -> ExpSum<S> {
    let mut out = ExpSum::new();
    for (i, x) in a {
        for (j, y) in b {
            let v = out.remove(&(i + j)).unwrap_or_else(LaurentSeries::zero).add(&x.mul(y));
            out.insert(i + j, v);
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn exp_one<S: Coefficient>() -> ExpSum<S> {
    ExpSum::from([(0, LaurentSeries::one())])
}

/// Grading truncation accepted by the scattering routines.
pub const MAX_SCATTERING_NODES: usize = 4;

/// `g(t) = e^{−t(β/ε + Z₀)} e^{tZ₀}` on every tree up to `N` nodes.
#[derive(Clone, Debug, Serialize)]
pub struct ScatteringProduct<S: Coefficient> {
    pub terms: BTreeMap<Tree, BTreeMap<u32, LaurentSeries<S>>>,
}

/// Builds `g(t)` exactly from an infinitesimal character `β` on trees up to `n` nodes.
pub fn scattering_product<S: Coefficient>(beta: &BTreeMap<Tree, S>, n: usize) -> Result<ScatteringProduct<S>> {
    let mut terms: BTreeMap<Tree, ExpSum<S>> = BTreeMap::new();
    for t in Tree::enumerate_up_to(n) {
        let mut g = ExpSum::new();
        for term in coproduct(&t) {
            let Some(r) = term.root else { continue };
            let b = beta.get(&r).ok_or_else(|| NcgError::Precondition(format!("β undefined on {r}")))?;
            if b.is_zero() {
                continue;
            }
            let gp = term.pruned.trees().iter().fold(exp_one(), |acc, p| exp_mul(&acc, &terms[p]));
            // −∫₀ᵗ a e^{−(k+m)s} β(R)/ε ds = −a β(R)/(ε(k+m)) (1 − e^{−(k+m)t})
            let m = r.len() as u32;
            for (k, a) in gp {
                let c = a.scale(&(-b.clone() * S::from_ratio(1, (k + m) as i64))).shift(-1);
                for (key, v) in [(0, c.clone()), (k + m, c.neg())] {
                    let cur = g.remove(&key).unwrap_or_else(LaurentSeries::zero).add(&v);
                    g.insert(key, cur);
                }
            }
        }
        g.retain(|_, v| !v.is_zero());
        terms.insert(t, g);
    }
    Ok(ScatteringProduct { terms })
}

impl<S: Coefficient> ScatteringProduct<S> {
    /// The `t → ∞` limit, the `e^{0}` part.
    pub fn limit(&self) -> HopfCharacter<S> {
        HopfCharacter::from_table(
            self.terms.iter().map(|(t, g)| (t.clone(), g.get(&0).cloned().unwrap_or_else(LaurentSeries::zero))).collect(),
        )
        .expect("every tree up to N is present")
    }

    /// `ε^j` coefficients of `g(t)(T)` at a numeric `t`.
    pub fn value_at(&self, tree: &Tree, t: f64) -> Result<BTreeMap<i32, f64>> {
        let g = self.terms.get(tree).ok_or_else(|| NcgError::Precondition(format!("no value on {tree}")))?;
        let mut out = BTreeMap::new();
        for (k, a) in g {
            let w = (-(*k as f64) * t).exp();
            for (j, c) in a.terms() {
                *out.entry(j).or_insert(0.0) += w * numeric(c)?;
            }
        }
        Ok(out)
    }

    /// Coefficient-wise `max |g(t)(T) − γ₋(T)|` over all trees.
    pub fn distance_at(&self, minus: &HopfCharacter<S>, t: f64) -> Result<f64> {
        let mut d: f64 = 0.0;
        for tree in self.terms.keys() {
            let mut v = self.value_at(tree, t)?;
            for (j, c) in minus.get(tree)?.terms() {
                *v.entry(j).or_insert(0.0) -= numeric(c)?;
            }
            d = v.values().fold(d, |m, x| m.max(x.abs()));
        }
        Ok(d)
    }
}

fn numeric<S: Coefficient>(c: &S) -> Result<f64> {
    c.to_f64().ok_or_else(|| NcgError::Domain(format!("coefficient {c} depends on L")))
}

#[derive(Clone, Debug, Serialize)]
pub struct ScatteringReport {
    pub nodes: usize,
    pub t: f64,
    /// Coefficient-wise distance between `γ₋` and the product at `t`.
    pub distance: f64,
    /// The exact `t → ∞` limit equals `γ₋` on every tree.
    pub limit_matches: bool,
}

fn prepare<S: Coefficient>(gamma: &HopfCharacter<S>, n: usize) -> Result<(HopfCharacter<S>, ScatteringProduct<S>)> {
    if n > MAX_SCATTERING_NODES {
        return Err(NcgError::Size { size: n, budget: MAX_SCATTERING_NODES });
    }
    if gamma.max_nodes() < n {
        return Err(NcgError::Precondition(format!("character is defined only up to {} nodes", gamma.max_nodes())));
    }
    let minus = birkhoff(&gamma.restrict(n))?.minus;
    let beta = residue_and_beta(&minus).beta;
    let product = scattering_product(&beta, n)?;
    Ok((minus, product))
}

/// Compares `γ₋` of `gamma` with the scattering product at `t_large`, grading truncated at `n ≤ 4`.
pub fn scattering_check<S: Coefficient>(gamma: &HopfCharacter<S>, t_large: f64, n: usize) -> Result<ScatteringReport> {
    let (minus, product) = prepare(gamma, n)?;
    Ok(ScatteringReport {
        nodes: n,
        t: t_large,
        distance: product.distance_at(&minus, t_large)?,
        limit_matches: product.limit().agrees_with(&minus),
    })
}

/// Distances on `t₀, 2t₀, 4t₀, …`; a convergence error flags any increase.
pub fn scattering_sequence<S: Coefficient>(gamma: &HopfCharacter<S>, t0: f64, steps: usize, n: usize) -> Result<Vec<(f64, f64)>> {
    let (minus, product) = prepare(gamma, n)?;
    let mut out: Vec<(f64, f64)> = Vec::with_capacity(steps);
    let mut t = t0;
    for _ in 0..steps {
        let d = product.distance_at(&minus, t)?;
        if let Some(&(tp, dp)) = out.last() {
            if d > dp {
                return Err(NcgError::Convergence(format!("distance rose from {dp:e} at t = {tp} to {d:e} at t = {t}")));
            }
        }
        out.push((t, d));
        t *= 2.0;
    }
    Ok(out)
}

/// `F_t = lim_{ε→0} γ₋(ε) θ_{tε}(γ₋(ε)⁻¹)`.
pub fn one_parameter<S: Coefficient>(minus: &HopfCharacter<S>, t: &S) -> Result<HopfCharacter<S>> {
    let order = minus.max_nodes() as i32;
    let moved = theta_action_to(t, &minus.inverse()?, order);
    let product = minus.convolve(&moved)?;
    let mut values = BTreeMap::new();
    for (tree, v) in product.values() {
        if !v.pole_part().is_zero() {
            return Err(NcgError::Convergence(format!("γ₋θ(γ₋⁻¹) has a pole on {tree}: {v}")));
        }
        values.insert(tree.clone(), LaurentSeries::constant(v.finite_part()?));
    }
    HopfCharacter::from_table(values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::renorm::character::{ladder_rule, theta_action_to};
    use crate::renorm::hopf::coproduct_forest;
    use crate::renorm::tree::Forest;
    use crate::scalar::{rat, Rational, Scalar};
    use crate::RationalPoly;
    use nalgebra::DMatrix;

    type Q = Rational;
    type P = RationalPoly;

    fn generic_beta(n: usize) -> BTreeMap<Tree, Q> {
        Tree::enumerate_up_to(n).into_iter().enumerate().map(|(i, t)| (t, rat(i as i64 % 3 + 1, (i as i64 % 2) + 1))).collect()
    }

    #[test]
    fn zero_beta_gives_counit() {
        let beta: BTreeMap<Tree, Q> = Tree::enumerate_up_to(3).into_iter().map(|t| (t, rat(0, 1))).collect();
        let g = scattering_product(&beta, 3).unwrap();
        let e = HopfCharacter::counit(3);
        for t in [0.5, 4.0, 8.0] {
            assert_eq!(g.distance_at(&e, t).unwrap(), 0.0);
        }
    }

    #[test]
    fn ladder_limit_is_minus_part() {
        let phi = ladder_rule(&rat(1, 1), 4, 6);
        let r4 = scattering_check(&phi, 4.0, 2).unwrap();
        let r8 = scattering_check(&phi, 8.0, 2).unwrap();
        assert!(r8.distance < r4.distance, "{r4:?} {r8:?}");
        assert!(r4.limit_matches && r8.limit_matches);
        let seq = scattering_sequence(&phi, 1.0, 5, 4).unwrap();
        assert!(seq.last().unwrap().1 < 1e-6);
    }

    #[test]
    fn truncation_budget() {
        let phi = ladder_rule(&rat(1, 1), 5, 6);
        assert!(matches!(scattering_check(&phi, 1.0, 5), Err(NcgError::Size { .. })));
        let small = ladder_rule(&rat(1, 1), 2, 6);
        assert!(matches!(scattering_check(&small, 1.0, 3), Err(NcgError::Precondition(_))));
    }

    /// `ρ(X) = (id ⊗ X)Δ` on forests of degree `≤ n`, with `ρ(Z₀) = −Y`.
    fn matrix_oracle(beta: &BTreeMap<Tree, Q>, n: usize, eps: f64, t: f64) -> BTreeMap<Tree, f64> {
        let mut basis: Vec<Forest> = vec![Forest::empty()];
        for m in 1..=n {
            let mut fs: Vec<Forest> = Vec::new();
            for k in 1..=m {
                for tr in Tree::enumerate(k) {
                    if k == m {
                        fs.push(Forest::single(tr));
                    } else {
                        for rest in basis.iter().filter(|f| f.degree() == m - k) {
                            fs.push(rest.mul(&Forest::single(tr.clone())));
                        }
                    }
                }
            }
            fs.sort();
            fs.dedup();
            basis.extend(fs);
        }
        let idx: BTreeMap<Forest, usize> = basis.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();
        let d = basis.len();
        let mut a = DMatrix::<f64>::zeros(d, d);
        let mut y = DMatrix::<f64>::zeros(d, d);
        for (j, f) in basis.iter().enumerate() {
            y[(j, j)] = f.degree() as f64;
            for ((l, r), c) in coproduct_forest(f) {
                if let [tree] = r.trees() {
                    let b = beta[tree].to_f64().unwrap();
                    a[(idx[&l], j)] += c as f64 * b;
                }
            }
        }
        let m = (&y * t - &a * (t / eps)).exp() * (&y * -t).exp();
        basis.iter().enumerate().filter_map(|(j, f)| match f.trees() {
            [tree] => Some((tree.clone(), m[(0, j)])),
            _ => None,
        }).collect()
    }

    #[test]
    fn agrees_with_semidirect_matrix_exponentials() {
        let beta = generic_beta(3);
        let g = scattering_product(&beta, 3).unwrap();
        let eps = 0.7;
        for t in [0.5, 2.0] {
            let oracle = matrix_oracle(&beta, 3, eps, t);
            for (tree, want) in oracle {
                let got: f64 = g.value_at(&tree, t).unwrap().iter().map(|(j, c)| c * eps.powi(*j)).sum();
                assert!((got - want).abs() < 1e-9 * want.abs().max(1.0), "{tree}: {got} vs {want}");
            }
        }
    }

    #[test]
    fn scattering_limit_gives_local_character() {
        // θ_{Lε}(g∞⁻¹) has minus part g∞ exactly when g∞ satisfies the ε → 0 convergence.
        let beta = generic_beta(4);
        let g_inf = scattering_product(&beta, 4).unwrap().limit();
        let lifted = g_inf.map_coefficients(|c| P::constant(c.clone()));
        let gamma = theta_action_to(&P::x(), &lifted.inverse().unwrap(), 6);
        let b = birkhoff(&gamma).unwrap();
        assert!(b.minus.is_l_free());
        assert!(b.minus.agrees_with(&lifted));
        let res = residue_and_beta(&b.minus);
        for (t, v) in &beta {
            assert_eq!(res.beta[t], P::constant(v.clone()), "{t}");
        }
    }

    #[test]
    fn one_parameter_group() {
        let minus = birkhoff(&ladder_rule(&P::x(), 4, 6)).unwrap().minus;
        let (s, t) = (P::from_ratio(1, 3), P::from_ratio(5, 2));
        let fs = one_parameter(&minus, &s).unwrap();
        let ft = one_parameter(&minus, &t).unwrap();
        let fst = one_parameter(&minus, &(s.clone() + t.clone())).unwrap();
        assert!(fs.convolve(&ft).unwrap().agrees_with(&fst));
        // With t = L symbolic, ∂_t F_t at 0 is β.
        let fl = one_parameter(&minus, &P::x()).unwrap();
        let beta = residue_and_beta(&minus).beta;
        for (tree, v) in fl.values() {
            assert_eq!(P::constant(v.coeff(0).coeff(1)), beta[tree], "{tree}");
        }
    }
}
