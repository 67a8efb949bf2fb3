//! The instanton projector over the θ-deformed four-sphere and exact checks of its
//! Chern character components.

mod chain;
mod projector;

use std::sync::Arc;

use serde::Serialize;

pub use chain::{ch1_projected, ch2_hochschild_check, chern_chain, TensorChain};
pub use projector::{build_projector, ch0_residual, verify_idempotent, ProjectorMatrix};

use crate::algebra_core::{GeneratorSpec, Monomial, Phase, TwistedPoly};
use crate::error::{NcgError, Result};
use crate::scalar::{ComplexScalar, Scalar};
use crate::Cyclotomic;

/// Projector with exact cyclotomic coefficients.
pub type ExactProjector = ProjectorMatrix<Cyclotomic>;

#[derive(Clone, Debug, Serialize)]
pub struct CommutativityReport {
    pub max_degree: u32,
    pub monomial_pairs: usize,
    /// Rendered `[x, y]` for every pair that does not commute.
    pub failures: Vec<String>,
}

impl CommutativityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn monomials_up_to(n: usize, max_degree: u32) -> Vec<Monomial> {
    let mut out = vec![vec![0; n]];
    for _ in 0..max_degree {
        let mut next = Vec::new();
        for m in &out {
            let last = m.iter().rposition(|&e| e > 0).unwrap_or(0);
            for g in last..n {
                let mut m2 = m.clone();
                m2[g] += 1;
                next.push(m2);
            }
        }
        out.extend(next.into_iter().filter(|m| m.iter().sum::<u32>() > 0));
        out.sort();
        out.dedup();
    }
    out
}

/// At `λ = 1` every pair of normal monomials `x, y` with `deg x + deg y ≤ max_degree`
/// commutes after reduction.
pub fn commutative_limit_check(spec: &Arc<GeneratorSpec>, max_degree: u32) -> Result<CommutativityReport> {
    if !spec.phase().same_as(&Phase::commutative()) {
        return Err(NcgError::Precondition(format!("commutative limit needs λ = 1, got θ = {}", spec.phase())));
    }
    let monos = monomials_up_to(spec.len(), max_degree);
    let mut failures = Vec::new();
    let mut pairs = 0;
    for (i, x) in monos.iter().enumerate() {
        for y in &monos[i + 1..] {
            if x.iter().chain(y).sum::<u32>() > max_degree {
                continue;
            }
            pairs += 1;
            let px = TwistedPoly::<Cyclotomic>::term(spec, x.clone(), Cyclotomic::from_i64(1));
            let py = TwistedPoly::term(spec, y.clone(), Cyclotomic::from_i64(1));
            let c = px.commutator(&py).reduce()?;
            if !c.is_zero() {
                failures.push(format!("[{}, {}] = {c:?}", spec.monomial_string(x), spec.monomial_string(y)));
            }
        }
    }
    Ok(CommutativityReport { max_degree, monomial_pairs: pairs, failures })
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub passed: bool,
    /// Surviving terms (zero when the identity holds).
    pub terms: usize,
    pub witness: Option<String>,
}

impl IdentityCheck {
    fn poly<C: ComplexScalar>(name: &str, p: &TwistedPoly<C>, expect_zero: bool) -> Self {
        IdentityCheck {
            name: name.into(),
            passed: p.is_zero() == expect_zero,
            terms: p.len(),
            witness: (!p.is_zero()).then(|| format!("{p:?}")),
        }
    }

    fn matrix<C: ComplexScalar>(name: &str, m: &ProjectorMatrix<C>, expect_zero: bool) -> Self {
        let terms = m.entries().iter().flatten().map(TwistedPoly::len).sum();
        IdentityCheck {
            name: name.into(),
            passed: m.is_zero() == expect_zero,
            terms,
            witness: m.first_nonzero().map(|(i, j, p)| format!("e[{i}][{j}]: {p:?}")),
        }
    }

    fn chain<C: ComplexScalar>(name: &str, c: &TensorChain<C>, expect_zero: bool) -> Self {
        IdentityCheck { name: name.into(), passed: c.is_zero() == expect_zero, terms: c.len(), witness: c.witness() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InstantonReport {
    pub theta: String,
    pub checks: Vec<IdentityCheck>,
}

impl InstantonReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Runs every identity for the projector at `θ`, in both generator orders, plus the
/// negative controls. Control checks pass when their residual is nonzero.
pub fn verify(phase: Phase) -> Result<InstantonReport> {
    let mut checks = Vec::new();
    for (label, spec) in [("", GeneratorSpec::s4_theta(phase)?), (" (reversed order)", GeneratorSpec::s4_theta_reversed(phase)?)] {
        let e = ExactProjector::instanton(Arc::new(spec))?;
        checks.push(IdentityCheck {
            name: format!("e* = e{label}"),
            passed: e.is_selfadjoint(),
            terms: 0,
            witness: None,
        });
        checks.push(IdentityCheck::matrix(&format!("e² = e{label}"), &verify_idempotent(&e)?, true));
        checks.push(IdentityCheck::poly(&format!("⟨ch₀(e)⟩ = 0{label}"), &ch0_residual(&e), true));
        checks.push(IdentityCheck::chain(&format!("⟨Ch₁(e)⟩ = 0{label}"), &ch1_projected(&e), true));
        checks.push(IdentityCheck::chain(&format!("b⟨Ch₂(e)⟩ = 0{label}"), &ch2_hochschild_check(&e)?, true));
    }
    let bare = ExactProjector::instanton(Arc::new(GeneratorSpec::s4_theta(phase)?.without_relations()))?;
    checks.push(IdentityCheck::matrix("control: e² ≠ e without the sphere relation", &verify_idempotent(&bare)?, false));
    let e = build_projector::<Cyclotomic>(phase)?;
    checks.push(IdentityCheck::chain("control: ⟨Ch₁(e)⟩ ≠ 0 without the scalar quotient", &chern_chain(&e, 1, false), false));
    Ok(InstantonReport { theta: phase.to_string(), checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_core::parse_poly;

    #[test]
    fn monomial_enumeration() {
        // Monomials of degree ≤ 2 in 5 variables: 1 + 5 + 15.
        assert_eq!(monomials_up_to(5, 2).len(), 21);
    }

    #[test]
    fn commutative_at_lambda_one() {
        let spec = Arc::new(GeneratorSpec::s4_theta(Phase::commutative()).unwrap());
        let r = commutative_limit_check(&spec, 6).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        assert!(r.monomial_pairs > 1000);
        let g = |n: &str| TwistedPoly::<Cyclotomic>::generator(&spec, n).unwrap();
        assert!(g("a").commutator(&g("b")).is_zero());
        assert!(g("a*").commutator(&g("b")).is_zero());
    }

    #[test]
    fn alpha_beta_commutator_at_lambda_i() {
        // αβ = λβα, so [α, β] = (1 − λ̄)αβ = (1 + i)αβ.
        let spec = Arc::new(GeneratorSpec::s4_theta(Phase::rational(1, 4).unwrap()).unwrap());
        let g = |n: &str| TwistedPoly::<Cyclotomic>::generator(&spec, n).unwrap();
        let c = g("a").commutator(&g("b"));
        let want: TwistedPoly<Cyclotomic> = parse_poly("(1 + i) a b", &spec).unwrap();
        assert_eq!(c, want);
        assert!(commutative_limit_check(&spec, 2).is_err());
    }

    #[test]
    fn identities_hold_at_theta_quarter() {
        let r = verify(Phase::rational(1, 4).unwrap()).unwrap();
        for c in &r.checks {
            assert!(c.passed, "{c:?}");
        }
    }
}
