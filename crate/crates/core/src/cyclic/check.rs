use rand::Rng;
use serde::Serialize;

use crate::cyclic::lambda::{lambda_module_check, RelationCheck};
use crate::cyclic::{connes_b, hochschild_b, is_cyclic, signed_shift, symmetrizer, Cochain, FinAlgebra};
use crate::error::{NcgError, Result};
use crate::scalar::{Field, Rational};

#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub identity: String,
    /// Degree of the input cochain.
    pub degree: usize,
    pub normalized: bool,
    pub pass: bool,
    /// First basis tuple where the identity fails.
    pub witness: Option<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CyclicReport {
    pub algebra: String,
    pub max_degree: usize,
    pub identities: Vec<IdentityCheck>,
    pub lambda_relations: Vec<RelationCheck>,
}

impl CyclicReport {
    pub fn all_pass(&self) -> bool {
        self.identities.iter().all(|c| c.pass) && self.lambda_relations.iter().all(|c| c.pass)
    }
}

/// Named algebras accepted by [`algebra_by_name`].
pub const ALGEBRA_NAMES: &[&str] = &["c", "m2", "m3", "z2", "z3", "fun2", "fun3"];

pub fn algebra_by_name<F: Field>(name: &str) -> Result<FinAlgebra<F>> {
    match name {
        "c" => Ok(FinAlgebra::scalars()),
        "m2" => FinAlgebra::matrix(2),
        "m3" => FinAlgebra::matrix(3),
        "z2" => FinAlgebra::cyclic_group(2),
        "z3" => FinAlgebra::cyclic_group(3),
        "fun2" => FinAlgebra::functions_on_cyclic(2),
        "fun3" => FinAlgebra::functions_on_cyclic(3),
        _ => Err(NcgError::Parameter(format!("unknown algebra {name}; expected one of {}", ALGEBRA_NAMES.join(", ")))),
    }
}

fn zero_check<F: Field>(name: &str, degree: usize, normalized: bool, c: &Cochain<F>) -> IdentityCheck {
    let zero = Cochain::zeros(c.dim(), c.degree()).expect("same shape as an existing cochain");
    let witness = c.first_difference(&zero, 0.0);
    IdentityCheck { identity: name.into(), degree, normalized, pass: witness.is_none(), witness }
}

/// Checks `b² = 0`, `B² = 0`, `bB + Bb = 0`, `A(1 − λ) = 0` and that `b`
/// preserves cyclic cochains, on random exact cochains of degree `≤ max_degree`,
/// plus the Λ relations up to `lambda_degree`.
pub fn check_identities(
    name: &str,
    alg: &FinAlgebra<Rational>,
    max_degree: usize,
    lambda_degree: usize,
    rng: &mut impl Rng,
) -> Result<CyclicReport> {
    if max_degree > 4 {
        return Err(NcgError::Size { size: max_degree, budget: 4 });
    }
    let d = alg.dim();
    let mut identities = Vec::new();
    for normalized in [false, true] {
        if normalized && !alg.unit_is_first() {
            continue;
        }
        for n in 0..=max_degree {
            let phi = if normalized {
                Cochain::<Rational>::random_normalized(d, n, rng)?
            } else {
                Cochain::<Rational>::random(d, n, rng)?
            };
            let bphi = hochschild_b(alg, &phi)?;
            identities.push(zero_check("b∘b = 0", n, normalized, &hochschild_b(alg, &bphi)?));
            if n >= 1 {
                let bbig = connes_b(alg, &phi)?;
                let anti = hochschild_b(alg, &bbig)?.add(&connes_b(alg, &bphi)?)?;
                identities.push(zero_check("bB + Bb = 0", n, normalized, &anti));
            }
            if n >= 2 {
                identities.push(zero_check("B∘B = 0", n, normalized, &connes_b(alg, &connes_b(alg, &phi)?)?));
            }
            let a = symmetrizer(&phi.sub(&signed_shift(&phi))?);
            identities.push(zero_check("A(1 − λ) = 0", n, normalized, &a));
            let cyc = symmetrizer(&phi);
            let pass = is_cyclic(&cyc) && is_cyclic(&hochschild_b(alg, &cyc)?);
            identities.push(IdentityCheck {
                identity: "φ cyclic ⇒ bφ cyclic".into(),
                degree: n,
                normalized,
                pass,
                witness: None,
            });
        }
    }
    let lambda = lambda_module_check(alg, lambda_degree, rng)?;
    Ok(CyclicReport { algebra: name.into(), max_degree, identities, lambda_relations: lambda.checks })
}
