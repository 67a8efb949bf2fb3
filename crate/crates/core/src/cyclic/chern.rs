use std::collections::BTreeMap;

use crate::cyclic::{Cochain, FinAlgebra};
use crate::error::{NcgError, Result};
use crate::scalar::Field;

/// A sparse element of `A^{⊗(n+1)}` in basis tensors.
#[derive(Clone, Debug, PartialEq)]
pub struct Chain<F> {
    degree: usize,
    dim: usize,
    terms: BTreeMap<Vec<usize>, F>,
}

impl<F: Field> Chain<F> {
    pub fn zero(dim: usize, degree: usize) -> Self {
        Chain { degree, dim, terms: BTreeMap::new() }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of tensor slots, `degree + 1`.
    pub fn slots(&self) -> usize {
        self.degree + 1
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &F)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, t: Vec<usize>, c: F) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(t).or_insert_with(F::zero);
        *e = e.clone() + c;
        self.terms.retain(|_, v| !v.is_zero());
    }

    /// Adds `c · v⁰ ⊗ … ⊗ vⁿ`, expanding in the basis.
    pub fn add_tensor(&mut self, c: F, factors: &[Vec<F>]) {
        let mut partial: Vec<(Vec<usize>, F)> = vec![(vec![], c)];
        for f in factors {
            let mut next = Vec::new();
            for (t, w) in &partial {
                for (i, x) in f.iter().enumerate() {
                    if !x.is_zero() {
                        let mut t2 = t.clone();
                        t2.push(i);
                        next.push((t2, w.clone() * x.clone()));
                    }
                }
            }
            partial = next;
        }
        for (t, w) in partial {
            self.add_term(t, w);
        }
    }

    pub fn scale(&self, s: &F) -> Self {
        let mut out = Chain::zero(self.dim, self.degree);
        for (t, c) in &self.terms {
            out.add_term(t.clone(), c.clone() * s.clone());
        }
        out
    }
}

/// A square matrix whose entries are algebra elements in coordinates.
pub type AlgMatrix<F> = Vec<Vec<Vec<F>>>;

pub fn matrix_mul<F: Field>(alg: &FinAlgebra<F>, a: &AlgMatrix<F>, b: &AlgMatrix<F>) -> AlgMatrix<F> {
    let k = a.len();
    (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    (0..k).fold(vec![F::zero(); alg.dim()], |acc, l| {
                        let p = alg.mul(&a[i][l], &b[l][j]);
                        acc.iter().zip(&p).map(|(x, y)| x.clone() + y.clone()).collect()
                    })
                })
                .collect()
        })
        .collect()
}

/// `ch_n(e) = Σ (e_{i₀i₁} − ½δ_{i₀i₁}) ⊗ e_{i₁i₂} ⊗ … ⊗ e_{i_{2n}i₀}`, a chain of degree `2n`.
pub fn chern_character<F: Field>(alg: &FinAlgebra<F>, e: &AlgMatrix<F>, n: usize) -> Result<Chain<F>> {
    let k = e.len();
    if e.iter().any(|r| r.len() != k || r.iter().any(|x| x.len() != alg.dim())) {
        return Err(NcgError::Parameter("idempotent must be a square matrix over the algebra".into()));
    }
    let e2 = matrix_mul(alg, e, e);
    for i in 0..k {
        for j in 0..k {
            if e2[i][j].iter().zip(&e[i][j]).any(|(x, y)| !(x.clone() - y.clone()).is_negligible(1e-9)) {
                return Err(NcgError::Precondition(format!("e² ≠ e at entry ({i}, {j})")));
            }
        }
    }
    let half = F::from_ratio(1, 2);
    let slots = 2 * n + 1;
    let mut chain = Chain::zero(alg.dim(), 2 * n);
    let mut idx = vec![0usize; slots];
    loop {
        let first: Vec<F> = e[idx[0]][idx[1 % slots]]
            .iter()
            .zip(alg.unit())
            .map(|(x, u)| if idx[0] == idx[1 % slots] { x.clone() - half.clone() * u.clone() } else { x.clone() })
            .collect();
        let mut factors = vec![first];
        for s in 1..slots {
            factors.push(e[idx[s]][idx[(s + 1) % slots]].clone());
        }
        chain.add_tensor(F::one(), &factors);
        // Odometer over matrix indices.
        let mut p = slots;
        loop {
            if p == 0 {
                return Ok(chain);
            }
            p -= 1;
            idx[p] += 1;
            if idx[p] < k {
                break;
            }
            idx[p] = 0;
        }
    }
}

/// `⟨φ, c⟩ = Σ c_t φ(e_t)`.
pub fn pair<F: Field>(phi: &Cochain<F>, c: &Chain<F>) -> Result<F> {
    if phi.degree() != c.degree || phi.dim() != c.dim {
        return Err(NcgError::Parameter(format!(
            "cannot pair a degree-{} cochain with a degree-{} chain",
            phi.degree(),
            c.degree
        )));
    }
    Ok(c.terms.iter().fold(F::zero(), |acc, (t, x)| acc + x.clone() * phi.get(t)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic::{functional, trace_cochain};
    use crate::scalar::{rat, Rational};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    type Q = Rational;

    fn m2() -> FinAlgebra<Q> {
        FinAlgebra::matrix(2).unwrap()
    }

    fn diag10(a: &FinAlgebra<Q>) -> AlgMatrix<Q> {
        vec![vec![a.element("e11").unwrap()]]
    }

    #[test]
    fn degree_zero_pairing_with_trace() {
        let a = m2();
        let ch = chern_character(&a, &diag10(&a), 0).unwrap();
        let tr = functional(FinAlgebra::<Q>::matrix_trace(2)).unwrap();
        assert_eq!(pair(&tr, &ch).unwrap(), rat(0, 1));
    }

    #[test]
    fn zero_idempotent_and_shape() {
        let a = m2();
        let zero = vec![vec![vec![rat(0, 1); 4]]];
        let ch = chern_character(&a, &zero, 1).unwrap();
        assert!(ch.is_zero());
        let ch = chern_character(&a, &diag10(&a), 1).unwrap();
        assert_eq!(ch.slots(), 3);
        assert!(ch.terms().all(|(t, _)| t.len() == 3));
    }

    #[test]
    fn non_idempotent_rejected() {
        let a = m2();
        let x = vec![vec![a.element("e12").unwrap()]];
        assert!(matches!(chern_character(&a, &x, 0), Err(NcgError::Precondition(_))));
    }

    #[test]
    fn matrix_idempotent_over_group_algebra() {
        // e = (1 + g)/2 in ℂ[ℤ/2], as a 1×1 matrix, and diag(e, 1) as a 2×2 matrix.
        let a = FinAlgebra::<Q>::cyclic_group(2).unwrap();
        let p = vec![rat(1, 2), rat(1, 2)];
        let one = a.unit().to_vec();
        let zero = vec![rat(0, 1); 2];
        let e = vec![vec![p.clone(), zero.clone()], vec![zero, one]];
        let ch = chern_character(&a, &e, 1).unwrap();
        let phi = trace_cochain(&a, &[rat(1, 1), rat(0, 1)], 2).unwrap();
        // The trace pairing reduces to τ((e − ½)e²) summed over the diagonal.
        assert_eq!(pair(&phi, &ch).unwrap(), rat(1, 2) * rat(1, 2) + rat(1, 2));
    }

    #[test]
    fn pairing_is_bilinear_and_checks_degree() {
        let a = m2();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let phi = Cochain::<Q>::random(4, 2, &mut rng).unwrap();
        let psi = Cochain::<Q>::random(4, 2, &mut rng).unwrap();
        let ch = chern_character(&a, &diag10(&a), 1).unwrap();
        let s = rat(rng.gen_range(-4..4), 3);
        let lhs = pair(&phi.add(&psi.scale(&s)).unwrap(), &ch).unwrap();
        assert_eq!(lhs, pair(&phi, &ch).unwrap() + s.clone() * pair(&psi, &ch).unwrap());
        assert_eq!(pair(&phi, &ch.scale(&s)).unwrap(), s * pair(&phi, &ch).unwrap());
        assert!(pair(&functional(vec![rat(1, 1); 4]).unwrap(), &ch).is_err());
    }
}
