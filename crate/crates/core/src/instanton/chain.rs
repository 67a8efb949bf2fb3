use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::algebra_core::{GeneratorSpec, Monomial, TwistedPoly};
use crate::error::{NcgError, Result};
use crate::instanton::projector::ProjectorMatrix;
use crate::scalar::ComplexScalar;

/// A formal sum of elementary tensors `m⁰ ⊗ m¹ ⊗ … ⊗ mⁿ` of normal monomials.
///
/// When `normalized`, every slot after the first is taken modulo scalars: tensors
/// with a constant monomial there are dropped. The first slot is kept whole.
#[derive(Clone, PartialEq)]
pub struct TensorChain<C> {
    spec: Arc<GeneratorSpec>,
    slots: usize,
    normalized: bool,
    terms: BTreeMap<Vec<Monomial>, C>,
}

impl<C: ComplexScalar> TensorChain<C> {
    pub fn zero(spec: &Arc<GeneratorSpec>, slots: usize, normalized: bool) -> Self {
        TensorChain { spec: spec.clone(), slots, normalized, terms: BTreeMap::new() }
    }

    pub fn slots(&self) -> usize {
        self.slots
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
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

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Monomial>, &C)> {
        self.terms.iter()
    }

    fn is_scalar(m: &[u32]) -> bool {
        m.iter().all(|&e| e == 0)
    }

    pub fn add_term(&mut self, t: Vec<Monomial>, c: C) {
        debug_assert_eq!(t.len(), self.slots);
        if c.is_zero() || (self.normalized && t[1..].iter().any(|m| Self::is_scalar(m))) {
            return;
        }
        match self.terms.remove(&t) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(t, s);
                }
            }
            None => {
                self.terms.insert(t, c);
            }
        }
    }

    /// Adds `c · p⁰ ⊗ … ⊗ pⁿ`, expanding each factor in normal monomials.
    pub fn add_tensor(&mut self, c: C, factors: &[&TwistedPoly<C>]) {
        if factors.len() != self.slots {
            panic!("tensor has {} factors, chain has {} slots", factors.len(), self.slots);
        }
        let mut partial: Vec<(Vec<Monomial>, C)> = vec![(Vec::with_capacity(self.slots), c)];
        for (k, f) in factors.iter().enumerate() {
            let mut next = Vec::new();
            for (t, w) in &partial {
                for (m, x) in f.terms() {
                    if k > 0 && self.normalized && Self::is_scalar(m) {
                        continue;
                    }
                    let mut t2 = t.clone();
                    t2.push(m.clone());
                    next.push((t2, w.clone() * x.clone()));
                }
            }
            partial = next;
        }
        for (t, w) in partial {
            self.add_term(t, w);
        }
    }

    /// Hochschild boundary `b(a⁰ ⊗ … ⊗ aⁿ) = Σ_j (−1)^j … ⊗ a^j a^{j+1} ⊗ … + (−1)ⁿ aⁿa⁰ ⊗ a¹ ⊗ … ⊗ aⁿ⁻¹`,
    /// with products reduced by the algebra's relations.
    pub fn hochschild_boundary(&self) -> Result<Self> {
        if self.slots < 2 {
            return Err(NcgError::Parameter("b needs at least two slots".into()));
        }
        let n = self.slots - 1;
        let mut out = TensorChain::zero(&self.spec, n, self.normalized);
        let mut products: HashMap<(Monomial, Monomial), TwistedPoly<C>> = HashMap::new();
        let mut product = |x: &Monomial, y: &Monomial| -> Result<TwistedPoly<C>> {
            if let Some(p) = products.get(&(x.clone(), y.clone())) {
                return Ok(p.clone());
            }
            let one = C::one();
            let p = TwistedPoly::term(&self.spec, x.clone(), one.clone())
                .mul(&TwistedPoly::term(&self.spec, y.clone(), one))
                .reduce()?;
            products.insert((x.clone(), y.clone()), p.clone());
            Ok(p)
        };
        for (t, c) in &self.terms {
            let polys: Vec<TwistedPoly<C>> = t.iter().map(|m| TwistedPoly::term(&self.spec, m.clone(), C::one())).collect();
            for j in 0..n {
                let joined = product(&t[j], &t[j + 1])?;
                let mut factors: Vec<&TwistedPoly<C>> = polys[..j].iter().collect();
                factors.push(&joined);
                factors.extend(polys[j + 2..].iter());
                let sign = if j % 2 == 0 { c.clone() } else { -c.clone() };
                out.add_tensor(sign, &factors);
            }
            let wrapped = product(&t[n], &t[0])?;
            let mut factors: Vec<&TwistedPoly<C>> = vec![&wrapped];
            factors.extend(polys[1..n].iter());
            let sign = if n % 2 == 0 { c.clone() } else { -c.clone() };
            out.add_tensor(sign, &factors);
        }
        Ok(out)
    }

    /// A readable rendering of the first surviving term.
    pub fn witness(&self) -> Option<String> {
        self.terms.iter().next().map(|(t, c)| {
            let slots: Vec<String> = t.iter().map(|m| self.spec.monomial_string(m)).collect();
            format!("({c:?}) {}", slots.join(" ⊗ "))
        })
    }
}

impl<C: ComplexScalar> std::fmt::Debug for TensorChain<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "TensorChain({} slots, {} terms", self.slots, self.terms.len())?;
        if let Some(w) = self.witness() {
            write!(f, ", first {w}")?;
        }
        write!(f, ")")
    }
}

/// `⟨ch_n(e)⟩ = ¼ Σ (e − ½)_{i₀i₁} ⊗ e_{i₁i₂} ⊗ … ⊗ e_{i_{2n}i₀}`, the normalized trace
/// over the matrix indices of the chain `(e − ½) ⊗ e^{⊗2n}`.
pub fn chern_chain<C: ComplexScalar>(e: &ProjectorMatrix<C>, n: usize, normalized: bool) -> TensorChain<C> {
    let spec = e.spec();
    let half = TwistedPoly::constant(spec, C::from_ratio(1, 2));
    let shifted: Vec<Vec<TwistedPoly<C>>> = (0..4)
        .map(|i| (0..4).map(|j| if i == j { e.entry(i, j).sub(&half) } else { e.entry(i, j).clone() }).collect())
        .collect();
    let slots = 2 * n + 1;
    let mut chain = TensorChain::zero(spec, slots, normalized);
    let quarter = C::from_ratio(1, 4);
    let mut path = Vec::with_capacity(slots + 1);
    for i0 in 0..4 {
        path.clear();
        path.push(i0);
        walk(e, &shifted, &mut path, slots, &quarter, &mut chain);
    }
    chain
}

fn walk<C: ComplexScalar>(
    e: &ProjectorMatrix<C>,
    shifted: &[Vec<TwistedPoly<C>>],
    path: &mut Vec<usize>,
    slots: usize,
    coeff: &C,
    chain: &mut TensorChain<C>,
) {
    let entry = |k: usize, i: usize, j: usize| if k == 0 { &shifted[i][j] } else { e.entry(i, j) };
    let last = *path.last().expect("nonempty");
    if path.len() == slots {
        let first = path[0];
        if entry(slots - 1, last, first).is_zero() {
            return;
        }
        let mut factors: Vec<&TwistedPoly<C>> = (0..slots - 1).map(|k| entry(k, path[k], path[k + 1])).collect();
        factors.push(entry(slots - 1, last, first));
        chain.add_tensor(coeff.clone(), &factors);
        return;
    }
    for next in 0..4 {
        if entry(path.len() - 1, last, next).is_zero() {
            continue;
        }
        path.push(next);
        walk(e, shifted, path, slots, coeff, chain);
        path.pop();
    }
}

/// `⟨Ch₁(e)⟩` in the normalized bicomplex. Zero for the instanton projector.
pub fn ch1_projected<C: ComplexScalar>(e: &ProjectorMatrix<C>) -> TensorChain<C> {
    chern_chain(e, 1, true)
}

/// `b⟨Ch₂(e)⟩` in the normalized complex. Zero when `⟨Ch₁(e)⟩` vanishes and `e` is a projector.
pub fn ch2_hochschild_check<C: ComplexScalar>(e: &ProjectorMatrix<C>) -> Result<TensorChain<C>> {
    chern_chain(e, 2, true).hochschild_boundary()
}
