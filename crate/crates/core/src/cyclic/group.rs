use std::fmt::Debug;

use crate::cyclic::{Cochain, FinAlgebra};
use crate::error::{NcgError, Result};
use crate::scalar::Field;

pub trait GroupElement: Clone + PartialEq + Debug {
    fn mul(&self, other: &Self) -> Self;
    fn is_identity(&self) -> bool;
}

/// An element of `ℤ^k` written additively.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lattice(pub Vec<i64>);

impl GroupElement for Lattice {
    fn mul(&self, other: &Self) -> Self {
        Lattice(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn is_identity(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }
}

/// `k mod n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ZMod {
    pub k: u64,
    pub n: u64,
}

impl GroupElement for ZMod {
    fn mul(&self, other: &Self) -> Self {
        ZMod { k: (self.k + other.k) % self.n, n: self.n }
    }

    fn is_identity(&self) -> bool {
        self.k == 0
    }
}

/// `{g ∈ ℤ² : |g|∞ ≤ r}`.
pub fn lattice_box(r: i64) -> Vec<Lattice> {
    (-r..=r).flat_map(|a| (-r..=r).map(move |b| Lattice(vec![a, b]))).collect()
}

/// `φ_c(g₀, …, gₙ) = c(g₁, …, gₙ)` when `g₀⋯gₙ = 1`, else 0, for any group elements.
pub struct GroupCochain<G, C> {
    pub degree: usize,
    pub c: C,
    _g: std::marker::PhantomData<G>,
}

impl<G: GroupElement, F: Field, C: Fn(&[G]) -> F> GroupCochain<G, C> {
    /// Checks normalization of `c` on `span` first.
    pub fn new(span: &[G], degree: usize, c: C) -> Result<Self> {
        if degree > 0 {
            let mut t = vec![0; degree];
            loop {
                let args: Vec<G> = t.iter().map(|&i| span[i].clone()).collect();
                if args.iter().any(G::is_identity) && !c(&args).is_zero() {
                    return Err(NcgError::Precondition(format!("cocycle is not normalized at {args:?}")));
                }
                if !advance(&mut t, span.len()) {
                    break;
                }
            }
        }
        Ok(GroupCochain { degree, c, _g: std::marker::PhantomData })
    }

    pub fn value(&self, g: &[G]) -> F {
        let prod = g[1..].iter().fold(g[0].clone(), |acc, x| acc.mul(x));
        if prod.is_identity() {
            (self.c)(&g[1..])
        } else {
            F::zero()
        }
    }

    /// `(bφ)(g₀, …, g_{n+1})` using group multiplication, so products may leave any span.
    pub fn coboundary_value(&self, g: &[G]) -> F {
        let n = self.degree;
        let mut acc = F::zero();
        for i in 0..=n {
            let mut args: Vec<G> = g[..i].to_vec();
            args.push(g[i].mul(&g[i + 1]));
            args.extend_from_slice(&g[i + 2..]);
            let v = self.value(&args);
            acc = if i % 2 == 0 { acc + v } else { acc - v };
        }
        let mut args = vec![g[n + 1].mul(&g[0])];
        args.extend_from_slice(&g[1..=n]);
        let v = self.value(&args);
        if (n + 1) % 2 == 0 {
            acc + v
        } else {
            acc - v
        }
    }

    /// First tuple in `span^{n+2}` where `bφ ≠ 0`.
    pub fn cocycle_witness(&self, span: &[G]) -> Option<Vec<G>> {
        let mut t = vec![0; self.degree + 2];
        loop {
            let g: Vec<G> = t.iter().map(|&i| span[i].clone()).collect();
            if !self.coboundary_value(&g).is_zero() {
                return Some(g);
            }
            if !advance(&mut t, span.len()) {
                return None;
            }
        }
    }

    /// Dense restriction to `span^{n+1}`.
    pub fn to_cochain(&self, span: &[G]) -> Result<Cochain<F>> {
        Cochain::from_fn(span.len(), self.degree, |t| {
            let g: Vec<G> = t.iter().map(|&i| span[i].clone()).collect();
            self.value(&g)
        })
    }
}

fn advance(t: &mut [usize], base: usize) -> bool {
    for slot in t.iter_mut().rev() {
        *slot += 1;
        if *slot < base {
            return true;
        }
        *slot = 0;
    }
    false
}

/// `group_cocycle_cochain`: the dense cochain `φ_c` on the span. It is a
/// Hochschild cocycle whenever `c` is a group cocycle, and cyclic when in
/// addition `c(g₁, …, gₙ) = c(g₂, …, gₙ, (g₁⋯gₙ)⁻¹)`.
pub fn group_cocycle_cochain<G: GroupElement, F: Field>(
    span: &[G],
    degree: usize,
    c: impl Fn(&[G]) -> F,
) -> Result<Cochain<F>> {
    GroupCochain::new(span, degree, c)?.to_cochain(span)
}

/// The group algebra on `elements`, which must be closed under multiplication
/// and contain the identity.
pub fn group_algebra<G: GroupElement, F: Field>(elements: &[G]) -> Result<FinAlgebra<F>> {
    let d = elements.len();
    let unit_idx = elements
        .iter()
        .position(G::is_identity)
        .ok_or_else(|| NcgError::Precondition("span lacks the identity".into()))?;
    let mut table = vec![0; d * d];
    for i in 0..d {
        for j in 0..d {
            let p = elements[i].mul(&elements[j]);
            table[i * d + j] = elements.iter().position(|x| *x == p).ok_or_else(|| {
                NcgError::Domain(format!("product {:?}·{:?} leaves the span", elements[i], elements[j]))
            })?;
        }
    }
    FinAlgebra::new(
        elements.iter().map(|g| format!("{g:?}")).collect(),
        |i, j| (0..d).map(|k| if table[i * d + j] == k { F::one() } else { F::zero() }).collect(),
        (0..d).map(|k| if k == unit_idx { F::one() } else { F::zero() }).collect(),
    )
}
