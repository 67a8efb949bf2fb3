//! Finite-dimensional Hopf algebras with a modular pair, their cyclic module
//! `{H^{⊗n}}`, and the characteristic map into algebra cochains.

use crate::cyclic::cochain::decode;
use crate::cyclic::lambda::CyclicModule;
use crate::cyclic::{Cochain, FinAlgebra};
use crate::error::{NcgError, Result};
use crate::linalg::Mat;
use crate::scalar::Field;

/// Sparse image of a basis vector in `H^{⊗m}`.
type Sparse<F> = Vec<(Vec<usize>, F)>;

#[derive(Clone, Debug)]
pub struct HopfData<F> {
    algebra: FinAlgebra<F>,
    /// `Δe_i = Σ c e_j ⊗ e_k`.
    coproduct: Vec<Vec<(usize, usize, F)>>,
    counit: Vec<F>,
    /// Column `i` is `S(e_i)`.
    antipode: Mat<F>,
    /// Group-like element σ.
    sigma: Vec<F>,
    /// Character δ, as its values on the basis.
    delta: Vec<F>,
}

fn close<F: Field>(a: &[F], b: &[F]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x.clone() - y.clone()).is_negligible(1e-9))
}

impl<F: Field> HopfData<F> {
    /// Checks the Hopf axioms, that σ is group-like, δ a character, and `δ(σ) = 1`.
    pub fn new(
        algebra: FinAlgebra<F>,
        coproduct: Vec<Vec<(usize, usize, F)>>,
        counit: Vec<F>,
        antipode: Mat<F>,
        sigma: Vec<F>,
        delta: Vec<F>,
    ) -> Result<Self> {
        let d = algebra.dim();
        if coproduct.len() != d || counit.len() != d || antipode.len() != d || sigma.len() != d || delta.len() != d {
            return Err(NcgError::Parameter("Hopf structure tensors have inconsistent sizes".into()));
        }
        let h = HopfData { algebra, coproduct, counit, antipode, sigma, delta };
        h.verify()?;
        Ok(h)
    }

    fn verify(&self) -> Result<()> {
        let d = self.dim();
        let fail = |what: &str| Err(NcgError::Precondition(what.to_string()));
        for i in 0..d {
            let e = self.algebra.basis(i);
            // Coassociativity on e_i.
            let l = self.apply_to_factor(&self.coproduct_vec(&e), 2, 0, |k| self.delta_sparse(k));
            let r = self.apply_to_factor(&self.coproduct_vec(&e), 2, 1, |k| self.delta_sparse(k));
            if !close(&l, &r) {
                return fail(&format!("coproduct not coassociative on {}", self.algebra.label(i)));
            }
            // Counit.
            let l = self.apply_to_factor(&self.coproduct_vec(&e), 2, 0, |k| vec![(vec![], self.counit[k].clone())]);
            let r = self.apply_to_factor(&self.coproduct_vec(&e), 2, 1, |k| vec![(vec![], self.counit[k].clone())]);
            if !close(&l, &e) || !close(&r, &e) {
                return fail(&format!("counit axiom fails on {}", self.algebra.label(i)));
            }
            // m(S ⊗ id)Δ = ηε.
            let mut conv = vec![F::zero(); d];
            for (j, k, c) in &self.coproduct[i] {
                let p = self.algebra.mul(&self.antipode_vec(*j), &self.algebra.basis(*k));
                conv = conv.iter().zip(&p).map(|(a, b)| a.clone() + c.clone() * b.clone()).collect();
            }
            let eta: Vec<F> = self.algebra.unit().iter().map(|u| u.clone() * self.counit[i].clone()).collect();
            if !close(&conv, &eta) {
                return fail(&format!("antipode convolution fails on {}", self.algebra.label(i)));
            }
            for j in 0..d {
                let p = self.algebra.mul(&e, &self.algebra.basis(j));
                // Δ and ε are algebra maps; δ is a character.
                let lhs = self.coproduct_vec(&p);
                let rhs = self.tensor_mul(&self.coproduct_vec(&e), &self.coproduct_vec(&self.algebra.basis(j)), 2);
                if !close(&lhs, &rhs) {
                    return fail("coproduct is not multiplicative");
                }
                if !close(&[self.eval(&self.counit, &p)], &[self.counit[i].clone() * self.counit[j].clone()]) {
                    return fail("counit is not multiplicative");
                }
                if !close(&[self.eval(&self.delta, &p)], &[self.delta[i].clone() * self.delta[j].clone()]) {
                    return fail("δ is not a character");
                }
            }
        }
        if !close(&[self.eval(&self.delta, self.algebra.unit())], &[F::one()]) {
            return fail("δ(1) ≠ 1");
        }
        let ss: Vec<F> = {
            let mut v = vec![F::zero(); d * d];
            for (a, x) in self.sigma.iter().enumerate() {
                for (b, y) in self.sigma.iter().enumerate() {
                    v[a * d + b] = x.clone() * y.clone();
                }
            }
            v
        };
        if !close(&self.coproduct_vec(&self.sigma), &ss) || !close(&[self.eval(&self.counit, &self.sigma)], &[F::one()]) {
            return fail("σ is not group-like");
        }
        if !close(&[self.eval(&self.delta, &self.sigma)], &[F::one()]) {
            return fail("δ(σ) ≠ 1");
        }
        Ok(())
    }

    /// `ℂ[ℤ/n]` with σ = g^s and δ given by its values on `1, g, …`.
    pub fn cyclic_group(n: usize, sigma_power: usize, delta: Vec<F>) -> Result<Self> {
        let algebra = FinAlgebra::cyclic_group(n)?;
        let basis = |k: usize| -> Vec<F> { (0..n).map(|i| if i == k % n { F::one() } else { F::zero() }).collect() };
        HopfData::new(
            algebra,
            (0..n).map(|i| vec![(i, i, F::one())]).collect(),
            vec![F::one(); n],
            (0..n).map(|r| (0..n).map(|c| if (r + c) % n == 0 { F::one() } else { F::zero() }).collect()).collect(),
            basis(sigma_power),
            delta,
        )
    }

    /// Functions on `ℤ/n` with `Δδ_g = Σ_{h+k=g} δ_h ⊗ δ_k`, σ = 1 and δ = evaluation at `point`.
    pub fn functions_on_cyclic(n: usize, point: usize) -> Result<Self> {
        let algebra = FinAlgebra::functions_on_cyclic(n)?;
        HopfData::new(
            algebra,
            (0..n).map(|g| (0..n).map(|h| (h, (g + n - h) % n, F::one())).collect()).collect(),
            (0..n).map(|g| if g == 0 { F::one() } else { F::zero() }).collect(),
            (0..n).map(|r| (0..n).map(|c| if (r + c) % n == 0 { F::one() } else { F::zero() }).collect()).collect(),
            vec![F::one(); n],
            (0..n).map(|g| if g == point % n { F::one() } else { F::zero() }).collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn algebra(&self) -> &FinAlgebra<F> {
        &self.algebra
    }

    pub fn sigma(&self) -> &[F] {
        &self.sigma
    }

    fn eval(&self, functional: &[F], x: &[F]) -> F {
        functional.iter().zip(x).fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
    }

    fn delta_sparse(&self, i: usize) -> Sparse<F> {
        self.coproduct[i].iter().map(|(j, k, c)| (vec![*j, *k], c.clone())).collect()
    }

    fn antipode_vec(&self, i: usize) -> Vec<F> {
        (0..self.dim()).map(|r| self.antipode[r][i].clone()).collect()
    }

    pub fn antipode(&self, x: &[F]) -> Vec<F> {
        self.linear(x, |i| self.antipode_vec(i))
    }

    fn linear(&self, x: &[F], f: impl Fn(usize) -> Vec<F>) -> Vec<F> {
        let mut out = vec![F::zero(); self.dim()];
        for (i, c) in x.iter().enumerate() {
            if !c.is_zero() {
                for (o, y) in out.iter_mut().zip(f(i)) {
                    *o = o.clone() + c.clone() * y;
                }
            }
        }
        out
    }

    pub fn coproduct_vec(&self, x: &[F]) -> Vec<F> {
        self.apply_to_factor(x, 1, 0, |k| self.delta_sparse(k))
    }

    /// Applies a map `H → H^{⊗m}` to factor `p` of an element of `H^{⊗n}`.
    fn apply_to_factor(&self, x: &[F], n: usize, p: usize, map: impl Fn(usize) -> Sparse<F>) -> Vec<F> {
        let d = self.dim();
        let images: Vec<Sparse<F>> = (0..d).map(&map).collect();
        let m = images.iter().find_map(|v| v.first().map(|(t, _)| t.len())).unwrap_or(0);
        let out_len = d.pow((n - 1 + m) as u32);
        let mut out = vec![F::zero(); out_len];
        let mut t = vec![0; n];
        for (flat, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            decode(flat, d, &mut t);
            for (img, w) in &images[t[p]] {
                let idx = t[..p].iter().chain(img).chain(&t[p + 1..]).fold(0, |acc, &i| acc * d + i);
                out[idx] = out[idx].clone() + c.clone() * w.clone();
            }
        }
        out
    }

    /// Inserts the vector `v` as factor `p` of an element of `H^{⊗n}`.
    fn insert(&self, x: &[F], n: usize, p: usize, v: &[F]) -> Vec<F> {
        let img: Sparse<F> = v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (vec![i], c.clone())).collect();
        if n == 0 {
            return v.iter().map(|c| c.clone() * x[0].clone()).collect();
        }
        // Insert before factor p (or after the last one) by composing with the factor it displaces.
        if p < n {
            self.apply_to_factor(x, n, p, |k| img.iter().map(|(i, c)| (vec![i[0], k], c.clone())).collect())
        } else {
            self.apply_to_factor(x, n, n - 1, |k| img.iter().map(|(i, c)| (vec![k, i[0]], c.clone())).collect())
        }
    }

    /// Factorwise product in `H^{⊗n}`.
    fn tensor_mul(&self, a: &[F], b: &[F], n: usize) -> Vec<F> {
        let d = self.dim();
        let mut out = vec![F::zero(); a.len()];
        let (mut ta, mut tb) = (vec![0; n], vec![0; n]);
        for (fa, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            decode(fa, d, &mut ta);
            for (fb, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                decode(fb, d, &mut tb);
                let mut partial: Vec<(usize, F)> = vec![(0, x.clone() * y.clone())];
                for k in 0..n {
                    let prod = self.algebra.basis_mul(ta[k], tb[k]);
                    partial = partial
                        .iter()
                        .flat_map(|(idx, w)| prod.iter().map(move |(e, c)| (idx * d + e, w.clone() * c.clone())))
                        .collect();
                }
                for (idx, w) in partial {
                    out[idx] = out[idx].clone() + w;
                }
            }
        }
        out
    }

    /// `S̃(y) = Σ δ(y₍₁₎) S(y₍₂₎)`.
    pub fn twisted_antipode(&self, y: &[F]) -> Vec<F> {
        self.linear(y, |i| {
            let mut v = vec![F::zero(); self.dim()];
            for (j, k, c) in &self.coproduct[i] {
                let w = c.clone() * self.delta[*j].clone();
                for (o, s) in v.iter_mut().zip(self.antipode_vec(*k)) {
                    *o = o.clone() + w.clone() * s;
                }
            }
            v
        })
    }

    /// `h ↦ σ⁻¹ S̃(h)`.
    pub fn twisted_involution(&self, h: &[F]) -> Vec<F> {
        let sigma_inv = self.antipode(&self.sigma);
        self.algebra.mul(&sigma_inv, &self.twisted_antipode(h))
    }

    /// First basis vector on which `(σ⁻¹S̃)² ≠ id`.
    pub fn involution_witness(&self) -> Option<usize> {
        (0..self.dim()).find(|&i| {
            let e = self.algebra.basis(i);
            !close(&self.twisted_involution(&self.twisted_involution(&e)), &e)
        })
    }

    /// `Δ^{n−1}: H → H^{⊗n}` with `Δ⁰ = id`.
    pub fn iterated_coproduct(&self, x: &[F], n: usize) -> Vec<F> {
        let mut cur = x.to_vec();
        for k in 1..n {
            cur = self.apply_to_factor(&cur, k, 0, |i| self.delta_sparse(i));
        }
        cur
    }
}

/// The cyclic module `{H^{⊗n}}_n` of a Hopf algebra with a modular pair in involution.
pub struct HopfCyclic<'a, F> {
    pub hopf: &'a HopfData<F>,
}

impl<'a, F: Field> HopfCyclic<'a, F> {
    pub fn new(hopf: &'a HopfData<F>) -> Result<Self> {
        if let Some(i) = hopf.involution_witness() {
            return Err(NcgError::Precondition(format!(
                "modular pair not in involution: (σ⁻¹S̃)² moves {}",
                hopf.algebra.label(i)
            )));
        }
        Ok(HopfCyclic { hopf })
    }
}

impl<F: Field> CyclicModule for HopfCyclic<'_, F> {
    type Scalar = F;

    fn object_dim(&self, n: usize) -> usize {
        self.hopf.dim().pow(n as u32)
    }

    fn face(&self, n: usize, i: usize, x: &[F]) -> Vec<F> {
        let h = self.hopf;
        if i == 0 {
            h.insert(x, n - 1, 0, h.algebra.unit())
        } else if i == n {
            h.insert(x, n - 1, n - 1, &h.sigma)
        } else {
            h.apply_to_factor(x, n - 1, i - 1, |k| h.delta_sparse(k))
        }
    }

    fn degeneracy(&self, n: usize, j: usize, x: &[F]) -> Vec<F> {
        let h = self.hopf;
        h.apply_to_factor(x, n + 1, j, |k| vec![(vec![], h.counit[k].clone())])
    }

    fn cyclic(&self, n: usize, x: &[F]) -> Vec<F> {
        let h = self.hopf;
        if n == 0 {
            return x.to_vec();
        }
        let d = h.dim();
        let mut out = vec![F::zero(); d.pow(n as u32)];
        let mut t = vec![0; n];
        for (flat, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            decode(flat, d, &mut t);
            let head = h.iterated_coproduct(&h.twisted_antipode(&h.algebra.basis(t[0])), n);
            // h² ⊗ … ⊗ hⁿ ⊗ σ as a pure tensor.
            let mut rest = vec![F::one()];
            for k in 1..=n {
                let v = if k < n { h.algebra.basis(t[k]) } else { h.sigma.clone() };
                rest = rest.iter().flat_map(|a| v.iter().map(move |b| a.clone() * b.clone())).collect();
            }
            let p = h.tensor_mul(&head, &rest, n);
            for (o, y) in out.iter_mut().zip(p) {
                *o = o.clone() + c.clone() * y;
            }
        }
        out
    }
}

/// Dense matrices of the operators leaving `H^{⊗n}`.
#[derive(Clone, Debug)]
pub struct HopfCyclicOps<F> {
    pub n: usize,
    /// `δ_i : H^{⊗n} → H^{⊗n+1}`, `0 ≤ i ≤ n+1`.
    pub faces: Vec<Mat<F>>,
    /// `σ_i : H^{⊗n} → H^{⊗n−1}`, `0 ≤ i ≤ n−1`.
    pub degeneracies: Vec<Mat<F>>,
    /// `τ_n`.
    pub tau: Mat<F>,
}

fn matrix_of<F: Field>(src_dim: usize, f: impl Fn(&[F]) -> Vec<F>) -> Mat<F> {
    let cols: Vec<Vec<F>> = (0..src_dim)
        .map(|i| f(&(0..src_dim).map(|k| if k == i { F::one() } else { F::zero() }).collect::<Vec<_>>()))
        .collect();
    let rows = cols.first().map_or(0, Vec::len);
    (0..rows).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect()
}

/// `hopf_cyclic_ops`: verifies the involution, then builds the operators on `H^{⊗n}`.
pub fn hopf_cyclic_ops<F: Field>(h: &HopfData<F>, n: usize) -> Result<HopfCyclicOps<F>> {
    let m = HopfCyclic::new(h)?;
    let dim = m.object_dim(n);
    Ok(HopfCyclicOps {
        n,
        faces: (0..=n + 1).map(|i| matrix_of(dim, |x| m.face(n + 1, i, x))).collect(),
        degeneracies: if n == 0 { vec![] } else { (0..n).map(|j| matrix_of(dim, |x| m.degeneracy(n - 1, j, x))).collect() },
        tau: matrix_of(dim, |x| m.cyclic(n, x)),
    })
}

/// Hopf-cyclic coboundary `b = Σ_{i=0}^{n+1} (−1)^i δ_i` on `H^{⊗n}`.
pub fn hopf_b<F: Field>(m: &HopfCyclic<'_, F>, n: usize, x: &[F]) -> Vec<F> {
    let mut out = vec![F::zero(); m.object_dim(n + 1)];
    for i in 0..=n + 1 {
        let f = m.face(n + 1, i, x);
        for (o, y) in out.iter_mut().zip(f) {
            *o = if i % 2 == 0 { o.clone() + y } else { o.clone() - y };
        }
    }
    out
}

/// An action of `H` on an algebra `A`: column `j` of `matrices[i]` is `e_i(a_j)`.
#[derive(Clone, Debug)]
pub struct HopfAction<F> {
    pub matrices: Vec<Mat<F>>,
}

impl<F: Field> HopfAction<F> {
    pub fn act(&self, h: &[F], a: &[F]) -> Vec<F> {
        let da = a.len();
        let mut out = vec![F::zero(); da];
        for (i, hc) in h.iter().enumerate() {
            if hc.is_zero() {
                continue;
            }
            for (j, ac) in a.iter().enumerate() {
                if ac.is_zero() {
                    continue;
                }
                for (r, o) in out.iter_mut().enumerate() {
                    *o = o.clone() + hc.clone() * ac.clone() * self.matrices[i][r][j].clone();
                }
            }
        }
        out
    }

    /// ℂ[ℤ/n] acting on functions on ℤ/n by `(g·x)(u) = x(u + g)`.
    pub fn translation(n: usize) -> Self {
        // g^k δ_v = δ_{v−k}.
        HopfAction {
            matrices: (0..n)
                .map(|k| (0..n).map(|r| (0..n).map(|v| if (v + n - k) % n == r { F::one() } else { F::zero() }).collect()).collect())
                .collect(),
        }
    }
}

/// Verifies that `act` makes `A` an `H`-module algebra and that `tau` is a
/// δ-invariant σ-trace; returns the first failing basis triple.
pub fn check_invariant_trace<F: Field>(
    h: &HopfData<F>,
    a: &FinAlgebra<F>,
    act: &HopfAction<F>,
    tau: &[F],
) -> Result<()> {
    let dh = h.dim();
    let da = a.dim();
    let t = |x: &[F]| x.iter().zip(tau).fold(F::zero(), |acc, (u, v)| acc + u.clone() * v.clone());
    let err = |law: &str, b: Vec<usize>| Err(NcgError::Precondition(format!("{law} fails at basis {b:?}")));
    for i in 0..dh {
        let hi = h.algebra.basis(i);
        if !close(&act.act(&hi, a.unit()), &a.unit().iter().map(|u| u.clone() * h.counit[i].clone()).collect::<Vec<_>>()) {
            return err("h(1) = ε(h)1", vec![i]);
        }
        for x in 0..da {
            for y in 0..da {
                let (ax, ay) = (a.basis(x), a.basis(y));
                let lhs = act.act(&hi, &a.mul(&ax, &ay));
                let mut rhs = vec![F::zero(); da];
                for (j, k, c) in &h.coproduct[i] {
                    let p = a.mul(&act.act(&h.algebra.basis(*j), &ax), &act.act(&h.algebra.basis(*k), &ay));
                    rhs = rhs.iter().zip(&p).map(|(u, v)| u.clone() + c.clone() * v.clone()).collect();
                }
                if !close(&lhs, &rhs) {
                    return err("h(xy) = Σ h₍₁₎(x)h₍₂₎(y)", vec![i, x, y]);
                }
                // δ-invariance: τ(h(a)b) = τ(a S̃(h)(b)).
                let l = t(&a.mul(&act.act(&hi, &ax), &ay));
                let r = t(&a.mul(&ax, &act.act(&h.twisted_antipode(&hi), &ay)));
                if !close(&[l], &[r]) {
                    return err("δ-invariance τ(h(a)b) = τ(aS̃(h)(b))", vec![i, x, y]);
                }
            }
        }
    }
    for x in 0..da {
        for y in 0..da {
            let (ax, ay) = (a.basis(x), a.basis(y));
            // σ-trace: τ(ab) = τ(bσ(a)).
            if !close(&[t(&a.mul(&ax, &ay))], &[t(&a.mul(&ay, &act.act(&h.sigma, &ax)))]) {
                return err("σ-trace τ(ab) = τ(bσ(a))", vec![x, y]);
            }
        }
    }
    Ok(())
}

/// `γ(h¹ ⊗ … ⊗ hⁿ)(x⁰, …, xⁿ) = τ(x⁰ h¹(x¹) ⋯ hⁿ(xⁿ))` for `h` in `H^{⊗n}`.
pub fn characteristic_map<F: Field>(
    h: &HopfData<F>,
    a: &FinAlgebra<F>,
    act: &HopfAction<F>,
    tau: &[F],
    n: usize,
    tensor: &[F],
) -> Result<Cochain<F>> {
    check_invariant_trace(h, a, act, tau)?;
    if tensor.len() != h.dim().pow(n as u32) {
        return Err(NcgError::Parameter(format!("tensor does not lie in H^⊗{n}")));
    }
    let dh = h.dim();
    let terms: Vec<(Vec<usize>, F)> = tensor
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(flat, c)| {
            let mut t = vec![0; n];
            decode(flat, dh, &mut t);
            (t, c.clone())
        })
        .collect();
    Cochain::from_fn(a.dim(), n, |x| {
        let mut acc = F::zero();
        for (t, c) in &terms {
            let mut p = a.basis(x[0]);
            for (k, &hk) in t.iter().enumerate() {
                p = a.mul(&p, &act.act(&h.algebra.basis(hk), &a.basis(x[k + 1])));
            }
            acc = acc + c.clone() * p.iter().zip(tau).fold(F::zero(), |s, (u, v)| s + u.clone() * v.clone());
        }
        acc
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic::lambda::{check_lambda_relations, AlgebraCochains};
    use crate::cyclic::{cochain, hochschild_b, is_cyclic};
    use crate::linalg::{matmul, nullspace, identity};
    use crate::scalar::{rat, Rational};
    use crate::{Cyclotomic, Scalar};
    use num_traits::Zero;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    type Q = Rational;

    fn z2() -> HopfData<Q> {
        HopfData::cyclic_group(2, 0, vec![rat(1, 1); 2]).unwrap()
    }

    #[test]
    fn twisted_antipode_on_group_likes() {
        let h = z2();
        let g = h.algebra().basis(1);
        assert_eq!(h.twisted_antipode(&g), g);
        let one = h.algebra().unit().to_vec();
        assert_eq!(h.twisted_antipode(&one), one);
        assert_eq!(h.involution_witness(), None);
    }

    #[test]
    fn tau_one_on_z2() {
        let h = z2();
        let ops = hopf_cyclic_ops(&h, 1).unwrap();
        assert_eq!(ops.tau, identity(2));
        assert_eq!(matmul(&ops.tau, &ops.tau), identity(2));
    }

    #[test]
    fn first_face_prepends_unit() {
        let h = HopfData::<Q>::cyclic_group(3, 0, vec![rat(1, 1); 3]).unwrap();
        let m = HopfCyclic::new(&h).unwrap();
        let g = h.algebra().basis(2);
        // δ₀(h) = 1 ⊗ h lands on basis tuple (0, 2).
        let out = m.face(2, 0, &g);
        assert_eq!(out.iter().position(|c| !c.is_zero()), Some(2));
        assert_eq!(out.iter().filter(|c| !c.is_zero()).count(), 1);
    }

    fn tau_power_is_identity<F: Field>(h: &HopfData<F>, n: usize) -> bool {
        let t = hopf_cyclic_ops(h, n).unwrap().tau;
        let mut p = identity(t.len());
        for _ in 0..=n {
            p = matmul(&t, &p);
        }
        p == identity(t.len())
    }

    #[test]
    fn tau_order_on_group_algebras() {
        for n in 0..=3 {
            assert!(tau_power_is_identity(&z2(), n));
            let z3 = HopfData::<Q>::cyclic_group(3, 0, vec![rat(1, 1); 3]).unwrap();
            assert!(tau_power_is_identity(&z3, n), "n = {n}");
        }
        // A nontrivial modular pair: σ = g, δ the sign character, on ℤ/4 over ℚ... δ(σ) = −1 is rejected.
        assert!(HopfData::<Q>::cyclic_group(4, 1, vec![rat(1, 1), rat(-1, 1), rat(1, 1), rat(-1, 1)]).is_err());
        let twisted = HopfData::<Q>::cyclic_group(4, 2, vec![rat(1, 1), rat(-1, 1), rat(1, 1), rat(-1, 1)]).unwrap();
        for n in 0..=3 {
            assert!(tau_power_is_identity(&twisted, n));
        }
    }

    #[test]
    fn cyclotomic_character_on_z3() {
        let w = Cyclotomic::zeta_pow(3, 1);
        let delta = vec![Cyclotomic::from_i64(1), w.clone(), w.clone() * w];
        let h = HopfData::cyclic_group(3, 0, delta).unwrap();
        assert_eq!(h.involution_witness(), None);
        for n in 0..=2 {
            assert!(tau_power_is_identity(&h, n));
        }
    }

    #[test]
    fn dual_group_algebra_with_twist() {
        let h = HopfData::<Q>::functions_on_cyclic(3, 1).unwrap();
        assert_eq!(h.involution_witness(), None);
        for n in 0..=3 {
            assert!(tau_power_is_identity(&h, n));
        }
    }

    #[test]
    fn hopf_module_satisfies_lambda_relations() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let h = HopfData::<Q>::functions_on_cyclic(3, 2).unwrap();
        let m = HopfCyclic::new(&h).unwrap();
        let r = check_lambda_relations(&m, 3, 2, &mut rng);
        assert!(r.all_pass(), "{:?}", r.failures().collect::<Vec<_>>());
        let g = HopfData::<Q>::cyclic_group(4, 2, vec![rat(1, 1), rat(-1, 1), rat(1, 1), rat(-1, 1)]).unwrap();
        let r = check_lambda_relations(&HopfCyclic::new(&g).unwrap(), 3, 2, &mut rng);
        assert!(r.all_pass(), "{:?}", r.failures().collect::<Vec<_>>());
    }

    fn translation_setup() -> (HopfData<Q>, FinAlgebra<Q>, HopfAction<Q>, Vec<Q>) {
        (z2(), FinAlgebra::functions_on_cyclic(2).unwrap(), HopfAction::translation(2), vec![rat(1, 1); 2])
    }

    #[test]
    fn characteristic_map_examples() {
        let (h, a, act, tau) = translation_setup();
        let g = h.algebra().basis(1);
        let gamma = characteristic_map(&h, &a, &act, &tau, 1, &g).unwrap();
        // γ(g)(x⁰, x¹) = Σ_u x⁰(u) x¹(u + g) on point masses.
        for u in 0..2 {
            for v in 0..2 {
                assert_eq!(gamma.get(&[u, v]), if (u + 1) % 2 == v { rat(1, 1) } else { rat(0, 1) });
            }
        }
        let one = h.algebra().unit().to_vec();
        let gamma1 = characteristic_map(&h, &a, &act, &tau, 1, &one).unwrap();
        assert_eq!(gamma1, cochain::trace_cochain(&a, &tau, 1).unwrap());
    }

    #[test]
    fn failing_trace_is_reported() {
        let (h, a, act, _) = translation_setup();
        let r = characteristic_map(&h, &a, &act, &[rat(1, 1), rat(0, 1)], 1, &h.algebra().basis(1));
        assert!(matches!(r, Err(NcgError::Precondition(msg)) if msg.contains("δ-invariance")));
    }

    #[test]
    fn characteristic_map_intertwines_the_cyclic_structure() {
        let (h, a, act, tau) = translation_setup();
        let hm = HopfCyclic::new(&h).unwrap();
        let am = AlgebraCochains::new(&a);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 1..=3 {
            let x: Vec<Q> = (0..hm.object_dim(n)).map(|_| rat(rng.gen_range(-4..=4), 1)).collect();
            let gx = characteristic_map(&h, &a, &act, &tau, n, &x).unwrap();
            let gt = characteristic_map(&h, &a, &act, &tau, n, &hm.cyclic(n, &x)).unwrap();
            assert_eq!(gt.values(), &am.cyclic(n, gx.values())[..]);
            for i in 0..=n + 1 {
                let gf = characteristic_map(&h, &a, &act, &tau, n + 1, &hm.face(n + 1, i, &x)).unwrap();
                assert_eq!(gf.values(), &am.face(n + 1, i, gx.values())[..], "face {i}");
            }
            for j in 0..n {
                let gd = characteristic_map(&h, &a, &act, &tau, n - 1, &hm.degeneracy(n - 1, j, &x)).unwrap();
                assert_eq!(gd.values(), &am.degeneracy(n - 1, j, gx.values())[..]);
            }
        }
    }

    #[test]
    fn hopf_cocycles_map_to_cyclic_cocycles() {
        let (h, a, act, tau) = translation_setup();
        let m = HopfCyclic::new(&h).unwrap();
        for n in 1..=2 {
            // Kernel of b stacked with 1 − λ, λ = (−1)^n τ_n.
            let dim = m.object_dim(n);
            let sign = if n % 2 == 0 { rat(1, 1) } else { rat(-1, 1) };
            let b = matrix_of(dim, |x| hopf_b(&m, n, x));
            let lam = matrix_of(dim, |x: &[Q]| m.cyclic(n, x).into_iter().map(|c| c * sign.clone()).collect());
            let mut stacked = b.clone();
            for (r, row) in lam.iter().enumerate() {
                stacked.push(row.iter().enumerate().map(|(c, v)| if r == c { rat(1, 1) - v.clone() } else { -v.clone() }).collect());
            }
            let kernel = nullspace(&stacked, 0.0);
            if n == 2 {
                assert!(!kernel.is_empty());
            }
            for k in kernel {
                let gamma = characteristic_map(&h, &a, &act, &tau, n, &k).unwrap();
                assert!(hochschild_b(&a, &gamma).unwrap().is_zero());
                assert!(is_cyclic(&gamma));
            }
        }
    }
}
