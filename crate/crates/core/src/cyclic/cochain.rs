use rand::Rng;

use crate::cyclic::FinAlgebra;
use crate::error::{NcgError, Result};
use crate::scalar::Field;

/// Largest number of stored values in one cochain.
pub const MAX_ENTRIES: usize = 1 << 22;

/// A multilinear functional `φ(a⁰, …, aⁿ)` stored by its values on basis
/// tuples, first argument most significant.
#[derive(Clone, Debug, PartialEq)]
pub struct Cochain<F> {
    degree: usize,
    dim: usize,
    values: Vec<F>,
}

fn entries(dim: usize, degree: usize) -> Result<usize> {
    let mut n: usize = 1;
    for _ in 0..=degree {
        n = n.checked_mul(dim).filter(|&n| n <= MAX_ENTRIES).ok_or(NcgError::Size {
            size: dim.saturating_pow(degree as u32 + 1),
            budget: MAX_ENTRIES,
        })?;
    }
    Ok(n)
}

impl<F: Field> Cochain<F> {
    pub fn zeros(dim: usize, degree: usize) -> Result<Self> {
        Ok(Cochain { degree, dim, values: vec![F::zero(); entries(dim, degree)?] })
    }

    pub fn from_values(dim: usize, degree: usize, values: Vec<F>) -> Result<Self> {
        let n = entries(dim, degree)?;
        if values.len() != n {
            return Err(NcgError::Parameter(format!("expected {n} values, got {}", values.len())));
        }
        Ok(Cochain { degree, dim, values })
    }

    pub fn from_fn(dim: usize, degree: usize, f: impl Fn(&[usize]) -> F) -> Result<Self> {
        let n = entries(dim, degree)?;
        let mut t = vec![0; degree + 1];
        let values = (0..n)
            .map(|flat| {
                decode(flat, dim, &mut t);
                f(&t)
            })
            .collect();
        Ok(Cochain { degree, dim, values })
    }

    /// Random small-integer values.
    pub fn random(dim: usize, degree: usize, rng: &mut impl Rng) -> Result<Self> {
        let n = entries(dim, degree)?;
        Ok(Cochain { degree, dim, values: (0..n).map(|_| F::from_i64(rng.gen_range(-5..=5))).collect() })
    }

    /// Random values vanishing whenever an argument after the first is basis vector 0.
    pub fn random_normalized(dim: usize, degree: usize, rng: &mut impl Rng) -> Result<Self> {
        let mut c = Self::random(dim, degree, rng)?;
        c.normalize_first_basis();
        Ok(c)
    }

    fn normalize_first_basis(&mut self) {
        let mut t = vec![0; self.degree + 1];
        for flat in 0..self.values.len() {
            decode(flat, self.dim, &mut t);
            if t[1..].contains(&0) {
                self.values[flat] = F::zero();
            }
        }
    }

    /// Normalized part: zero on tuples with the unit after slot 0. Needs the unit as basis vector 0.
    pub fn normalized(&self, alg: &FinAlgebra<F>) -> Result<Self> {
        if !alg.unit_is_first() {
            return Err(NcgError::Precondition("normalization needs the unit as basis vector 0".into()));
        }
        let mut c = self.clone();
        c.normalize_first_basis();
        Ok(c)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn values(&self) -> &[F] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn index(&self, t: &[usize]) -> usize {
        t.iter().fold(0, |acc, &i| acc * self.dim + i)
    }

    pub fn tuple(&self, flat: usize) -> Vec<usize> {
        let mut t = vec![0; self.degree + 1];
        decode(flat, self.dim, &mut t);
        t
    }

    pub fn get(&self, t: &[usize]) -> F {
        self.values[self.index(t)].clone()
    }

    pub fn set(&mut self, t: &[usize], v: F) {
        let i = self.index(t);
        self.values[i] = v;
    }

    /// `φ(a⁰, …, aⁿ)` for arbitrary coordinate vectors.
    pub fn eval(&self, args: &[Vec<F>]) -> Result<F> {
        if args.len() != self.degree + 1 || args.iter().any(|a| a.len() != self.dim) {
            return Err(NcgError::Parameter("argument count or length mismatch".into()));
        }
        let mut acc = F::zero();
        let mut t = vec![0; self.degree + 1];
        for (flat, v) in self.values.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            decode(flat, self.dim, &mut t);
            let mut w = v.clone();
            for (a, &i) in args.iter().zip(&t) {
                if a[i].is_zero() {
                    w = F::zero();
                    break;
                }
                w = w * a[i].clone();
            }
            acc = acc + w;
        }
        Ok(acc)
    }

    fn same_shape(&self, o: &Self) -> Result<()> {
        if self.degree != o.degree || self.dim != o.dim {
            return Err(NcgError::Parameter(format!(
                "cochain shapes differ: degree {} dim {} vs degree {} dim {}",
                self.degree, self.dim, o.degree, o.dim
            )));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.same_shape(o)?;
        Ok(Cochain {
            values: self.values.iter().zip(&o.values).map(|(a, b)| a.clone() + b.clone()).collect(),
            ..self.clone()
        })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.scale(&-F::one()))
    }

    pub fn scale(&self, s: &F) -> Self {
        Cochain { values: self.values.iter().map(|a| a.clone() * s.clone()).collect(), ..self.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    /// Zero up to `tol` for floating scalars, exactly zero otherwise.
    pub fn is_negligible(&self, tol: f64) -> bool {
        self.values.iter().all(|v| v.is_negligible(tol))
    }

    /// First basis tuple where `self` and `o` differ.
    pub fn first_difference(&self, o: &Self, tol: f64) -> Option<Vec<usize>> {
        if self.same_shape(o).is_err() {
            return Some(vec![]);
        }
        self.values
            .iter()
            .zip(&o.values)
            .position(|(a, b)| !(a.clone() - b.clone()).is_negligible(tol))
            .map(|i| self.tuple(i))
    }
}

pub(crate) fn decode(mut flat: usize, dim: usize, t: &mut [usize]) {
    for slot in t.iter_mut().rev() {
        *slot = flat % dim;
        flat /= dim;
    }
}

fn check_dim<F: Field>(alg: &FinAlgebra<F>, phi: &Cochain<F>) -> Result<()> {
    if alg.dim() != phi.dim {
        return Err(NcgError::Parameter(format!("cochain over dimension {} used with algebra of dimension {}", phi.dim, alg.dim())));
    }
    Ok(())
}

/// Face `δ_i : Cⁿ⁻¹ → Cⁿ`: multiplies arguments `i, i+1`, with `δ_n` wrapping `xⁿx⁰` into the first slot.
pub fn face<F: Field>(alg: &FinAlgebra<F>, phi: &Cochain<F>, i: usize) -> Result<Cochain<F>> {
    check_dim(alg, phi)?;
    let n = phi.degree + 1;
    if i > n {
        return Err(NcgError::Parameter(format!("face index {i} exceeds {n}")));
    }
    Cochain::from_fn(phi.dim, n, |t| {
        let (a, b) = if i < n { (t[i], t[i + 1]) } else { (t[n], t[0]) };
        let mut src = vec![0; n];
        if i < n {
            src[..i].copy_from_slice(&t[..i]);
            src[i + 1..].copy_from_slice(&t[i + 2..]);
        } else {
            src[1..].copy_from_slice(&t[1..n]);
        }
        let slot = if i < n { i } else { 0 };
        let mut acc = F::zero();
        for (k, c) in alg.basis_mul(a, b) {
            src[slot] = *k;
            acc = acc + c.clone() * phi.get(&src);
        }
        acc
    })
}

/// Degeneracy `σ_j : Cⁿ⁺¹ → Cⁿ`: inserts the unit after argument `j`.
pub fn degeneracy<F: Field>(alg: &FinAlgebra<F>, phi: &Cochain<F>, j: usize) -> Result<Cochain<F>> {
    check_dim(alg, phi)?;
    if phi.degree == 0 {
        return Err(NcgError::Domain("degeneracy of a degree-0 cochain".into()));
    }
    let n = phi.degree - 1;
    if j > n {
        return Err(NcgError::Parameter(format!("degeneracy index {j} exceeds {n}")));
    }
    let unit: Vec<(usize, F)> = alg.unit().iter().cloned().enumerate().filter(|(_, c)| !c.is_zero()).collect();
    Cochain::from_fn(phi.dim, n, |t| {
        let mut src = Vec::with_capacity(n + 2);
        src.extend_from_slice(&t[..=j]);
        src.push(0);
        src.extend_from_slice(&t[j + 1..]);
        let mut acc = F::zero();
        for (k, c) in &unit {
            src[j + 1] = *k;
            acc = acc + c.clone() * phi.get(&src);
        }
        acc
    })
}

/// Cyclic operator `(τφ)(x⁰, …, xⁿ) = φ(xⁿ, x⁰, …, xⁿ⁻¹)`.
pub fn cyclic_shift<F: Field>(phi: &Cochain<F>) -> Cochain<F> {
    let n = phi.degree;
    Cochain::from_fn(phi.dim, n, |t| {
        let mut src = Vec::with_capacity(n + 1);
        src.push(t[n]);
        src.extend_from_slice(&t[..n]);
        phi.get(&src)
    })
    .expect("same shape as input")
}

/// Signed cyclic shift `λ = (−1)ⁿ τ`.
pub fn signed_shift<F: Field>(phi: &Cochain<F>) -> Cochain<F> {
    let s = cyclic_shift(phi);
    if phi.degree % 2 == 1 {
        s.scale(&-F::one())
    } else {
        s
    }
}

/// Hochschild coboundary `b = Σ_{i=0}^{n+1} (−1)^i δ_i`, the last term being the wrap term.
pub fn hochschild_b<F: Field>(alg: &FinAlgebra<F>, phi: &Cochain<F>) -> Result<Cochain<F>> {
    let n = phi.degree + 1;
    let mut out = Cochain::zeros(phi.dim, n)?;
    for i in 0..=n {
        let f = face(alg, phi, i)?;
        out = if i % 2 == 0 { out.add(&f)? } else { out.sub(&f)? };
    }
    Ok(out)
}

/// `(B₀φ)(a⁰, …, aⁿ⁻¹) = φ(1, a⁰, …, aⁿ⁻¹) − (−1)ⁿ φ(a⁰, …, aⁿ⁻¹, 1)`.
pub fn b0<F: Field>(alg: &FinAlgebra<F>, phi: &Cochain<F>) -> Result<Cochain<F>> {
    check_dim(alg, phi)?;
    let n = phi.degree;
    if n == 0 {
        return Err(NcgError::Domain("B is not defined on degree-0 cochains".into()));
    }
    let unit: Vec<(usize, F)> = alg.unit().iter().cloned().enumerate().filter(|(_, c)| !c.is_zero()).collect();
    let sign = if n % 2 == 0 { F::one() } else { -F::one() };
    Cochain::from_fn(phi.dim, n - 1, |t| {
        let mut front = vec![0; n + 1];
        front[1..].copy_from_slice(t);
        let mut back = t.to_vec();
        back.push(0);
        let mut acc = F::zero();
        for (k, c) in &unit {
            front[0] = *k;
            back[n] = *k;
            acc = acc + c.clone() * (phi.get(&front) - sign.clone() * phi.get(&back));
        }
        acc
    })
}

/// The signed cyclic symmetrizer `A = Σ_j λ^j`.
pub fn symmetrizer<F: Field>(phi: &Cochain<F>) -> Cochain<F> {
    let mut acc = phi.clone();
    let mut cur = phi.clone();
    for _ in 0..phi.degree {
        cur = signed_shift(&cur);
        acc = acc.add(&cur).expect("same shape");
    }
    acc
}

/// Connes' boundary `B = A B₀`, lowering the degree by one.
pub fn connes_b<F: Field>(alg: &FinAlgebra<F>, phi: &Cochain<F>) -> Result<Cochain<F>> {
    Ok(symmetrizer(&b0(alg, phi)?))
}

/// `φ(a⁰, …, aⁿ) = (−1)ⁿ φ(aⁿ, a⁰, …, aⁿ⁻¹)` on every basis tuple.
pub fn is_cyclic<F: Field>(phi: &Cochain<F>) -> bool {
    is_cyclic_tol(phi, 0.0)
}

pub fn is_cyclic_tol<F: Field>(phi: &Cochain<F>, tol: f64) -> bool {
    signed_shift(phi).first_difference(phi, tol).is_none()
}

/// The degree-0 cochain of a linear functional.
pub fn functional<F: Field>(values: Vec<F>) -> Result<Cochain<F>> {
    Cochain::from_values(values.len(), 0, values)
}

/// `φ(a⁰, …, aⁿ) = τ(a⁰ a¹ ⋯ aⁿ)` for a functional `τ`.
pub fn trace_cochain<F: Field>(alg: &FinAlgebra<F>, tau: &[F], degree: usize) -> Result<Cochain<F>> {
    let d = alg.dim();
    Cochain::from_fn(d, degree, |t| {
        let mut p = alg.basis(t[0]);
        for &i in &t[1..] {
            p = alg.mul(&p, &alg.basis(i));
        }
        p.iter().zip(tau).fold(F::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rational};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    type Q = Rational;

    fn m2() -> FinAlgebra<Q> {
        FinAlgebra::matrix(2).unwrap()
    }

    fn tr() -> Vec<Q> {
        FinAlgebra::<Q>::matrix_trace(2)
    }

    #[test]
    fn b_kills_the_trace() {
        let a = m2();
        let t = functional(tr()).unwrap();
        assert!(hochschild_b(&a, &t).unwrap().is_zero());
    }

    #[test]
    fn b_of_first_diagonal_entry() {
        let a = m2();
        // φ(a) = a_11: coordinates 1 ↦ 1, e11 ↦ 1.
        let phi = functional(vec![rat(1, 1), rat(1, 1), rat(0, 1), rat(0, 1)]).unwrap();
        let bphi = hochschild_b(&a, &phi).unwrap();
        let (e12, e21) = (a.index_of("e12").unwrap(), a.index_of("e21").unwrap());
        assert_eq!(bphi.get(&[e12, e21]), rat(1, 1));
        assert_eq!(bphi.get(&[e21, e12]), rat(-1, 1));
    }

    #[test]
    fn b_squared_vanishes() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = m2();
        for deg in 0..3 {
            let phi = Cochain::<Q>::random(4, deg, &mut rng).unwrap();
            let bb = hochschild_b(&a, &hochschild_b(&a, &phi).unwrap()).unwrap();
            assert!(bb.is_zero(), "degree {deg}");
        }
    }

    #[test]
    fn connes_b_of_trace_pairing() {
        let a = m2();
        let phi = trace_cochain(&a, &tr(), 1).unwrap();
        let bphi = connes_b(&a, &phi).unwrap();
        let twice: Vec<Q> = tr().iter().map(|x| x.clone() * rat(2, 1)).collect();
        assert_eq!(bphi, functional(twice).unwrap());
        assert!(matches!(connes_b(&a, &functional(tr()).unwrap()), Err(NcgError::Domain(_))));
    }

    #[test]
    fn b_big_squared_and_anticommutation() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let a = m2();
        let phi = Cochain::<Q>::random(4, 2, &mut rng).unwrap();
        assert!(connes_b(&a, &connes_b(&a, &phi).unwrap()).unwrap().is_zero());
        let phi = Cochain::<Q>::random(4, 1, &mut rng).unwrap();
        let lhs = hochschild_b(&a, &connes_b(&a, &phi).unwrap()).unwrap();
        let rhs = connes_b(&a, &hochschild_b(&a, &phi).unwrap()).unwrap();
        assert!(lhs.add(&rhs).unwrap().is_zero());
    }

    #[test]
    fn cyclicity_examples() {
        let a = m2();
        assert!(is_cyclic(&functional(tr()).unwrap()));
        // Tr(a⁰a¹) is symmetric, so it is not cyclic in odd degree.
        assert!(!is_cyclic(&trace_cochain(&a, &tr(), 1).unwrap()));
        assert!(is_cyclic(&trace_cochain(&a, &tr(), 2).unwrap()));
    }

    #[test]
    fn symmetrizer_kills_one_minus_lambda() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for deg in 0..4 {
            let phi = Cochain::<Q>::random(3, deg, &mut rng).unwrap();
            let d = phi.sub(&signed_shift(&phi)).unwrap();
            assert!(symmetrizer(&d).is_zero());
        }
    }

    #[test]
    fn eval_matches_basis_values() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let a = m2();
        let phi = Cochain::<Q>::random(4, 2, &mut rng).unwrap();
        let args = vec![a.basis(1), a.basis(3), a.basis(0)];
        assert_eq!(phi.eval(&args).unwrap(), phi.get(&[1, 3, 0]));
    }

    #[test]
    fn size_budget() {
        assert!(matches!(Cochain::<Q>::zeros(9, 9), Err(NcgError::Size { .. })));
    }
}
