use crate::error::{NcgError, Result};
use crate::linalg::{inverse, matmul, Mat};
use crate::scalar::Field;

/// Largest algebra dimension accepted (that of `M₃`).
pub const MAX_DIM: usize = 9;

/// A finite-dimensional unital algebra given by structure constants
/// `e_i e_j = Σ_k c^k_{ij} e_k`.
#[derive(Clone, Debug)]
pub struct FinAlgebra<F> {
    labels: Vec<String>,
    /// Nonzero `(k, c^k_{ij})` for each `(i, j)`, flattened as `i·d + j`.
    table: Vec<Vec<(usize, F)>>,
    unit: Vec<F>,
    star: Option<Mat<F>>,
}

impl<F: Field> FinAlgebra<F> {
    /// Builds the algebra from `mul(i, j) = e_i e_j` in coordinates and checks
    /// associativity and the unit.
    pub fn new(
        labels: Vec<String>,
        mul: impl Fn(usize, usize) -> Vec<F>,
        unit: Vec<F>,
    ) -> Result<Self> {
        let d = labels.len();
        if d == 0 {
            return Err(NcgError::Parameter("algebra must have positive dimension".into()));
        }
        if d > MAX_DIM {
            return Err(NcgError::Size { size: d, budget: MAX_DIM });
        }
        if unit.len() != d {
            return Err(NcgError::Parameter("unit has wrong length".into()));
        }
        let mut table = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                let v = mul(i, j);
                if v.len() != d {
                    return Err(NcgError::Parameter(format!("product e{i}·e{j} has wrong length")));
                }
                table.push(v.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect());
            }
        }
        let alg = FinAlgebra { labels, table, unit, star: None };
        alg.verify()?;
        Ok(alg)
    }

    fn verify(&self) -> Result<()> {
        let d = self.dim();
        let close = |a: &[F], b: &[F]| a.iter().zip(b).all(|(x, y)| (x.clone() - y.clone()).is_negligible(1e-9));
        for i in 0..d {
            let e = self.basis(i);
            if !close(&self.mul(&self.unit, &e), &e) || !close(&self.mul(&e, &self.unit), &e) {
                return Err(NcgError::Precondition(format!("unit does not act trivially on {}", self.labels[i])));
            }
            for j in 0..d {
                for k in 0..d {
                    let l = self.mul(&self.mul(&e, &self.basis(j)), &self.basis(k));
                    let r = self.mul(&e, &self.mul(&self.basis(j), &self.basis(k)));
                    if !close(&l, &r) {
                        return Err(NcgError::Precondition(format!("associativity fails at ({i}, {j}, {k})")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| NcgError::Parameter(format!("unknown basis label {label}")))
    }

    pub fn unit(&self) -> &[F] {
        &self.unit
    }

    /// True when the unit is the first basis vector.
    pub fn unit_is_first(&self) -> bool {
        self.unit[0].is_one() && self.unit[1..].iter().all(|c| c.is_zero())
    }

    pub fn basis(&self, i: usize) -> Vec<F> {
        (0..self.dim()).map(|k| if k == i { F::one() } else { F::zero() }).collect()
    }

    pub fn element(&self, label: &str) -> Result<Vec<F>> {
        Ok(self.basis(self.index_of(label)?))
    }

    /// Sparse `e_i e_j`.
    pub fn basis_mul(&self, i: usize, j: usize) -> &[(usize, F)] {
        &self.table[i * self.dim() + j]
    }

    pub fn mul(&self, a: &[F], b: &[F]) -> Vec<F> {
        let d = self.dim();
        let mut out = vec![F::zero(); d];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x.clone() * y.clone();
                for (k, c) in self.basis_mul(i, j) {
                    out[*k] = out[*k].clone() + xy.clone() * c.clone();
                }
            }
        }
        out
    }

    pub fn with_star(mut self, star: Mat<F>) -> Self {
        self.star = Some(star);
        self
    }

    /// The involution on coordinates, when one was supplied.
    pub fn star(&self, a: &[F]) -> Option<Vec<F>> {
        self.star.as_ref().map(|s| {
            (0..self.dim())
                .map(|i| s[i].iter().zip(a).fold(F::zero(), |acc, (m, x)| acc + m.clone() * x.clone()))
                .collect()
        })
    }

    /// The same algebra in the basis whose vectors are the columns of `p`
    /// (given in current coordinates).
    pub fn change_basis(&self, p: &Mat<F>, labels: Vec<String>) -> Result<Self> {
        let d = self.dim();
        if p.len() != d || labels.len() != d {
            return Err(NcgError::Parameter("change of basis has wrong size".into()));
        }
        let pinv = inverse(p)?;
        let col = |j: usize| -> Vec<F> { (0..d).map(|i| p[i][j].clone()).collect() };
        let to_new = |v: &[F]| -> Vec<F> {
            (0..d)
                .map(|i| pinv[i].iter().zip(v).fold(F::zero(), |acc, (m, x)| acc + m.clone() * x.clone()))
                .collect()
        };
        let unit = to_new(&self.unit);
        let star = self.star.as_ref().map(|s| matmul(&matmul(&pinv, s), p));
        let mut alg = FinAlgebra::new(labels, |i, j| to_new(&self.mul(&col(i), &col(j))), unit)?;
        alg.star = star;
        Ok(alg)
    }

    /// The one-dimensional algebra of scalars.
    pub fn scalars() -> Self {
        FinAlgebra::new(vec!["1".into()], |_, _| vec![F::one()], vec![F::one()]).expect("scalars are an algebra")
    }

    /// `M_n` in the basis `{1} ∪ {E_ij} \ {E_nn}`, so the unit is basis vector 0.
    /// For `n = 2` the labels are `1, e11, e12, e21`.
    pub fn matrix(n: usize) -> Result<Self> {
        if n == 0 || n * n > MAX_DIM {
            return Err(NcgError::Size { size: n * n, budget: MAX_DIM });
        }
        let d = n * n;
        let idx = |i: usize, j: usize| i * n + j;
        let natural = FinAlgebra::new(
            (0..n).flat_map(|i| (0..n).map(move |j| format!("e{}{}", i + 1, j + 1))).collect(),
            |a, b| {
                let (i, j, k, l) = (a / n, a % n, b / n, b % n);
                let mut v = vec![F::zero(); d];
                if j == k {
                    v[idx(i, l)] = F::one();
                }
                v
            },
            (0..d).map(|a| if a / n == a % n { F::one() } else { F::zero() }).collect(),
        )?
        .with_star((0..d).map(|a| (0..d).map(|b| if b == idx(a % n, a / n) { F::one() } else { F::zero() }).collect()).collect());
        // New basis: the unit, then every E_ij except E_nn.
        let kept: Vec<usize> = (0..d).filter(|&a| a != idx(n - 1, n - 1)).collect();
        let mut p: Mat<F> = vec![vec![F::zero(); d]; d];
        let mut labels = vec!["1".to_string()];
        for (r, row) in p.iter_mut().enumerate() {
            row[0] = natural.unit[r].clone();
        }
        for (c, &a) in kept.iter().enumerate() {
            p[a][c + 1] = F::one();
            labels.push(natural.labels[a].clone());
        }
        natural.change_basis(&p, labels)
    }

    /// The group algebra `ℂ[ℤ/n]` with basis `1, g, …, g^{n−1}`.
    pub fn cyclic_group(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_DIM {
            return Err(NcgError::Size { size: n, budget: MAX_DIM });
        }
        let labels = (0..n).map(|k| if k == 0 { "1".to_string() } else { format!("g{k}") }).collect();
        let inv: Mat<F> = (0..n).map(|i| (0..n).map(|j| if (i + j) % n == 0 { F::one() } else { F::zero() }).collect()).collect();
        Ok(FinAlgebra::new(
            labels,
            |i, j| (0..n).map(|k| if (i + j) % n == k { F::one() } else { F::zero() }).collect(),
            (0..n).map(|k| if k == 0 { F::one() } else { F::zero() }).collect(),
        )?
        .with_star(inv))
    }

    /// Functions on `ℤ/n` with the pointwise product, in the basis of point masses `δ_u`.
    pub fn functions_on_cyclic(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_DIM {
            return Err(NcgError::Size { size: n, budget: MAX_DIM });
        }
        Ok(FinAlgebra::new(
            (0..n).map(|u| format!("d{u}")).collect(),
            |i, j| (0..n).map(|k| if i == j && j == k { F::one() } else { F::zero() }).collect(),
            vec![F::one(); n],
        )?
        .with_star((0..n).map(|i| (0..n).map(|j| if i == j { F::one() } else { F::zero() }).collect()).collect()))
    }

    /// The matrix trace on `M_n` built by [`FinAlgebra::matrix`], as coordinates of a functional.
    pub fn matrix_trace(n: usize) -> Vec<F> {
        // Tr(1) = n, Tr(E_ii) = 1, off-diagonal 0.
        let mut t = vec![F::from_i64(n as i64)];
        for a in (0..n * n).filter(|&a| a != n * n - 1) {
            t.push(if a / n == a % n { F::one() } else { F::zero() });
        }
        t
    }
}
