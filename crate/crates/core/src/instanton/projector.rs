use std::sync::Arc;

use crate::algebra_core::{GeneratorSpec, Phase, TwistedPoly};
use crate::error::{NcgError, Result};
use crate::scalar::ComplexScalar;

/// A 4×4 matrix over a λ-twisted polynomial algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectorMatrix<C: ComplexScalar> {
    spec: Arc<GeneratorSpec>,
    entries: Vec<Vec<TwistedPoly<C>>>,
}

/// `e = [[t·1₂, q], [q*, (1 − t)·1₂]]` with `q = [[α, β], [−λβ*, α*]]` over the
/// θ-deformed four-sphere.
pub fn build_projector<C: ComplexScalar>(phase: Phase) -> Result<ProjectorMatrix<C>> {
    ProjectorMatrix::instanton(Arc::new(GeneratorSpec::s4_theta(phase)?))
}

impl<C: ComplexScalar> ProjectorMatrix<C> {
    /// An arbitrary 4×4 matrix; no projector property is assumed.
    pub fn new(spec: &Arc<GeneratorSpec>, entries: Vec<Vec<TwistedPoly<C>>>) -> Result<Self> {
        if entries.len() != 4 || entries.iter().any(|r| r.len() != 4) {
            return Err(NcgError::Parameter("projector matrix must be 4×4".into()));
        }
        if entries.iter().flatten().any(|p| !Arc::ptr_eq(p.spec(), spec) && **p.spec() != **spec) {
            return Err(NcgError::Parameter("entries live over different generator specs".into()));
        }
        Ok(ProjectorMatrix { spec: spec.clone(), entries })
    }

    /// The instanton projector over any spec with generators `a, a*, b, b*, t`.
    /// The lower-left block is computed as `q*`, so `e = e*` holds by construction.
    pub fn instanton(spec: Arc<GeneratorSpec>) -> Result<Self> {
        if spec.phase().is_minus_one() {
            return Err(NcgError::Parameter("λ = −1 is excluded".into()));
        }
        let g = |n: &str| TwistedPoly::<C>::generator(&spec, n);
        let (a, a_s, b, b_s, t) = (g("a")?, g("a*")?, g("b")?, g("b*")?, g("t")?);
        let lambda: C = spec.phase().lambda_pow(1)?;
        let q = [[a, b], [b_s.scale(&-lambda), a_s]];
        let one = TwistedPoly::one(&spec);
        let zero = TwistedPoly::zero(&spec);
        let one_minus_t = one.sub(&t);
        let mut e = vec![vec![zero; 4]; 4];
        for i in 0..2 {
            e[i][i] = t.clone();
            e[i + 2][i + 2] = one_minus_t.clone();
            for j in 0..2 {
                e[i][j + 2] = q[i][j].clone();
                e[j + 2][i] = q[i][j].star();
            }
        }
        Ok(ProjectorMatrix { spec, entries: e })
    }

    pub fn spec(&self) -> &Arc<GeneratorSpec> {
        &self.spec
    }

    pub fn entry(&self, i: usize, j: usize) -> &TwistedPoly<C> {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<TwistedPoly<C>>] {
        &self.entries
    }

    /// `(e*)_{ij} = (e_{ji})*`.
    pub fn adjoint(&self) -> Self {
        let entries = (0..4).map(|i| (0..4).map(|j| self.entries[j][i].star()).collect()).collect();
        ProjectorMatrix { spec: self.spec.clone(), entries }
    }

    /// Matrix product with every entry reduced by the algebra's relations.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let mut entries = Vec::with_capacity(4);
        for i in 0..4 {
            let mut row = Vec::with_capacity(4);
            for j in 0..4 {
                let mut s = TwistedPoly::zero(&self.spec);
                for k in 0..4 {
                    s = s.add(&self.entries[i][k].mul(&other.entries[k][j]));
                }
                row.push(s.reduce()?);
            }
            entries.push(row);
        }
        Ok(ProjectorMatrix { spec: self.spec.clone(), entries })
    }

    pub fn sub(&self, other: &Self) -> Self {
        let entries = (0..4).map(|i| (0..4).map(|j| self.entries[i][j].sub(&other.entries[i][j])).collect()).collect();
        ProjectorMatrix { spec: self.spec.clone(), entries }
    }

    pub fn trace(&self) -> TwistedPoly<C> {
        (0..4).fold(TwistedPoly::zero(&self.spec), |s, i| s.add(&self.entries[i][i]))
    }

    /// First nonzero entry, if any.
    pub fn first_nonzero(&self) -> Option<(usize, usize, &TwistedPoly<C>)> {
        (0..16).map(|k| (k / 4, k % 4)).find_map(|(i, j)| {
            let p = &self.entries[i][j];
            (!p.is_zero()).then_some((i, j, p))
        })
    }

    pub fn is_zero(&self) -> bool {
        self.first_nonzero().is_none()
    }

    /// Whether `e* = e` entrywise.
    pub fn is_selfadjoint(&self) -> bool {
        self.adjoint().sub(self).is_zero()
    }
}

/// `e² − e`, reduced. The zero matrix exactly when `e` is idempotent modulo the relations.
pub fn verify_idempotent<C: ComplexScalar>(e: &ProjectorMatrix<C>) -> Result<ProjectorMatrix<C>> {
    Ok(e.mul(e)?.sub(e))
}

/// `Tr(e) − 2`, computed without applying any relation.
pub fn ch0_residual<C: ComplexScalar>(e: &ProjectorMatrix<C>) -> TwistedPoly<C> {
    e.trace().sub(&TwistedPoly::constant(&e.spec, C::from_i64(2)))
}
