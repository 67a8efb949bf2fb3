//! Finite spectral triples `(A, H, D)` with optional grading and real structure.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{NcgError, Result};

pub type CMat = DMatrix<Complex64>;

/// Relative tolerance for structural checks (self-adjointness, `γ² = 1`, …).
pub const STRUCTURE_TOL: f64 = 1e-10;

/// Largest truncation accepted by [`circle_triple`]; matrices are dense.
pub const MAX_CIRCLE_N: usize = 512;

/// How self-adjoint elements of the algebra are parametrized.
#[derive(Clone, Debug, PartialEq)]
pub enum AlgebraKind {
    /// `ℂ^d` acting through orthogonal projections `p_1, …, p_d` with `Σ p_j = 1`.
    Points,
    /// Trigonometric polynomials of degree at most `degree` in the truncated shift.
    Circle { degree: usize },
    /// Only the generators are known; distances are unavailable.
    General,
}

#[derive(Clone, Debug)]
pub struct FiniteSpectralTriple {
    generators: Vec<CMat>,
    dirac: CMat,
    grading: Option<CMat>,
    /// `V` in `J = V ∘ conj`.
    real_unitary: Option<CMat>,
    kind: AlgebraKind,
}

pub(crate) fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub(crate) fn max_abs(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn scale_of(m: &CMat) -> f64 {
    max_abs(m).max(1.0)
}

fn check_square(m: &CMat, n: usize, what: &str) -> Result<()> {
    if m.nrows() != n || m.ncols() != n {
        return Err(NcgError::Parameter(format!("{what} is {}×{}, expected {n}×{n}", m.nrows(), m.ncols())));
    }
    Ok(())
}

/// Eigenvalues and eigenvectors of a Hermitian matrix, eigenvalues ascending.
pub(crate) fn hermitian_eigen(m: &CMat) -> (Vec<f64>, CMat) {
    let eig = SymmetricEigen::new(m.clone());
    let mut order: Vec<usize> = (0..m.nrows()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = CMat::from_fn(m.nrows(), m.ncols(), |r, k| eig.eigenvectors[(r, order[k])]);
    (values, vectors)
}


impl FiniteSpectralTriple {
    /// A triple with general algebra generators.
    pub fn new(generators: Vec<CMat>, dirac: CMat) -> Result<Self> {
        Self::with_kind(generators, dirac, AlgebraKind::General)
    }

    fn with_kind(generators: Vec<CMat>, dirac: CMat, kind: AlgebraKind) -> Result<Self> {
        let n = dirac.nrows();
        check_square(&dirac, n, "D")?;
        if n == 0 {
            return Err(NcgError::Parameter("empty Hilbert space".into()));
        }
        for g in &generators {
            check_square(g, n, "generator")?;
        }
        if max_abs(&(&dirac - dirac.adjoint())) > STRUCTURE_TOL * scale_of(&dirac) {
            return Err(NcgError::Parameter("D is not self-adjoint".into()));
        }
        Ok(FiniteSpectralTriple { generators, dirac, grading: None, real_unitary: None, kind })
    }

    /// The commutative algebra `ℂ^d` acting on consecutive blocks of the given sizes.
    pub fn points(dirac: CMat, multiplicities: &[usize]) -> Result<Self> {
        let n: usize = multiplicities.iter().sum();
        if multiplicities.iter().any(|&m| m == 0) {
            return Err(NcgError::Parameter("zero multiplicity".into()));
        }
        check_square(&dirac, n, "D")?;
        let mut start = 0;
        let mut projections = Vec::new();
        for &m in multiplicities {
            projections.push(CMat::from_fn(n, n, |i, j| if i == j && i >= start && i < start + m { c(1.0) } else { c(0.0) }));
            start += m;
        }
        Self::with_kind(projections, dirac, AlgebraKind::Points)
    }

    /// Two points with `D = [[0, m], [m, 0]]`.
    pub fn two_point(m: f64) -> Result<Self> {
        let d = CMat::from_row_slice(2, 2, &[c(0.0), c(m), c(m), c(0.0)]);
        Self::points(d, &[1, 1])
    }

    /// Adds a grading; checks `γ = γ*`, `γ² = 1`, `γD = −Dγ` and `[γ, a] = 0`.
    pub fn with_grading(mut self, gamma: CMat) -> Result<Self> {
        let n = self.dim();
        check_square(&gamma, n, "γ")?;
        let id = CMat::identity(n, n);
        let tol = STRUCTURE_TOL * scale_of(&self.dirac);
        if max_abs(&(&gamma - gamma.adjoint())) > STRUCTURE_TOL || max_abs(&(&gamma * &gamma - id)) > STRUCTURE_TOL {
            return Err(NcgError::Parameter("γ must be a self-adjoint involution".into()));
        }
        if max_abs(&(&gamma * &self.dirac + &self.dirac * &gamma)) > tol {
            return Err(NcgError::Parameter("γ does not anticommute with D".into()));
        }
        if self.generators.iter().any(|a| max_abs(&(&gamma * a - a * &gamma)) > STRUCTURE_TOL * scale_of(a)) {
            return Err(NcgError::Parameter("γ does not commute with the algebra".into()));
        }
        self.grading = Some(gamma);
        Ok(self)
    }

    /// Adds `J = V ∘ conj` for a unitary `V`.
    pub fn with_real_structure(mut self, v: CMat) -> Result<Self> {
        let n = self.dim();
        check_square(&v, n, "V")?;
        if max_abs(&(v.adjoint() * &v - CMat::identity(n, n))) > STRUCTURE_TOL {
            return Err(NcgError::Parameter("V is not unitary".into()));
        }
        self.real_unitary = Some(v);
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dirac.nrows()
    }

    pub fn generators(&self) -> &[CMat] {
        &self.generators
    }

    pub fn dirac(&self) -> &CMat {
        &self.dirac
    }

    pub fn grading(&self) -> Option<&CMat> {
        self.grading.as_ref()
    }

    pub fn real_unitary(&self) -> Option<&CMat> {
        self.real_unitary.as_ref()
    }

    pub fn kind(&self) -> &AlgebraKind {
        &self.kind
    }

    /// `[D, a]`.
    pub fn commutator(&self, a: &CMat) -> CMat {
        &self.dirac * a - a * &self.dirac
    }

    /// Eigenvalues of `D`, ascending.
    pub fn dirac_spectrum(&self) -> Vec<f64> {
        hermitian_eigen(&self.dirac).0
    }

    /// The same triple with `D + c·1`.
    pub fn shifted(&self, shift: f64) -> Self {
        let mut t = self.clone();
        t.dirac = &self.dirac + CMat::identity(self.dim(), self.dim()) * c(shift);
        t
    }

    /// `W(A, H, D, γ, J)W*`; the unitary part of `J` becomes `W V Wᵀ`.
    pub fn conjugated(&self, w: &CMat) -> Result<Self> {
        let n = self.dim();
        check_square(w, n, "W")?;
        if max_abs(&(w.adjoint() * w - CMat::identity(n, n))) > STRUCTURE_TOL {
            return Err(NcgError::Parameter("W is not unitary".into()));
        }
        let conj = |m: &CMat| w * m * w.adjoint();
        Ok(FiniteSpectralTriple {
            generators: self.generators.iter().map(conj).collect(),
            dirac: conj(&self.dirac),
            grading: self.grading.as_ref().map(conj),
            real_unitary: self.real_unitary.as_ref().map(|v| w * v * w.transpose()),
            kind: self.kind.clone(),
        })
    }
}

/// Truncated shift `S^w` on modes `−N…N`: `S e_n = e_{n+1}`, with `S e_N = 0`.
/// Negative `w` gives powers of `S*`.
pub fn circle_shift(n: usize, w: i64) -> CMat {
    let dim = 2 * n + 1;
    CMat::from_fn(dim, dim, |i, j| if i as i64 - j as i64 == w { c(1.0) } else { c(0.0) })
}

/// Default trigonometric degree of the truncated circle algebra.
pub fn default_circle_degree(n: usize) -> usize {
    n
}

/// The circle truncated to Fourier modes `|n| ≤ N`: `D = diag(−N…N)` and the algebra
/// generated by the truncated shift.
pub fn circle_triple(n: usize) -> Result<FiniteSpectralTriple> {
    circle_triple_with_degree(n, default_circle_degree(n))
}

pub fn circle_triple_with_degree(n: usize, degree: usize) -> Result<FiniteSpectralTriple> {
    if n < 2 {
        return Err(NcgError::Parameter("circle truncation needs N ≥ 2".into()));
    }
    if n > MAX_CIRCLE_N {
        return Err(NcgError::Size { size: n, budget: MAX_CIRCLE_N });
    }
    if degree == 0 || degree > 2 * n {
        return Err(NcgError::Parameter(format!("degree must lie in 1..={}", 2 * n)));
    }
    let dim = 2 * n + 1;
    let d = CMat::from_fn(dim, dim, |i, j| if i == j { c(i as f64 - n as f64) } else { c(0.0) });
    FiniteSpectralTriple::with_kind(vec![circle_shift(n, 1)], d, AlgebraKind::Circle { degree })
}

/// Truncation `N` of a circle triple.
pub(crate) fn circle_n(t: &FiniteSpectralTriple) -> usize {
    (t.dim() - 1) / 2
}

/// `max |(U*[D, U] − 1)e_n|` over interior modes `|n| ≤ N − 1`, where `U*` inverts `U`.
pub fn circle_relation_residual(t: &FiniteSpectralTriple) -> Result<f64> {
    if !matches!(t.kind(), AlgebraKind::Circle { .. }) {
        return Err(NcgError::Type("not a circle triple".into()));
    }
    let u = &t.generators()[0];
    let r = u.adjoint() * t.commutator(u) - CMat::identity(t.dim(), t.dim());
    let interior = t.dim() - 1;
    Ok((0..interior).flat_map(|j| (0..t.dim()).map(move |i| (i, j))).map(|(i, j)| r[(i, j)].norm()).fold(0.0, f64::max))
}

/// Number of eigenvalues of `D` in `[−Λ, Λ]`.
pub fn spectral_action_count(t: &FiniteSpectralTriple, lambda: f64) -> usize {
    let slack = 1e-9 * lambda.abs().max(1.0);
    t.dirac_spectrum().iter().filter(|x| x.abs() <= lambda + slack).count()
}

/// A state on the algebra.
#[derive(Clone, Debug)]
pub enum State {
    /// `φ(a) = Tr(ρa)` for a density matrix `ρ`.
    Density(CMat),
    /// Evaluation at the `i`-th point of a [`AlgebraKind::Points`] algebra.
    Point(usize),
    /// Evaluation at angle `x` on the truncated circle: `φ(U^k) = e^{ikx}`.
    Angle(f64),
}

impl State {
    pub fn validate(&self, t: &FiniteSpectralTriple) -> Result<()> {
        match (self, t.kind()) {
            (State::Density(rho), _) => {
                check_square(rho, t.dim(), "ρ")?;
                if max_abs(&(rho - rho.adjoint())) > STRUCTURE_TOL {
                    return Err(NcgError::Parameter("ρ is not self-adjoint".into()));
                }
                if (rho.trace() - c(1.0)).norm() > STRUCTURE_TOL {
                    return Err(NcgError::Parameter("ρ does not have unit trace".into()));
                }
                if hermitian_eigen(rho).0[0] < -STRUCTURE_TOL {
                    return Err(NcgError::Parameter("ρ is not positive".into()));
                }
                Ok(())
            }
            (State::Point(i), AlgebraKind::Points) if *i < t.generators().len() => Ok(()),
            (State::Point(i), AlgebraKind::Points) => {
                Err(NcgError::Parameter(format!("point {i} out of range for {} points", t.generators().len())))
            }
            (State::Angle(x), AlgebraKind::Circle { .. }) if x.is_finite() => Ok(()),
            (State::Angle(_), AlgebraKind::Circle { .. }) => Err(NcgError::Parameter("angle must be finite".into())),
            _ => Err(NcgError::Type("state does not match the algebra".into())),
        }
    }
}
