//! Connes distance `d(φ, ψ) = sup{|φ(a) − ψ(a)| : ‖[D, a]‖ ≤ 1}`.
//!
//! Over self-adjoint `a = Σ x_k b_k` the constraint is `−1 ⪯ H(x) ⪯ 1` with
//! `H(x) = i[D, a]`, a convex set, and the objective is linear. A log-barrier
//! interior-point method follows the central path; each centered iterate is a
//! feasible point (lower bound) and yields a dual matrix `W`, corrected to be
//! exactly dual feasible, whose trace norm is an upper bound.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{NcgError, Result};
use crate::spectral::triple::{c, circle_n, circle_shift, AlgebraKind, CMat, FiniteSpectralTriple, State};

type RMat = DMatrix<f64>;

const MAX_CENTERING: usize = 50;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DistanceReport {
    #[serde(serialize_with = "extended_f64")]
    pub value: f64,
    #[serde(serialize_with = "extended_f64")]
    pub lower_bound: f64,
    #[serde(serialize_with = "extended_f64")]
    pub upper_bound: f64,
    pub iterations: usize,
}

/// Infinite values are written as the string `"inf"`.
pub(crate) fn extended_f64<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if x.is_infinite() {
        s.serialize_str(if *x > 0.0 { "inf" } else { "-inf" })
    } else {
        s.serialize_f64(*x)
    }
}

impl DistanceReport {
    fn exact(value: f64) -> Self {
        DistanceReport { value, lower_bound: value, upper_bound: value, iterations: 0 }
    }

    pub fn is_infinite(&self) -> bool {
        self.value.is_infinite()
    }

    pub fn gap(&self) -> f64 {
        self.upper_bound - self.lower_bound
    }
}

#[derive(Clone, Debug)]
pub struct DistanceOptions {
    /// Stop when `upper − lower ≤ tol · lower`.
    pub tol: f64,
    /// Relative gap still accepted once the bounds stop improving in floating point.
    pub accept: f64,
    pub max_newton: usize,
    /// Use the closed form for two points.
    pub analytic: bool,
}

impl Default for DistanceOptions {
    fn default() -> Self {
        DistanceOptions { tol: 1e-7, accept: 1e-5, max_newton: 2000, analytic: true }
    }
}

/// Real basis of the self-adjoint elements that the distance optimizes over.
/// Constants are left out: states agree on them and `[D, 1] = 0`.
pub fn selfadjoint_basis(t: &FiniteSpectralTriple) -> Result<Vec<CMat>> {
    match t.kind() {
        AlgebraKind::Points => Ok(t.generators().to_vec()),
        AlgebraKind::Circle { degree } => {
            let n = circle_n(t);
            let mut basis = Vec::with_capacity(2 * degree);
            for k in 1..=*degree as i64 {
                let up = circle_shift(n, k);
                let down = circle_shift(n, -k);
                basis.push((&up + &down) * c(0.5));
                basis.push((&up - &down) * Complex64::new(0.0, -0.5));
            }
            Ok(basis)
        }
        AlgebraKind::General => Err(NcgError::Precondition("distance needs a points or circle algebra".into())),
    }
}

/// Values of a state on [`selfadjoint_basis`].
pub fn state_values(t: &FiniteSpectralTriple, s: &State, basis: &[CMat]) -> Result<Vec<f64>> {
    s.validate(t)?;
    Ok(match s {
        State::Density(rho) => basis.iter().map(|b| (rho * b).trace().re).collect(),
        State::Point(i) => (0..basis.len()).map(|j| if j == *i { 1.0 } else { 0.0 }).collect(),
        State::Angle(x) => {
            let degree = basis.len() / 2;
            (1..=degree).flat_map(|k| [(k as f64 * x).cos(), (k as f64 * x).sin()]).collect()
        }
    })
}

pub fn distance(t: &FiniteSpectralTriple, phi: &State, psi: &State) -> Result<DistanceReport> {
    distance_with(t, phi, psi, &DistanceOptions::default())
}

pub fn distance_with(t: &FiniteSpectralTriple, phi: &State, psi: &State, opts: &DistanceOptions) -> Result<DistanceReport> {
    let basis = selfadjoint_basis(t)?;
    let cost: Vec<f64> = state_values(t, phi, &basis)?.iter().zip(state_values(t, psi, &basis)?).map(|(a, b)| a - b).collect();
    let scale = cost.iter().fold(0.0, |m: f64, x| m.max(x.abs()));
    if scale <= 1e-14 {
        return Ok(DistanceReport::exact(0.0));
    }
    if let (AlgebraKind::Circle { degree }, State::Angle(x), State::Angle(y)) = (t.kind(), phi, psi) {
        return circle_point_distance(t, *degree, y - x, opts);
    }
    if opts.analytic && *t.kind() == AlgebraKind::Points && basis.len() == 2 {
        return two_point_closed_form(t, &basis, cost[0]);
    }
    let gens: Vec<CMat> = basis.iter().map(|b| t.commutator(b) * Complex64::new(0.0, 1.0)).collect();
    let Some(problem) = Reduced::new(&cost, &gens) else {
        return Ok(DistanceReport::exact(f64::INFINITY));
    };
    problem.solve(opts)
}

/// Point evaluations on the truncated circle. Rotations `e_n ↦ e^{inα}e_n` and the
/// reflection `e_n ↦ e_{−n}` preserve the algebra and `‖[D, ·]‖`, so the points may
/// sit at `∓s/2` and, averaging `a` with its reflection, `a` may be taken odd: only
/// the `sin kθ` terms remain.
fn circle_point_distance(t: &FiniteSpectralTriple, degree: usize, s: f64, opts: &DistanceOptions) -> Result<DistanceReport> {
    let n = circle_n(t);
    let basis: Vec<CMat> = (1..=degree as i64)
        .map(|k| (circle_shift(n, k) - circle_shift(n, -k)) * Complex64::new(0.0, -0.5))
        .collect();
    let cost: Vec<f64> = (1..=degree).map(|k| 2.0 * (k as f64 * s / 2.0).sin()).collect();
    if cost.iter().all(|x| x.abs() <= 1e-14) {
        return Ok(DistanceReport::exact(0.0));
    }
    let gens: Vec<CMat> = basis.iter().map(|b| t.commutator(b) * Complex64::new(0.0, 1.0)).collect();
    match Reduced::new(&cost, &gens) {
        Some(problem) => problem.solve(opts),
        None => Ok(DistanceReport::exact(f64::INFINITY)),
    }
}

/// `‖[D, f]‖ = |f₁ − f₂| ‖p₁Dp₂‖`, so `d = |φ(p₁) − ψ(p₁)| / ‖p₁Dp₂‖`.
fn two_point_closed_form(t: &FiniteSpectralTriple, p: &[CMat], delta: f64) -> Result<DistanceReport> {
    let off = &p[0] * t.dirac() * &p[1];
    let norm = off.singular_values().max();
    if norm <= 1e-14 {
        return Ok(DistanceReport::exact(f64::INFINITY));
    }
    Ok(DistanceReport::exact(delta.abs() / norm))
}

/// `[[Re H, −Im H], [Im H, Re H]]`: a real symmetric matrix with the same norm and
/// spectrum (doubled) as the Hermitian `H`.
fn realify(h: &CMat) -> RMat {
    let n = h.nrows();
    RMat::from_fn(2 * n, 2 * n, |i, j| {
        let z = h[(i % n, j % n)];
        match (i < n, j < n) {
            (true, true) | (false, false) => z.re,
            (true, false) => -z.im,
            (false, true) => z.im,
        }
    })
}

/// The program in real form, restricted to the complement of `ker(x ↦ H(x))`.
struct Reduced {
    cost: Vec<f64>,
    gens: Vec<RMat>,
    /// Cholesky factor of the Gram matrix `Tr(G_i G_j)`.
    gram: nalgebra::Cholesky<f64, nalgebra::Dyn>,
}

impl Reduced {
    /// `None` when the cost has a component along the kernel: the distance is infinite.
    fn new(cost: &[f64], gens: &[CMat]) -> Option<Self> {
        let real = gens.iter().all(|g| g.iter().all(|z| z.im.abs() <= 1e-15 * z.norm().max(1.0)));
        let gens: Vec<RMat> = if real { gens.iter().map(|g| g.map(|z| z.re)).collect() } else { gens.iter().map(realify).collect() };
        let k = gens.len();
        let n = gens[0].nrows();
        let m = DMatrix::from_fn(n * n, k, |r, j| gens[j][(r % n, r / n)]);
        let svd = m.svd(false, true);
        let v_t = svd.v_t.expect("requested");
        let smax = svd.singular_values.max();
        let cutoff = 1e-10 * smax.max(1e-300);
        let cvec = DVector::from_column_slice(cost);
        let cnorm = cvec.norm();
        let mut kept = Vec::new();
        for (i, &s) in svd.singular_values.iter().enumerate() {
            let row = v_t.row(i).transpose();
            if s > cutoff {
                kept.push(row);
            } else if row.dot(&cvec).abs() > 1e-9 * cnorm {
                return None;
            }
        }
        if kept.is_empty() {
            return None;
        }
        let gens_r: Vec<RMat> =
            kept.iter().map(|v| v.iter().zip(&gens).fold(RMat::zeros(n, n), |acc, (x, g)| acc + g * *x)).collect();
        let cost_r = kept.iter().map(|v| v.dot(&cvec)).collect();
        let gram = DMatrix::from_fn(kept.len(), kept.len(), |i, j| trace_product(&gens_r[i], &gens_r[j])).cholesky()?;
        Some(Reduced { cost: cost_r, gens: gens_r, gram })
    }

    /// Adds `Σ y_j G_j` to `w` so that `Tr(w G_i) = c_i` holds exactly. Then
    /// `cᵀx = Tr(w H(x)) ≤ ‖w‖₁` on the feasible set.
    fn dual_feasible(&self, w: RMat) -> RMat {
        let k = self.cost.len();
        let r = DVector::from_fn(k, |i, _| self.cost[i] - trace_product(&w, &self.gens[i]));
        let y = self.gram.solve(&r);
        y.iter().zip(&self.gens).fold(w, |acc, (yj, g)| acc + g * *yj)
    }

    fn h(&self, x: &DVector<f64>) -> RMat {
        let n = self.gens[0].nrows();
        x.iter().zip(&self.gens).fold(RMat::zeros(n, n), |acc, (xi, g)| acc + g * *xi)
    }

    /// Inverses of `1 − H` and `1 + H`, or `None` outside the open feasible set.
    fn slack(&self, h: &RMat) -> Option<(RMat, RMat)> {
        let n = h.nrows();
        let id = RMat::identity(n, n);
        let a = (&id - h).cholesky()?;
        let b = (&id + h).cholesky()?;
        Some((a.inverse(), b.inverse()))
    }

    fn solve(&self, opts: &DistanceOptions) -> Result<DistanceReport> {
        let k = self.cost.len();
        let cost = DVector::from_column_slice(&self.cost);
        let mut x = DVector::zeros(k);
        let mut t = 1.0 / cost.norm().max(1e-300);
        let mut newton = 0;
        let mut best_lower = 0.0f64;
        let mut best_upper = f64::INFINITY;
        let mut stalled = 0;
        loop {
            // Centering: minimize −t cᵀx − log det(1 − H) − log det(1 + H).
            let mut centering = 0;
            let (ai, bi, h) = loop {
                let h = self.h(&x);
                let (ai, bi) = self.slack(&h).expect("iterate stays strictly feasible");
                let am: Vec<RMat> = self.gens.par_iter().map(|g| &ai * g).collect();
                let bm: Vec<RMat> = self.gens.par_iter().map(|g| &bi * g).collect();
                let grad = DVector::from_fn(k, |j, _| -t * cost[j] + am[j].trace() - bm[j].trace());
                // Tr(A⁻¹G_i A⁻¹G_j) = Tr(M_i M_jᵀᵀ) with M = A⁻¹G.
                let amt: Vec<RMat> = am.iter().map(|m| m.transpose()).collect();
                let bmt: Vec<RMat> = bm.iter().map(|m| m.transpose()).collect();
                let rows: Vec<Vec<f64>> = (0..k)
                    .into_par_iter()
                    .map(|i| (0..=i).map(|j| trace_product(&am[i], &amt[j]) + trace_product(&bm[i], &bmt[j])).collect())
                    .collect();
                let hess = DMatrix::from_fn(k, k, |i, j| if j <= i { rows[i][j] } else { rows[j][i] });
                let step = solve_spd(hess, &grad);
                let decrement = -grad.dot(&step);
                newton += 1;
                centering += 1;
                // Near the boundary roundoff can keep the decrement from vanishing.
                if decrement < 1e-9 || centering >= MAX_CENTERING || newton >= opts.max_newton {
                    break (ai, bi, h);
                }
                // Damped Newton for a self-concordant function: a step of 1/(1 + λ)
                // stays feasible and decreases the objective.
                let lambda = decrement.sqrt();
                let mut s = if lambda > 0.25 { 1.0 / (1.0 + lambda) } else { 1.0 };
                loop {
                    let trial = &x + &step * s;
                    if self.slack(&self.h(&trial)).is_some() {
                        x = trial;
                        break;
                    }
                    s *= 0.5;
                    if s < 1e-12 {
                        break;
                    }
                }
                if s < 1e-12 {
                    break (ai, bi, h);
                }
            };
            let lower = cost.dot(&x) / h.clone().symmetric_eigenvalues().amax().max(1.0);
            // (1 − H)⁻¹ − (1 + H)⁻¹ = 2(1 − H)⁻¹H(1 + H)⁻¹, without cancellation.
            let w = self.dual_feasible(&ai * &h * &bi * (2.0 / t));
            let upper: f64 = w.symmetric_eigenvalues().iter().map(|e| e.abs()).sum();
            let before = best_upper - best_lower;
            best_lower = best_lower.max(lower);
            best_upper = best_upper.min(upper);
            if best_upper - best_lower < before * (1.0 - 1e-3) {
                stalled = 0;
            } else {
                stalled += 1;
            }
            let gap = best_upper - best_lower;
            let report = DistanceReport {
                value: 0.5 * (best_upper + best_lower),
                lower_bound: best_lower,
                upper_bound: best_upper,
                iterations: newton,
            };
            if gap <= opts.tol * best_lower || ((stalled >= 3 || newton >= opts.max_newton) && gap <= opts.accept * best_lower) {
                return Ok(report);
            }
            if stalled >= 3 || newton >= opts.max_newton {
                return Err(NcgError::Convergence(format!(
                    "distance bounds [{best_lower}, {best_upper}] after {newton} Newton steps"
                )));
            }
            t *= 8.0;
        }
    }
}

/// `Tr(XYᵀ)`, which is `Tr(XY)` when `Y` is symmetric.
fn trace_product(x: &RMat, y: &RMat) -> f64 {
    x.iter().zip(y.iter()).map(|(a, b)| a * b).sum()
}

/// Solves `H s = −g` for the Newton step, with a small ridge if `H` is numerically singular.
fn solve_spd(h: DMatrix<f64>, g: &DVector<f64>) -> DVector<f64> {
    let scale = h.diagonal().max().max(1e-300);
    let mut ridge = 0.0;
    loop {
        let m = &h + DMatrix::identity(h.nrows(), h.ncols()) * ridge;
        if let Some(ch) = m.cholesky() {
            return -ch.solve(g);
        }
        ridge = if ridge == 0.0 { 1e-14 * scale } else { ridge * 10.0 };
    }
}
