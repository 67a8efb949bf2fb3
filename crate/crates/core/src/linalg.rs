//! Dense linear algebra over any [`Field`], exact when the field is.

use crate::error::{NcgError, Result};
use crate::scalar::Field;

pub type Mat<F> = Vec<Vec<F>>;

pub fn zeros<F: Field>(rows: usize, cols: usize) -> Mat<F> {
    vec![vec![F::zero(); cols]; rows]
}

pub fn identity<F: Field>(n: usize) -> Mat<F> {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = F::one();
    }
    m
}

pub fn matmul<F: Field>(a: &Mat<F>, b: &Mat<F>) -> Mat<F> {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, Vec::len);
    let mut c: Mat<F> = zeros(n, m);
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[l][j].is_zero() {
                    c[i][j] = c[i][j].clone() + a[i][l].clone() * b[l][j].clone();
                }
            }
        }
    }
    c
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<F: Field>(m: &mut Mat<F>, tol: f64) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let best = (r..rows)
            .filter(|&i| !m[i][c].is_negligible(tol))
            .max_by(|&i, &j| m[i][c].magnitude().total_cmp(&m[j][c].magnitude()));
        let Some(p) = best else { continue };
        m.swap(r, p);
        let inv = m[r][c].inv();
        for x in m[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..rows {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for j in 0..cols {
                if !m[r][j].is_zero() {
                    m[i][j] = m[i][j].clone() - f.clone() * m[r][j].clone();
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(m: &Mat<F>, tol: f64) -> usize {
    let mut a = m.clone();
    rref(&mut a, tol).len()
}

/// Basis of the right null space `{x : m x = 0}`.
pub fn nullspace<F: Field>(m: &Mat<F>, tol: f64) -> Vec<Vec<F>> {
    let cols = m.first().map_or(0, Vec::len);
    let mut a = m.clone();
    let pivots = rref(&mut a, tol);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![F::zero(); cols];
            v[f] = F::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -a[row][f].clone();
            }
            v
        })
        .collect()
}

/// Solves the square system `m x = b`.
pub fn solve<F: Field>(m: &Mat<F>, b: &[F]) -> Result<Vec<F>> {
    let n = m.len();
    let mut aug: Mat<F> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug, 1e-12);
    if pivots.len() < n || pivots.iter().any(|&p| p >= n) {
        return Err(NcgError::Degenerate("singular system".into()));
    }
    Ok(aug.into_iter().map(|r| r[n].clone()).collect())
}

/// Inverse of a square matrix.
pub fn inverse<F: Field>(m: &Mat<F>) -> Result<Mat<F>> {
    let n = m.len();
    let mut aug: Mat<F> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { F::one() } else { F::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug, 1e-12);
    if pivots.len() < n || pivots.iter().any(|&p| p >= n) {
        return Err(NcgError::Degenerate("singular matrix".into()));
    }
    Ok(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn transpose<F: Field>(m: &Mat<F>) -> Mat<F> {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}
