//! One-sided (Hestenes) Jacobi SVD for dense complex matrices.
//!
//! Column pairs of a working copy `W = M` are rotated until they are
//! mutually orthogonal; the accumulated rotations form `V`, the column
//! norms are the singular values and the normalized columns are the left
//! singular vectors. Wide inputs are handled through `M^H`.

use num_complex::Complex64;

use super::matrix::DenseMatrix;
use crate::error::{Result, TensorError};

pub const MAX_SWEEPS: usize = 30;

/// Full SVD `M = U diag(sigma) V^H` with square unitary `U` (rows x rows)
/// and `V` (cols x cols); `sigma` has `min(rows, cols)` entries, sorted
/// nonincreasing.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixSvd {
    pub u: DenseMatrix,
    pub sigma: Vec<f64>,
    pub v: DenseMatrix,
    pub sweeps: usize,
}

impl MatrixSvd {
    /// `U diag(sigma) V^H`.
    pub fn reconstruct(&self) -> DenseMatrix {
        let (m, n) = (self.u.rows(), self.v.rows());
        let mut out = DenseMatrix::zeros(m, n);
        for (k, &s) in self.sigma.iter().enumerate() {
            if s == 0.0 {
                continue;
            }
            for r in 0..m {
                let left = self.u.get(r, k) * s;
                for c in 0..n {
                    let cur = out.get(r, c);
                    out.set(r, c, cur + left * self.v.get(c, k).conj());
                }
            }
        }
        out
    }
}

pub fn matrix_svd(m: &DenseMatrix) -> Result<MatrixSvd> {
    if m.rows() >= m.cols() {
        tall_svd(m)
    } else {
        let t = tall_svd(&m.conj_transpose())?;
        Ok(MatrixSvd {
            u: t.v,
            sigma: t.sigma,
            v: t.u,
            sweeps: t.sweeps,
        })
    }
}

fn tall_svd(m: &DenseMatrix) -> Result<MatrixSvd> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut w: Vec<Vec<Complex64>> = (0..cols)
        .map(|c| (0..rows).map(|r| m.get(r, c)).collect())
        .collect();
    let mut v: Vec<Vec<Complex64>> = (0..cols)
        .map(|c| {
            let mut e = vec![Complex64::default(); cols];
            e[c] = Complex64::new(1.0, 0.0);
            e
        })
        .collect();

    let tol = rows as f64 * f64::EPSILON;
    let mut sweeps = 0;
    let mut converged = cols < 2;
    while !converged {
        if sweeps == MAX_SWEEPS {
            return Err(TensorError::SvdNoConvergence { sweeps });
        }
        sweeps += 1;
        converged = true;
        for p in 0..cols {
            for q in p + 1..cols {
                let alpha = norm_sqr(&w[p]);
                let beta = norm_sqr(&w[q]);
                let gamma: Complex64 = w[p].iter().zip(&w[q]).map(|(x, y)| x.conj() * y).sum();
                let g = gamma.norm();
                if alpha == 0.0 || beta == 0.0 || g <= tol * (alpha * beta).sqrt() {
                    continue;
                }
                converged = false;
                let phase = (gamma / g).conj();
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + 1f64.hypot(zeta));
                let c = 1.0 / 1f64.hypot(t);
                let s = c * t;
                rotate(&mut w, p, q, c, s, phase);
                rotate(&mut v, p, q, c, s, phase);
            }
        }
    }

    let norms: Vec<f64> = w.iter().map(|col| norm_sqr(col).sqrt()).collect();
    let mut order: Vec<usize> = (0..cols).collect();
    order.sort_by(|&a, &b| norms[b].total_cmp(&norms[a]));

    let sigma: Vec<f64> = order.iter().map(|&j| norms[j]).collect();
    let mut u_cols: Vec<Option<Vec<Complex64>>> = order
        .iter()
        .map(|&j| {
            let s = norms[j];
            (s > f64::MIN_POSITIVE * 1e8).then(|| w[j].iter().map(|z| z / s).collect())
        })
        .collect();
    u_cols.resize(rows, None);
    let u_cols = complete_basis(u_cols, rows);

    let mut u = DenseMatrix::zeros(rows, rows);
    for (c, col) in u_cols.iter().enumerate() {
        for (r, &z) in col.iter().enumerate() {
            u.set(r, c, z);
        }
    }
    let mut vm = DenseMatrix::zeros(cols, cols);
    for (c, &j) in order.iter().enumerate() {
        for (r, &z) in v[j].iter().enumerate() {
            vm.set(r, c, z);
        }
    }
    Ok(MatrixSvd {
        u,
        sigma,
        v: vm,
        sweeps,
    })
}

fn norm_sqr(x: &[Complex64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum()
}

/// `[x_p, x_q] <- [x_p, phase * x_q] * [[c, s], [-s, c]]`.
fn rotate(cols: &mut [Vec<Complex64>], p: usize, q: usize, c: f64, s: f64, phase: Complex64) {
    let (head, tail) = cols.split_at_mut(q);
    let (xp, xq) = (&mut head[p], &mut tail[0]);
    for (a, b) in xp.iter_mut().zip(xq.iter_mut()) {
        let x = *a;
        let y = *b * phase;
        *a = x * c - y * s;
        *b = x * s + y * c;
    }
}

/// Fills the `None` slots with unit vectors orthogonal to every other
/// column, drawn from the standard basis by modified Gram-Schmidt.
fn complete_basis(mut cols: Vec<Option<Vec<Complex64>>>, dim: usize) -> Vec<Vec<Complex64>> {
    for slot in 0..cols.len() {
        if cols[slot].is_some() {
            continue;
        }
        let fixed: Vec<Vec<Complex64>> = cols.iter().flatten().cloned().collect();
        let mut best: Option<(f64, Vec<Complex64>)> = None;
        for e in 0..dim {
            let mut x = vec![Complex64::default(); dim];
            x[e] = Complex64::new(1.0, 0.0);
            // Two passes keep the result orthogonal to working precision.
            for _ in 0..2 {
                for f in &fixed {
                    let proj: Complex64 = f.iter().zip(&x).map(|(a, b)| a.conj() * b).sum();
                    for (xi, fi) in x.iter_mut().zip(f) {
                        *xi -= proj * fi;
                    }
                }
            }
            let n = norm_sqr(&x).sqrt();
            if best.as_ref().is_none_or(|(bn, _)| n > *bn) {
                best = Some((n, x));
            }
        }
        let (n, x) = best.expect("dim >= 1");
        cols[slot] = Some(x.into_iter().map(|z| z / n).collect());
    }
    cols.into_iter().map(|c| c.expect("filled")).collect()
}
