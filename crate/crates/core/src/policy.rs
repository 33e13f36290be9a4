//! Tolerances for every approximate decision: equality, zero tests and
//! rank truncation.

use crate::error::{Result, TensorError};
use crate::tensor::DenseTensor;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericPolicy {
    /// Relative Frobenius tolerance for approximate equality.
    pub eq_tol: f64,
    /// Singular values below `rank_tol * sigma_max` are treated as zero.
    pub rank_tol: f64,
}

impl NumericPolicy {
    pub const DEFAULT_EQ_TOL: f64 = 1e-10;
    pub const DEFAULT_RANK_TOL: f64 = 1e-12;

    pub fn new(eq_tol: f64, rank_tol: f64) -> Result<Self> {
        let ok = |t: f64| t.is_finite() && t > 0.0 && t < 1.0;
        if !ok(eq_tol) {
            return Err(TensorError::InvalidArgument(format!(
                "eq_tol must lie in (0, 1), got {eq_tol}"
            )));
        }
        if !ok(rank_tol) {
            return Err(TensorError::InvalidArgument(format!(
                "rank_tol must lie in (0, 1), got {rank_tol}"
            )));
        }
        Ok(Self { eq_tol, rank_tol })
    }

    pub fn with_eq_tol(self, eq_tol: f64) -> Result<Self> {
        Self::new(eq_tol, self.rank_tol)
    }

    pub fn with_rank_tol(self, rank_tol: f64) -> Result<Self> {
        Self::new(self.eq_tol, rank_tol)
    }

    /// `rel_diff(x, y) <= eq_tol`.
    pub fn approx_eq(&self, x: &DenseTensor, y: &DenseTensor) -> bool {
        rel_diff(x, y) <= self.eq_tol
    }
}

impl Default for NumericPolicy {
    fn default() -> Self {
        Self {
            eq_tol: Self::DEFAULT_EQ_TOL,
            rank_tol: Self::DEFAULT_RANK_TOL,
        }
    }
}

/// `||x - y||_F / max(1, ||x||_F, ||y||_F)`.
///
/// Shapes must agree; a shape mismatch yields `f64::INFINITY` so that it can
/// never pass a tolerance test.
pub fn rel_diff(x: &DenseTensor, y: &DenseTensor) -> f64 {
    if x.shape() != y.shape() {
        return f64::INFINITY;
    }
    let diff = x
        .entries()
        .iter()
        .zip(y.entries())
        .map(|(a, b)| (a - b).norm_sqr())
        .sum::<f64>()
        .sqrt();
    diff / 1f64.max(x.frobenius_norm()).max(y.frobenius_norm())
}

/// `||x||_F / max(1, scale)`, used for tests of the form `X = O` where
/// `scale` bounds the norm of `X` from its factors.
pub fn rel_zero(x: &DenseTensor, scale: f64) -> f64 {
    x.frobenius_norm() / 1f64.max(scale)
}
