use serde::Serialize;

use super::{einstein_product, DenseTensor};
use crate::policy::{rel_diff, NumericPolicy};

/// Structural flags of a tensor, each decided by a relative residual
/// against `policy.eq_tol`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Classification {
    pub hermitian: bool,
    pub skew_hermitian: bool,
    pub unitary: bool,
    pub idempotent: bool,
    pub diagonal: bool,
    pub normal: bool,
    /// Set when the square-only flags were forced to false.
    pub reason: Option<&'static str>,
    pub residuals: ClassResiduals,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct ClassResiduals {
    pub hermitian: f64,
    pub skew_hermitian: f64,
    pub unitary: f64,
    pub idempotent: f64,
    pub diagonal: f64,
    pub normal: f64,
}

pub const NOT_SQUARE: &str = "not-square";

pub fn classify(a: &DenseTensor, policy: &NumericPolicy) -> Classification {
    let tol = policy.eq_tol;
    let cols = a.shape().col_count();
    let off_diag = a
        .entries()
        .iter()
        .enumerate()
        .filter(|(k, _)| k / cols != k % cols)
        .map(|(_, z)| z.norm_sqr())
        .sum::<f64>()
        .sqrt();
    let diagonal = off_diag / 1f64.max(a.frobenius_norm());

    if !a.shape().is_square() {
        let inf = f64::INFINITY;
        return Classification {
            hermitian: false,
            skew_hermitian: false,
            unitary: false,
            idempotent: false,
            diagonal: diagonal <= tol,
            normal: false,
            reason: Some(NOT_SQUARE),
            residuals: ClassResiduals {
                hermitian: inf,
                skew_hermitian: inf,
                unitary: inf,
                idempotent: inf,
                diagonal,
                normal: inf,
            },
        };
    }

    let star = a.conj_transpose();
    let norm = a.frobenius_norm();
    let sum = a
        .entries()
        .iter()
        .zip(star.entries())
        .map(|(x, y)| (x + y).norm_sqr())
        .sum::<f64>()
        .sqrt();
    let id = DenseTensor::identity(a.shape().row_dims()).expect("square shape with nonempty modes");
    // Both products are square with identical shapes, so unwraps cannot fail.
    let a_astar = einstein_product(a, &star).unwrap();
    let astar_a = einstein_product(&star, a).unwrap();
    let a_a = einstein_product(a, a).unwrap();

    let residuals = ClassResiduals {
        hermitian: rel_diff(a, &star),
        skew_hermitian: sum / 1f64.max(norm),
        unitary: rel_diff(&a_astar, &id).max(rel_diff(&astar_a, &id)),
        idempotent: rel_diff(&a_a, a),
        diagonal,
        normal: rel_diff(&a_astar, &astar_a),
    };
    Classification {
        hermitian: residuals.hermitian <= tol,
        skew_hermitian: residuals.skew_hermitian <= tol,
        unitary: residuals.unitary <= tol,
        idempotent: residuals.idempotent <= tol,
        diagonal: residuals.diagonal <= tol,
        normal: residuals.normal <= tol,
        reason: None,
        residuals,
    }
}
