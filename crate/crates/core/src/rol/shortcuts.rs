use serde::Serialize;

use super::Condition;
use crate::error::{Result, TensorError};
use crate::pinv::pinv;
use crate::policy::{rel_diff, rel_zero, NumericPolicy};
use crate::tensor::{classify, DenseTensor};

fn check_conforms(a: &DenseTensor, b: &DenseTensor) -> Result<()> {
    if a.shape().col_dims() != b.shape().row_dims() {
        return Err(TensorError::ContractionMismatch {
            left: a.shape().clone(),
            right: b.shape().clone(),
        });
    }
    Ok(())
}

/// `pinv(A * B)` without inverting the product, when one factor is unitary:
/// `B* * A+` if `B` is unitary, otherwise `B+ * A*` if `A` is.
pub fn unitary_rol(
    a: &DenseTensor,
    b: &DenseTensor,
    policy: &NumericPolicy,
) -> Result<DenseTensor> {
    check_conforms(a, b)?;
    if classify(b, policy).unitary {
        b.conj_transpose().mul(&pinv(a, policy)?)
    } else if classify(a, policy).unitary {
        pinv(b, policy)?.mul(&a.conj_transpose())
    } else {
        Err(TensorError::NotUnitary("neither"))
    }
}

/// `pinv(B * A * C) = C* * A+ * B*` for unitary `B` and `C`.
pub fn sandwich_pinv(
    b: &DenseTensor,
    a: &DenseTensor,
    c: &DenseTensor,
    policy: &NumericPolicy,
) -> Result<DenseTensor> {
    check_conforms(b, a)?;
    check_conforms(a, c)?;
    if !classify(b, policy).unitary {
        return Err(TensorError::NotUnitary("left"));
    }
    if !classify(c, policy).unitary {
        return Err(TensorError::NotUnitary("right"));
    }
    c.conj_transpose()
        .mul(&pinv(a, policy)?)?
        .mul(&b.conj_transpose())
}

/// The three equivalent annihilation conditions `B A+ = O`, `B A* = O`,
/// `B A+ A = O`. Each residual is normalized by the product of its factor
/// norms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZeroEquivalence {
    pub via_pinv: Condition,
    pub via_adjoint: Condition,
    pub via_projector: Condition,
}

impl ZeroEquivalence {
    pub fn agree(&self) -> bool {
        self.via_pinv.holds == self.via_adjoint.holds
            && self.via_adjoint.holds == self.via_projector.holds
    }
}

pub fn zero_equivalence(
    b: &DenseTensor,
    a: &DenseTensor,
    policy: &NumericPolicy,
) -> Result<ZeroEquivalence> {
    let ad = pinv(a, policy)?;
    let ah = a.conj_transpose();
    check_conforms(b, &ah)?;
    let proj = ad.mul(a)?;
    let nb = b.frobenius_norm();
    let tol = policy.eq_tol;
    Ok(ZeroEquivalence {
        via_pinv: Condition::new(rel_zero(&b.mul(&ad)?, nb * ad.frobenius_norm()), tol),
        via_adjoint: Condition::new(rel_zero(&b.mul(&ah)?, nb * a.frobenius_norm()), tol),
        via_projector: Condition::new(rel_zero(&b.mul(&proj)?, nb * proj.frobenius_norm()), tol),
    })
}

/// Commutation conditions between the projectors of `A` and `B`.
///
/// * `commute`: `A+ A B B+ = B B+ A+ A`
/// * `commute_absorb`: `A+ A B B+ A* = B B+ A*`, equivalent to `commute`
/// * `commute_dual`: `B+ B A A+ = A A+ B+ B`
/// * `dual_absorb`: `B+ B A A+ B* = A A+ B*`, equivalent to `commute_dual`
/// * `absorb_left`: `A+ A B B* A* = B B* A*`, equivalent to `sandwich_left`:
///   `(I - A+ A) B B* A+ A = O`
/// * `absorb_right`: `B B+ A* A B = A* A B`, equivalent to `sandwich_right`:
///   `(I - B B+) A* A B B+ = O`
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CommuteReport {
    pub commute: Condition,
    pub commute_absorb: Condition,
    pub commute_dual: Condition,
    pub dual_absorb: Condition,
    pub absorb_left: Condition,
    pub absorb_right: Condition,
    pub sandwich_left: Condition,
    pub sandwich_right: Condition,
}

impl CommuteReport {
    /// Every pair of equivalent conditions reached the same verdict.
    pub fn consistent(&self) -> bool {
        self.commute_absorb.holds == self.commute.holds
            && self.dual_absorb.holds == self.commute_dual.holds
            && self.absorb_left.holds == self.sandwich_left.holds
            && self.absorb_right.holds == self.sandwich_right.holds
    }
}

pub fn projector_commute_report(
    a: &DenseTensor,
    b: &DenseTensor,
    policy: &NumericPolicy,
) -> Result<CommuteReport> {
    check_conforms(a, b)?;
    let tol = policy.eq_tol;
    let cond = |x: &DenseTensor, y: &DenseTensor| Condition::new(rel_diff(x, y), tol);

    let ad = pinv(a, policy)?;
    let bd = pinv(b, policy)?;
    let ah = a.conj_transpose();
    let bh = b.conj_transpose();
    let pa = ad.mul(a)?; // A+ A
    let pb = b.mul(&bd)?; // B B+
    let qa = a.mul(&ad)?; // A A+
    let qb = bd.mul(b)?; // B+ B
    let bbh = b.mul(&bh)?;
    let aha = ah.mul(a)?;

    let pb_ah = pb.mul(&ah)?;
    let qa_bh = qa.mul(&bh)?;
    let bbh_ah = bbh.mul(&ah)?;
    let aha_b = aha.mul(b)?;
    let bbh_pa = bbh.mul(&pa)?;
    let aha_pb = aha.mul(&pb)?;

    Ok(CommuteReport {
        commute: cond(&pa.mul(&pb)?, &pb.mul(&pa)?),
        commute_absorb: cond(&pa.mul(&pb_ah)?, &pb_ah),
        commute_dual: cond(&qb.mul(&qa)?, &qa.mul(&qb)?),
        dual_absorb: cond(&qb.mul(&qa_bh)?, &qa_bh),
        absorb_left: cond(&pa.mul(&bbh_ah)?, &bbh_ah),
        absorb_right: cond(&pb.mul(&aha_b)?, &aha_b),
        sandwich_left: cond(&pa.mul(&bbh_pa)?, &bbh_pa),
        sandwich_right: cond(&pb.mul(&aha_pb)?, &aha_pb),
    })
}
