//! Seeded search for pairs on which the reverse-order-law
//! characterizations disagree.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{rol_report, RolReport};
use crate::error::{Result, TensorError};
use crate::policy::NumericPolicy;
use crate::random;
use crate::tensor::{DenseTensor, ModeShape};
use crate::unfolding::{dematricize, matricize, matrix_svd};

/// Structured families of random `(A, B)` pairs. `A` takes the searched
/// shape `I x J` and `B` its transpose `J x I`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// Gaussian entries.
    Dense,
    /// Gaussian factors with trailing singular values zeroed.
    RankDeficient,
    /// One factor unitary, the other of random rank. Needs equal row and
    /// column counts.
    UnitaryFactor,
    /// Diagonal factors with random zero patterns.
    Diagonal,
    /// `A = U (D1 + D2) V*` split into two orthogonal parts and
    /// `B = V D3 W*` sharing its singular basis.
    OrthogonalSum,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::Dense,
        Family::RankDeficient,
        Family::UnitaryFactor,
        Family::Diagonal,
        Family::OrthogonalSum,
    ];

    pub fn applies_to(self, shape: &ModeShape) -> bool {
        match self {
            Family::UnitaryFactor => shape.row_count() == shape.col_count(),
            _ => true,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Dense => "dense",
            Family::RankDeficient => "rank-deficient",
            Family::UnitaryFactor => "unitary-factor",
            Family::Diagonal => "diagonal",
            Family::OrthogonalSum => "orthogonal-sum",
        }
    }

    /// Draws one pair; `A` has `shape`, `B` its transpose.
    pub fn sample<R: Rng + ?Sized>(
        self,
        rng: &mut R,
        shape: &ModeShape,
    ) -> Result<(DenseTensor, DenseTensor)> {
        let bt = shape.transposed();
        let (m, n) = (shape.row_count(), shape.col_count());
        let k = m.min(n);
        match self {
            Family::Dense => Ok((random::gaussian(rng, shape), random::gaussian(rng, &bt))),
            Family::RankDeficient => {
                let top = if k > 1 { k - 1 } else { 1 };
                let ra = rng.random_range(1..=top);
                let rb = rng.random_range(1..=top);
                Ok((
                    random::with_rank(rng, shape, ra)?,
                    random::with_rank(rng, &bt, rb)?,
                ))
            }
            Family::UnitaryFactor => {
                if m != n {
                    return Err(TensorError::InvalidArgument(format!(
                        "unitary-factor family needs equal row and column counts, got {shape}"
                    )));
                }
                let rank = rng.random_range(1..=k);
                let other = random::with_rank(rng, shape, rank)?;
                let u = random::unitary(rng, &[m])?.reshaped(bt.clone())?;
                if rng.random_bool(0.5) {
                    Ok((other, u))
                } else {
                    // A unitary on I x J, B of random rank on J x I.
                    let a = random::unitary(rng, &[m])?.reshaped(shape.clone())?;
                    Ok((a, random::with_rank(rng, &bt, rank)?))
                }
            }
            Family::Diagonal => {
                let draw = |rng: &mut R| -> Vec<Complex64> {
                    (0..k)
                        .map(|_| {
                            if rng.random_bool(0.3) {
                                Complex64::default()
                            } else {
                                random::complex_normal(rng)
                            }
                        })
                        .collect()
                };
                let da = draw(rng);
                let db = draw(rng);
                Ok((
                    DenseTensor::diagonal_from(shape.row_dims(), shape.col_dims(), &da)?,
                    DenseTensor::diagonal_from(bt.row_dims(), bt.col_dims(), &db)?,
                ))
            }
            Family::OrthogonalSum => {
                let u = unitary_on(rng, shape.row_dims())?;
                let v = unitary_on(rng, shape.col_dims())?;
                let w = unitary_on(rng, shape.row_dims())?;
                let split = rng.random_range(0..=k);
                let positive = |rng: &mut R| 0.5 + rng.random::<f64>() * 2.0;
                let mut d1 = vec![Complex64::default(); k];
                let mut d2 = vec![Complex64::default(); k];
                for i in 0..k {
                    if rng.random_bool(0.25) {
                        continue;
                    }
                    let target = if i < split { &mut d1 } else { &mut d2 };
                    target[i] = Complex64::new(positive(rng), 0.0);
                }
                let d3: Vec<Complex64> = (0..k)
                    .map(|_| {
                        if rng.random_bool(0.25) {
                            Complex64::default()
                        } else {
                            Complex64::new(positive(rng), 0.0)
                        }
                    })
                    .collect();
                let part = |d: &[Complex64]| -> Result<DenseTensor> {
                    let dt = DenseTensor::diagonal_from(shape.row_dims(), shape.col_dims(), d)?;
                    u.mul(&dt)?.mul(&v.conj_transpose())
                };
                let a = part(&d1)?.add(&part(&d2)?)?;
                let dt3 = DenseTensor::diagonal_from(bt.row_dims(), bt.col_dims(), &d3)?;
                let b = v.mul(&dt3)?.mul(&w.conj_transpose())?;
                Ok((a, b))
            }
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

fn unitary_on<R: Rng + ?Sized>(rng: &mut R, dims: &[usize]) -> Result<DenseTensor> {
    if dims.is_empty() {
        return DenseTensor::from_real(&[], &[], &[1.0]);
    }
    let shape = ModeShape::square(dims)?;
    let g = random::gaussian(rng, &shape);
    dematricize(&matrix_svd(&matricize(&g))?.u, &shape)
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct FamilyCounts {
    pub trials: usize,
    pub direct_true: usize,
    pub direct_false: usize,
    pub converse_failures: usize,
}

/// A pair on which the report contradicted itself.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub trial: usize,
    pub family: Family,
    /// Name of the disagreeing group, or `"direct=>commute"`.
    pub kind: &'static str,
    pub a: DenseTensor,
    pub b: DenseTensor,
    pub report: RolReport,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FuzzSummary {
    pub trials: usize,
    pub direct_true: usize,
    pub direct_false: usize,
    /// Pairs with commuting projectors on which the law still fails.
    pub converse_failures: usize,
    pub violations: usize,
    pub per_family: BTreeMap<Family, FamilyCounts>,
    pub first_violation: Option<Violation>,
    /// First pair exhibiting `commute && !direct`, if any was drawn.
    pub converse_example: Option<(DenseTensor, DenseTensor)>,
}

impl FuzzSummary {
    fn new() -> Self {
        Self {
            trials: 0,
            direct_true: 0,
            direct_false: 0,
            converse_failures: 0,
            violations: 0,
            per_family: BTreeMap::new(),
            first_violation: None,
            converse_example: None,
        }
    }

    fn record(
        &mut self,
        trial: usize,
        family: Family,
        a: DenseTensor,
        b: DenseTensor,
        report: RolReport,
    ) {
        self.trials += 1;
        let counts = self.per_family.entry(family).or_default();
        counts.trials += 1;
        if report.direct.holds {
            self.direct_true += 1;
            counts.direct_true += 1;
        } else {
            self.direct_false += 1;
            counts.direct_false += 1;
        }
        let converse = report.commute.holds && !report.direct.holds;
        if converse {
            self.converse_failures += 1;
            counts.converse_failures += 1;
        }
        let kind = report
            .first_disagreement()
            .or_else(|| (!report.sufficiency_holds()).then_some("direct=>commute"));
        if let Some(kind) = kind {
            self.violations += 1;
            if self.first_violation.is_none() {
                self.first_violation = Some(Violation {
                    trial,
                    family,
                    kind,
                    a,
                    b,
                    report,
                });
                return;
            }
        }
        if converse && self.converse_example.is_none() {
            self.converse_example = Some((a, b));
        }
    }
}

/// Independent generator for trial `trial`: stream `trial` of the ChaCha
/// generator keyed by `seed`.
fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

/// Runs `trials` pairs cycling through the families applicable to `shape`.
pub fn fuzz_search(
    shape: &ModeShape,
    trials: usize,
    seed: u64,
    policy: &NumericPolicy,
) -> Result<FuzzSummary> {
    let families: Vec<Family> = Family::ALL
        .into_iter()
        .filter(|f| f.applies_to(shape))
        .collect();
    run(trials, seed, policy, |i| {
        (families[i % families.len()], shape)
    })
}

/// Runs `trials` pairs from a single family.
pub fn fuzz_family(
    shape: &ModeShape,
    family: Family,
    trials: usize,
    seed: u64,
    policy: &NumericPolicy,
) -> Result<FuzzSummary> {
    if !family.applies_to(shape) {
        return Err(TensorError::InvalidArgument(format!(
            "family {family} does not apply to shape {shape}"
        )));
    }
    run(trials, seed, policy, |_| (family, shape))
}

fn run<'s>(
    trials: usize,
    seed: u64,
    policy: &NumericPolicy,
    pick: impl Fn(usize) -> (Family, &'s ModeShape),
) -> Result<FuzzSummary> {
    if trials == 0 {
        return Err(TensorError::InvalidArgument(
            "trials must be at least 1".into(),
        ));
    }
    let mut summary = FuzzSummary::new();
    for trial in 0..trials {
        let (family, shape) = pick(trial);
        let mut rng = trial_rng(seed, trial);
        let (a, b) = family.sample(&mut rng, shape)?;
        let report = rol_report(&a, &b, policy)?;
        summary.record(trial, family, a, b, report);
    }
    Ok(summary)
}
