//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

mod common;

use std::process::ExitCode;

use common::*;
use mptensor::random::{gaussian, unitary, with_rank};
use mptensor::rol::{converse_counterexample, fuzz_family, sandwich_pinv, unitary_rol, Family};
use mptensor::tensor::{classify, kronecker, trace};
use mptensor::{
    matricize, penrose_residuals, pinv, pinv_sum, rol_report, tsvd, Complex64, DenseMatrix,
    DenseTensor, NumericPolicy, TensorError,
};
use rand::Rng;

type Outcome = (bool, String);
type Criterion = (&'static str, fn() -> Outcome);

fn policy() -> NumericPolicy {
    NumericPolicy::default()
}

fn example_golden() -> Outcome {
    let a = example_a();
    let x = pinv(&a, &policy()).unwrap();
    let penrose = penrose_residuals(&a, &x).unwrap().max();
    let id = DenseTensor::identity(&[2, 2]).unwrap();
    let ax = max_abs_diff(&a.mul(&x).unwrap(), &id);
    let xa = max_abs_diff(&x.mul(&a).unwrap(), &id);
    let normal = classify(&a, &policy()).normal;
    let gap = diff_norm(
        &a.mul(&a.conj_transpose()).unwrap(),
        &a.conj_transpose().mul(&a).unwrap(),
    );
    let printed = max_abs_diff(&x, &example_a_pinv());
    (
        penrose <= 1e-12 && ax <= 1e-10 && xa <= 1e-10 && !normal && gap > 0.5 && printed <= 1e-12,
        format!("penrose {penrose:.1e}, |AX-I| {ax:.1e}, |XA-I| {xa:.1e}, normal {normal}, |AA*-A*A| {gap:.3}, |X-printed| {printed:.1e}"),
    )
}

fn trace_permutation() -> Outcome {
    let (a, b, c) = trace_triple();
    let t = |x: &DenseTensor, y: &DenseTensor, z: &DenseTensor| {
        trace(&x.mul(y).unwrap().mul(z).unwrap()).unwrap()
    };
    let (abc, cba, bac) = (t(&a, &b, &c), t(&c, &b, &a), t(&b, &a, &c));
    let ok = (abc - Complex64::new(0.0, 0.0)).norm() <= 1e-12
        && (cba - Complex64::new(12.0, 0.0)).norm() <= 1e-12
        && (bac - Complex64::new(12.0, 0.0)).norm() <= 1e-12;
    (
        ok,
        format!(
            "tr(ABC) = {}, tr(CBA) = {}, tr(BAC) = {}",
            abc.re, cba.re, bac.re
        ),
    )
}

fn penrose_suite() -> Outcome {
    let shapes: [(&[usize], &[usize]); 4] = [
        (&[2], &[3]),
        (&[2, 2], &[2]),
        (&[2, 2], &[2, 2]),
        (&[3, 2], &[2, 2]),
    ];
    let mut r = rng(1001);
    let mut worst = 0.0f64;
    let mut deficient = 0;
    for trial in 0..100 {
        let (i, j) = shapes[trial % shapes.len()];
        let s = shape(i, j);
        let k = s.row_count().min(s.col_count());
        let a = if trial % 2 == 0 {
            gaussian(&mut r, &s)
        } else {
            deficient += 1;
            let rank = r.random_range(1..k);
            with_rank(&mut r, &s, rank).unwrap()
        };
        let x = pinv(&a, &policy()).unwrap();
        worst = worst.max(penrose_residuals(&a, &x).unwrap().max());
    }
    (
        worst <= 1e-10,
        format!("100 tensors, 4 shapes, {deficient} rank-deficient, worst residual {worst:.1e}"),
    )
}

fn triple_loop(a: &DenseMatrix, b: &DenseMatrix) -> DenseMatrix {
    let mut c = DenseMatrix::zeros(a.rows(), b.cols());
    for i in 0..a.rows() {
        for j in 0..b.cols() {
            let mut s = Complex64::default();
            for k in 0..a.cols() {
                s += a.get(i, k) * b.get(k, j);
            }
            c.set(i, j, s);
        }
    }
    c
}

fn homomorphism() -> Outcome {
    let triples: [(&[usize], &[usize], &[usize]); 5] = [
        (&[2], &[3], &[2]),
        (&[2, 2], &[2, 2], &[2, 2]),
        (&[3, 2], &[2, 2], &[3]),
        (&[2], &[2, 2], &[1, 3]),
        (&[2, 1, 2], &[3], &[2, 2]),
    ];
    let mut r = rng(1002);
    let mut worst = 0.0f64;
    for n in 0..100 {
        let (i, j, l) = triples[n % triples.len()];
        let a = gaussian(&mut r, &shape(i, j));
        let b = gaussian(&mut r, &shape(j, l));
        let lhs = matricize(&a.mul(&b).unwrap());
        let rhs = triple_loop(&matricize(&a), &matricize(&b));
        let scale = a.frobenius_norm() * b.frobenius_norm();
        worst = worst.max(lhs.sub(&rhs).unwrap().frobenius_norm() / scale);
    }
    (
        worst <= 1e-13,
        format!("100 pairs, worst relative residual {worst:.1e}"),
    )
}

fn rol_equivalence() -> Outcome {
    let p = policy().with_eq_tol(1e-8).unwrap();
    let mut total = 0;
    let mut violations = 0;
    let mut direct_true = 0;
    let mut detail = Vec::new();
    for s in [shape(&[2, 2], &[2, 2]), shape(&[2], &[3])] {
        for family in Family::ALL.into_iter().filter(|f| f.applies_to(&s)) {
            let summary = fuzz_family(&s, family, 200, 2024, &p).unwrap();
            total += summary.trials;
            violations += summary.violations;
            direct_true += summary.direct_true;
            if let Some(v) = &summary.first_violation {
                detail.push(format!("{s} {family}: {}", v.kind));
            }
        }
    }
    (
        violations == 0,
        format!("{total} pairs (200 per family and shape), {direct_true} satisfy the law, {violations} violations {detail:?}"),
    )
}

fn unitary_shortcut() -> Outcome {
    let p = policy();
    let mut r = rng(1006);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let rank = 2 + r.random_range(0..2);
        let a = with_rank(&mut r, &shape(&[3], &[2, 2]), rank).unwrap();
        let b = unitary(&mut r, &[2, 2]).unwrap();
        let direct = pinv(&a.mul(&b).unwrap(), &p).unwrap();
        let formula = b.conj_transpose().mul(&pinv(&a, &p).unwrap()).unwrap();
        let scale = direct.frobenius_norm().max(1.0);
        worst = worst.max(diff_norm(&direct, &formula) / scale);
        worst = worst.max(diff_norm(&direct, &unitary_rol(&a, &b, &p).unwrap()) / scale);

        let c = unitary(&mut r, &[3]).unwrap();
        let sandwich = c.mul(&a).unwrap().mul(&b).unwrap();
        let direct = pinv(&sandwich, &p).unwrap();
        let short = sandwich_pinv(&c, &a, &b, &p).unwrap();
        worst = worst.max(diff_norm(&direct, &short) / direct.frobenius_norm().max(1.0));
    }
    (
        worst <= 1e-10,
        format!("50 pairs and 50 sandwiches, worst relative residual {worst:.1e}"),
    )
}

fn orthogonal_sum() -> Outcome {
    let p = policy();
    let mut r = rng(1007);
    let mut worst = 0.0f64;
    for n in 0..20 {
        let s = if n % 2 == 0 {
            shape(&[2, 2], &[3])
        } else {
            shape(&[2, 2], &[2, 2])
        };
        let a = gaussian(&mut r, &s);
        let f = tsvd(&a).unwrap();
        let sigma = f.d.diagonal();
        let split = 1 + n % (sigma.len() - 1);
        let part = |keep: &dyn Fn(usize) -> bool| {
            let d: Vec<Complex64> = sigma
                .iter()
                .enumerate()
                .map(|(k, &x)| if keep(k) { x } else { Complex64::default() })
                .collect();
            let dk = DenseTensor::diagonal_from(s.row_dims(), s.col_dims(), &d).unwrap();
            f.u.mul(&dk).unwrap().mul(&f.v.conj_transpose()).unwrap()
        };
        let parts = [part(&|k| k < split), part(&|k| k >= split)];
        let sum = parts[0].add(&parts[1]).unwrap();
        let direct = pinv(&sum, &p).unwrap();
        let split_inv = pinv_sum(&parts, &p).unwrap();
        worst = worst.max(diff_norm(&direct, &split_inv) / direct.frobenius_norm().max(1.0));
    }
    let a = gaussian(&mut r, &shape(&[2], &[2]));
    let rejected = matches!(
        pinv_sum(&[a.clone(), a.scale(Complex64::new(2.0, 0.0))], &p),
        Err(TensorError::NotOrthogonal { .. })
    );
    (
        worst <= 1e-10 && rejected,
        format!("20 tensors, worst relative residual {worst:.1e}, non-orthogonal input rejected: {rejected}"),
    )
}

fn converse_failure() -> Outcome {
    let (a, b) = converse_counterexample();
    let rep = rol_report(&a, &b, &policy()).unwrap();
    (
        rep.commute.residual <= 1e-10 && rep.direct.residual >= 0.1,
        format!(
            "commute residual {:.1e}, direct residual {:.3}",
            rep.commute.residual, rep.direct.residual
        ),
    )
}

fn trace_identities() -> Outcome {
    let mut r = rng(1009);
    let dims: [&[usize]; 3] = [&[2, 2], &[3], &[2, 1, 2]];
    let rel = |x: Complex64, y: Complex64| (x - y).norm() / x.norm().max(y.norm()).max(1.0);
    let (mut cs, mut cyc, mut conj, mut kron) = (0usize, 0.0f64, 0.0f64, 0.0f64);
    for n in 0..1000 {
        let d = dims[n % dims.len()];
        let s = shape(d, d);
        let (a, b, c) = (
            gaussian(&mut r, &s),
            gaussian(&mut r, &s),
            gaussian(&mut r, &s),
        );
        let t = |x: &DenseTensor, y: &DenseTensor| trace(&x.mul(y).unwrap()).unwrap();
        let ab = t(&a.conj_transpose(), &b);
        if ab.norm_sqr() > t(&a.conj_transpose(), &a).re * t(&b.conj_transpose(), &b).re + 1e-12 {
            cs += 1;
        }
        let abc = t(&a.mul(&b).unwrap(), &c);
        cyc = cyc
            .max(rel(abc, t(&b.mul(&c).unwrap(), &a)))
            .max(rel(abc, t(&c.mul(&a).unwrap(), &b)));
        conj = conj.max(rel(
            trace(&a.conj_transpose()).unwrap(),
            trace(&a).unwrap().conj(),
        ));
        let small = shape(&[2], &[2]);
        let e = gaussian(&mut r, &small);
        let k = trace(&kronecker(&a, &e).unwrap()).unwrap();
        kron = kron.max(rel(k, trace(&a).unwrap() * trace(&e).unwrap()));
    }
    (
        cs == 0 && cyc <= 1e-12 && conj <= 1e-12 && kron <= 1e-12,
        format!("1000 pairs: Cauchy-Schwarz violations {cs}, cyclic {cyc:.1e}, conjugate {conj:.1e}, Kronecker {kron:.1e}"),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("golden 4th-order inverse", example_golden),
        ("trace permutation triple", trace_permutation),
        ("Penrose equations", penrose_suite),
        ("matricization homomorphism", homomorphism),
        ("reverse-order-law equivalences", rol_equivalence),
        ("unitary shortcut", unitary_shortcut),
        ("orthogonal sum", orthogonal_sum),
        ("converse failure", converse_failure),
        ("Cauchy-Schwarz and trace identities", trace_identities),
    ];
    let mut failed = 0;
    for (n, (name, check)) in criteria.iter().enumerate() {
        let (ok, detail) = check();
        if !ok {
            failed += 1;
        }
        println!(
            "{} {}. {name}: {detail}",
            if ok { "PASS" } else { "FAIL" },
            n + 1
        );
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
