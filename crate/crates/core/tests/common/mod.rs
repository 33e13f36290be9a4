#![allow(dead_code)]

use std::path::PathBuf;

use mptensor::{Complex64, DenseTensor, ModeShape};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type M2 = [[f64; 2]; 2];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn shape(rows: &[usize], cols: &[usize]) -> ModeShape {
    ModeShape::new(rows, cols).unwrap()
}

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

/// `[2,2] x [2,2]` tensor from four printed 2x2 slices: slice `(k,l)` holds
/// `t[i,j,k,l]` with `i` the printed row and `j` the printed column.
pub fn from_slices(s11: M2, s21: M2, s12: M2, s22: M2) -> DenseTensor {
    DenseTensor::from_fn(shape(&[2, 2], &[2, 2]), |ix| {
        let s = match (ix[2], ix[3]) {
            (0, 0) => &s11,
            (1, 0) => &s21,
            (0, 1) => &s12,
            _ => &s22,
        };
        Complex64::new(s[ix[0]][ix[1]], 0.0)
    })
    .unwrap()
}

const Z: M2 = [[0., 0.], [0., 0.]];

/// The printed 4th-order tensor whose inverse is worked out in full.
pub fn example_a() -> DenseTensor {
    from_slices(
        [[0., 0.], [0., 1.]],
        [[1., -1.], [0., 0.]],
        [[0., 1.], [0., 0.]],
        [[1., 0.], [-1., 0.]],
    )
}

/// Its printed Moore-Penrose inverse.
pub fn example_a_pinv() -> DenseTensor {
    from_slices(
        [[0., 1.], [1., 0.]],
        [[0., 1.], [1., -1.]],
        [[0., 1.], [0., 0.]],
        [[1., 0.], [0., 0.]],
    )
}

/// Its printed conjugate transpose.
pub fn example_a_adjoint() -> DenseTensor {
    from_slices(
        [[0., 0.], [1., 1.]],
        [[0., 0.], [0., -1.]],
        [[0., 1.], [-1., 0.]],
        [[1., 0.], [0., 0.]],
    )
}

/// The printed triple showing that only cyclic trace permutations are allowed.
pub fn trace_triple() -> (DenseTensor, DenseTensor, DenseTensor) {
    let a = from_slices(
        [[0., 0.], [1., 2.]],
        [[1., 2.], [-1., 0.]],
        [[1., 3.], [2., 1.]],
        Z,
    );
    let b = from_slices(
        [[0., 0.], [0., -1.]],
        Z,
        [[0., 0.], [0., 1.]],
        [[0., 0.], [0., 1.]],
    );
    let c = from_slices(
        [[1., -1.], [2., 1.]],
        [[1., 1.], [1., 2.]],
        [[0., 0.], [0., 1.]],
        [[1., 3.], [1., 2.]],
    );
    (a, b, c)
}

/// Printed `C * B * A` and `B * A * C` for the triple.
pub fn trace_triple_products() -> (DenseTensor, DenseTensor) {
    let cba = from_slices(
        [[2., 6.], [2., 4.]],
        [[1., 3.], [1., 2.]],
        [[3., 9.], [3., 6.]],
        Z,
    );
    let bac = from_slices(
        [[0., 0.], [0., 1.]],
        [[0., 0.], [0., 6.]],
        Z,
        [[0., 0.], [0., 12.]],
    );
    (cba, bac)
}

/// All multi-indices of `dims`, last index fastest.
pub fn multi_indices(dims: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &d in dims {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..d).map(move |x| {
                    let mut p = prefix.clone();
                    p.push(x);
                    p
                })
            })
            .collect();
    }
    out
}

fn cat(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().chain(b).copied().collect()
}

/// Einstein product by explicit summation over multi-indices.
pub fn naive_einstein(a: &DenseTensor, b: &DenseTensor) -> DenseTensor {
    assert_eq!(a.shape().col_dims(), b.shape().row_dims());
    let ks = multi_indices(a.shape().col_dims());
    DenseTensor::from_fn(shape(a.shape().row_dims(), b.shape().col_dims()), |ix| {
        let (i, l) = ix.split_at(a.shape().row_dims().len());
        ks.iter()
            .map(|k| a.get(&cat(i, k)).unwrap() * b.get(&cat(k, l)).unwrap())
            .sum()
    })
    .unwrap()
}

/// `sum_i a[i, i]` over row multi-indices.
pub fn naive_trace(a: &DenseTensor) -> Complex64 {
    multi_indices(a.shape().row_dims())
        .iter()
        .map(|i| a.get(&cat(i, i)).unwrap())
        .sum()
}

pub fn max_abs_diff(x: &DenseTensor, y: &DenseTensor) -> f64 {
    assert_eq!(x.shape(), y.shape());
    x.entries()
        .iter()
        .zip(y.entries())
        .map(|(p, q)| (p - q).norm())
        .fold(0.0, f64::max)
}

pub fn diff_norm(x: &DenseTensor, y: &DenseTensor) -> f64 {
    x.sub(y).unwrap().frobenius_norm()
}

/// Row-major square matrix of the flattened tensor.
pub fn rows_of(a: &DenseTensor) -> Vec<Vec<Complex64>> {
    let n = a.shape().col_count();
    a.entries().chunks(n).map(|r| r.to_vec()).collect()
}

/// Gauss-Jordan inverse with partial pivoting; `None` if singular.
pub fn gauss_jordan_inverse(m: &[Vec<Complex64>]) -> Option<Vec<Vec<Complex64>>> {
    let n = m.len();
    let mut a: Vec<Vec<Complex64>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| Complex64::new(f64::from(u8::from(i == j)), 0.0)));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).max_by(|&x, &y| a[x][col].norm().total_cmp(&a[y][col].norm()))?;
        if a[piv][col].norm() < 1e-12 {
            return None;
        }
        a.swap(col, piv);
        let p = a[col][col];
        for x in a[col].iter_mut() {
            *x /= p;
        }
        for r in 0..n {
            if r != col {
                let f = a[r][col];
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(pivot_row) {
                    *x -= f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Exact determinant of an integer matrix (fraction-free elimination).
pub fn bareiss_det(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    let mut a = m.to_vec();
    let mut sign = 1;
    let mut prev = 1i64;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}
