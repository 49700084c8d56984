//! Dense integer matrices: just what the triangular basis changes need.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{internal, Result};

pub type Matrix = Vec<Vec<BigInt>>;

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

pub fn is_identity(m: &Matrix) -> bool {
    m.iter().enumerate().all(|(i, row)| {
        row.len() == m.len()
            && row
                .iter()
                .enumerate()
                .all(|(j, x)| if i == j { x.is_one() } else { x.is_zero() })
    })
}

pub fn multiply(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    let mut out = vec![vec![BigInt::zero(); m]; n];
    for (i, row) in a.iter().enumerate() {
        for (l, x) in row.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b[l].iter().enumerate() {
                if !y.is_zero() {
                    out[i][j] += x * y;
                }
            }
        }
    }
    out
}

/// Inverse of an upper unitriangular matrix by back-substitution. Anything
/// below the diagonal or a diagonal entry other than 1 is an internal error.
pub fn unitriangular_inverse(u: &Matrix, what: &str) -> Result<Matrix> {
    let n = u.len();
    for (i, row) in u.iter().enumerate() {
        if row.len() != n {
            return internal(format!("{what}: matrix is not square"));
        }
        if !row[i].is_one() {
            return internal(format!("{what}: diagonal entry {i} is {}, not 1", row[i]));
        }
        if row[..i].iter().any(|x| !x.is_zero()) {
            return internal(format!("{what}: nonzero entry below the diagonal in row {i}"));
        }
    }
    let mut x = identity(n);
    #[allow(clippy::needless_range_loop)]
    for i in (0..n).rev() {
        for j in i + 1..n {
            let mut acc = BigInt::zero();
            for m in i + 1..=j {
                if !u[i][m].is_zero() && !x[m][j].is_zero() {
                    acc += &u[i][m] * &x[m][j];
                }
            }
            x[i][j] = -acc;
        }
    }
    Ok(x)
}
