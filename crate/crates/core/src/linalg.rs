//! Dense Gaussian elimination over any [`Field`].
//!
//! Desk-scale systems only (a few dozen unknowns), so no pivot heuristics
//! beyond picking the first nonzero entry.

use crate::error::{Error, Result};
use crate::scalar::Field;


/// Solves `A x = b` for square `A`, returning `x`.
///
/// `a` is row-major, `n x n`. Fails if the matrix is singular.
pub fn solve<T: Field>(mut a: Vec<Vec<T>>, mut b: Vec<T>) -> Result<Vec<T>> {
    let n = b.len();
    assert!(a.len() == n && a.iter().all(|r| r.len() == n));
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or_else(|| Error::Other("singular linear system".into()))?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = T::one() / a[col][col].clone();
        for c in col..n {
            a[col][c] = a[col][c].clone() * inv.clone();
        }
        b[col] = b[col].clone() * inv;
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in col..n {
                    a[r][c] = a[r][c].clone() - f.clone() * a[col][c].clone();
                }
                b[r] = b[r].clone() - f * b[col].clone();
            }
        }
    }
    Ok(b)
}
