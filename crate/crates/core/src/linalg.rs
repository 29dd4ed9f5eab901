//! Exact Gaussian elimination over any [`Field`].

use crate::error::{AlgebraError, Result};
use crate::ring::Field;

/// Solves `matrix · x = rhs` for square `matrix` (row-major). Pivots on the
/// first nonzero entry of each column; every step is exact.
pub fn solve<T: Field>(mut matrix: Vec<Vec<T>>, mut rhs: Vec<T>) -> Result<Vec<T>> {
    let n = matrix.len();
    assert_eq!(rhs.len(), n, "right-hand side length mismatch");
    assert!(matrix.iter().all(|row| row.len() == n), "matrix must be square");

    for col in 0..n {
        let pivot_row = (col..n)
            .find(|&r| !matrix[r][col].is_zero())
            .ok_or(AlgebraError::Singular)?;
        matrix.swap(col, pivot_row);
        rhs.swap(col, pivot_row);

        let inv = matrix[col][col].try_inv()?;
        for entry in matrix[col][col..].iter_mut() {
            *entry = entry.clone() * inv.clone();
        }
        rhs[col] = rhs[col].clone() * inv;

        for r in 0..n {
            if r == col || matrix[r][col].is_zero() {
                continue;
            }
            let factor = matrix[r][col].clone();
            let pivot_row = matrix[col][col..].to_vec();
            for (entry, p) in matrix[r][col..].iter_mut().zip(pivot_row) {
                *entry = entry.clone() - factor.clone() * p;
            }
            rhs[r] = rhs[r].clone() - factor * rhs[col].clone();
        }
    }
    Ok(rhs)
}
