use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::numerical_rank;

/// Checks that the column space of `Σ T_i T_i*` equals `Σ col-space(T_i)` for
/// square matrices of equal size, comparing ranks of `Σ T_i T_i*`,
/// `[T_1 … T_n]` and `[Σ T_i T_i*, T_1 … T_n]`.
pub fn range_sum_check(matrices: &[DMatrix<Complex64>], rank_tolerance: f64) -> Result<bool> {
    if !(rank_tolerance > 0.0) {
        return Err(Error::InvalidTolerance(rank_tolerance));
    }
    let Some(first) = matrices.first() else {
        return Err(Error::ShapeMismatch("no matrices given".into()));
    };
    let n = first.nrows();
    if let Some(bad) = matrices.iter().find(|m| m.nrows() != n || m.ncols() != n) {
        return Err(Error::ShapeMismatch(format!(
            "expected {n}x{n} matrices, found {}x{}",
            bad.nrows(),
            bad.ncols()
        )));
    }
    let gram = matrices
        .iter()
        .fold(DMatrix::zeros(n, n), |acc, t| acc + t * t.adjoint());
    let mut joined = DMatrix::zeros(n, n * matrices.len());
    for (i, t) in matrices.iter().enumerate() {
        joined.columns_mut(i * n, n).copy_from(t);
    }
    let mut both = DMatrix::zeros(n, n * (matrices.len() + 1));
    both.columns_mut(0, n).copy_from(&gram);
    both.columns_mut(n, n * matrices.len()).copy_from(&joined);
    let r_gram = numerical_rank(&gram, rank_tolerance);
    let r_sum = numerical_rank(&joined, rank_tolerance);
    let r_both = numerical_rank(&both, rank_tolerance);
    Ok(r_gram == r_sum && r_sum == r_both)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_zero() {
        let id = DMatrix::<Complex64>::identity(4, 4);
        let zero = DMatrix::<Complex64>::zeros(4, 4);
        assert!(range_sum_check(&[id, zero], 1e-8).unwrap());
    }

    #[test]
    fn nilpotent_block() {
        let j = DMatrix::<Complex64>::from_fn(5, 5, |r, c| {
            if c == r + 1 { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) }
        });
        assert!(range_sum_check(&[j.clone(), j], 1e-8).unwrap());
    }

    #[test]
    fn size_mismatch() {
        let a = DMatrix::<Complex64>::identity(3, 3);
        let b = DMatrix::<Complex64>::identity(4, 4);
        assert!(range_sum_check(&[a.clone(), b], 1e-8).is_err());
        assert!(range_sum_check(&[a], -1.0).is_err());
    }
}
