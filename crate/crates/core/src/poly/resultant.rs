//! Sylvester resultants of bivariate exact polynomials.

use super::dense::{self, Dense};
use super::multi::{ExactPoly, Monomial};
use super::scalar::ExactComplex;
use crate::error::{Error, Result};

/// Determinant by fraction-exact Gaussian elimination.
pub fn determinant(mut m: Vec<Vec<ExactComplex>>) -> ExactComplex {
    let n = m.len();
    let mut det = ExactComplex::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return ExactComplex::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let inv = m[col][col].inv().expect("nonzero pivot");
        det = &det * &m[col][col];
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] * &inv;
            for c in col..n {
                let t = &factor * &m[col][c];
                m[r][c] = &m[r][c] - &t;
            }
        }
    }
    det
}

/// Sylvester matrix of two univariate coefficient lists with formal degrees
/// `len - 1` (lowest degree first).
fn sylvester(p: &[ExactComplex], q: &[ExactComplex]) -> Vec<Vec<ExactComplex>> {
    let dp = p.len() - 1;
    let dq = q.len() - 1;
    let n = dp + dq;
    let mut m = vec![vec![ExactComplex::zero(); n]; n];
    for row in 0..dq {
        for (k, c) in p.iter().rev().enumerate() {
            m[row][row + k] = c.clone();
        }
    }
    for row in 0..dp {
        for (k, c) in q.iter().rev().enumerate() {
            m[dq + row][row + k] = c.clone();
        }
    }
    m
}

/// Coefficients of `p` in `z_var` as dense polynomials in the other variable
/// of a bivariate polynomial.
pub(crate) fn bivariate_parts(p: &ExactPoly, var: usize) -> Vec<Dense> {
    let kept = 1 - var;
    let deg = p.degree_in(var).unwrap_or(0) as usize;
    let mut parts = vec![Vec::new(); deg + 1];
    for (m, c) in p.terms() {
        let part: &mut Dense = &mut parts[m.0[var] as usize];
        let k = m.0[kept] as usize;
        if part.len() <= k {
            part.resize(k + 1, ExactComplex::zero());
        }
        part[k] = c.clone();
    }
    parts.into_iter().map(dense::trim).collect()
}

/// Resultant of bivariate `p`, `q` with respect to `z_eliminate`, as a dense
/// polynomial in the remaining variable.
pub fn resultant_dense(p: &ExactPoly, q: &ExactPoly, eliminate: usize) -> Result<Dense> {
    if p.nvars() != 2 || q.nvars() != 2 {
        return Err(Error::Unsupported(
            "resultants are defined for two-variable polynomials".into(),
        ));
    }
    if p.nvars() != q.nvars() {
        return Err(Error::NvarsMismatch(p.nvars(), q.nvars()));
    }
    if eliminate >= 2 {
        return Err(Error::VariableOutOfRange {
            index: eliminate,
            nvars: 2,
        });
    }
    if p.is_zero() || q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let pp = bivariate_parts(p, eliminate);
    let qq = bivariate_parts(q, eliminate);
    let dp = pp.len() - 1;
    let dq = qq.len() - 1;
    if dp == 0 && dq == 0 {
        return Err(Error::NotEliminable(eliminate));
    }
    let kept_deg = |parts: &[Dense]| parts.iter().map(|d| d.len().saturating_sub(1)).max().unwrap_or(0);
    let bound = dq * kept_deg(&pp) + dp * kept_deg(&qq);
    let xs: Vec<ExactComplex> = (0..=bound as i64).map(ExactComplex::from_integer).collect();
    let ys: Vec<ExactComplex> = xs
        .iter()
        .map(|x| {
            let pv: Vec<_> = pp.iter().map(|c| dense::eval(c, x)).collect();
            let qv: Vec<_> = qq.iter().map(|c| dense::eval(c, x)).collect();
            determinant(sylvester(&pv, &qv))
        })
        .collect();
    Ok(dense::interpolate(&xs, &ys))
}

/// Resultant with respect to `z_eliminate`, returned as a one-variable
/// polynomial in the kept variable.
///
/// The result vanishes identically exactly when `p` and `q` share a factor of
/// positive degree in the eliminated variable.
pub fn resultant(p: &ExactPoly, q: &ExactPoly, eliminate: usize) -> Result<ExactPoly> {
    let r = resultant_dense(p, q, eliminate)?;
    ExactPoly::from_terms(
        1,
        r.into_iter()
            .enumerate()
            .map(|(k, c)| (Monomial(vec![k as u32]), c)),
    )
}
