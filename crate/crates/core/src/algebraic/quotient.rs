//! Finite-dimensional quotient algebras `ℚ(i)[z] / I` and their multiplication
//! matrices.

use super::groebner::{grevlex, groebner_basis, leading, normal_form};
use crate::error::{Error, Result};
use crate::poly::dense::{self, Dense};
use crate::poly::{ExactComplex, ExactPoly, Monomial};

/// Quotient by a zero-dimensional ideal, with the standard monomials as basis.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub basis: Vec<ExactPoly>,
    pub standard: Vec<Monomial>,
}

impl Quotient {
    pub fn new(gens: &[ExactPoly]) -> Result<Self> {
        let nvars = gens.first().map(|g| g.nvars()).unwrap_or(0);
        let basis = groebner_basis(gens);
        let leads: Vec<Monomial> = basis.iter().filter_map(leading).map(|(m, _)| m).collect();
        // finiteness: every variable needs a pure-power leading monomial
        let mut bounds = Vec::with_capacity(nvars);
        for v in 0..nvars {
            let pure = leads
                .iter()
                .filter(|m| m.0.iter().enumerate().all(|(i, &e)| i == v || e == 0))
                .map(|m| m.0[v])
                .min();
            match pure {
                Some(b) => bounds.push(b),
                None => {
                    return Err(Error::NotZeroDimensional(format!(
                        "no pure power of z{} among the leading monomials",
                        v + 1
                    )))
                }
            }
        }
        let mut standard = Vec::new();
        let mut e = vec![0u32; nvars];
        if !leads.iter().any(|m| m.total_degree() == 0) {
            loop {
                let m = Monomial(e.clone());
                if !leads.iter().any(|l| l.divides(&m)) {
                    standard.push(m);
                }
                // odometer over the box bounded by the pure powers
                let mut i = 0;
                while i < nvars {
                    e[i] += 1;
                    if e[i] < bounds[i] {
                        break;
                    }
                    e[i] = 0;
                    i += 1;
                }
                if i == nvars {
                    break;
                }
            }
        }
        standard.sort_by(grevlex);
        Ok(Self { basis, standard })
    }

    pub fn dim(&self) -> usize {
        self.standard.len()
    }

    /// Matrix of multiplication by `f` in the standard-monomial basis
    /// (column `j` holds the normal form of `f · s_j`).
    pub fn multiplication_matrix(&self, f: &ExactPoly) -> Vec<Vec<ExactComplex>> {
        let n = self.dim();
        let mut m = vec![vec![ExactComplex::zero(); n]; n];
        for (j, s) in self.standard.iter().enumerate() {
            let nf = normal_form(&f.mul_monomial(s), &self.basis);
            for (mono, c) in nf.terms() {
                let i = self
                    .standard
                    .iter()
                    .position(|x| x == mono)
                    .expect("normal forms are spanned by standard monomials");
                m[i][j] = c.clone();
            }
        }
        m
    }
}

/// Characteristic polynomial `det(xI − A)` (lowest degree first) by the
/// Faddeev–LeVerrier recursion in exact arithmetic.
pub fn characteristic_polynomial(a: &[Vec<ExactComplex>]) -> Dense {
    let n = a.len();
    let mut coeffs = vec![ExactComplex::zero(); n + 1];
    coeffs[n] = ExactComplex::one();
    let mut mk = vec![vec![ExactComplex::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = matmul(a, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] = &row[i] + &coeffs[n - k + 1];
        }
        mk = next;
        let am = matmul(a, &mk);
        let trace = (0..n).fold(ExactComplex::zero(), |acc, i| &acc + &am[i][i]);
        coeffs[n - k] = -(&trace / &ExactComplex::from_integer(k as i64));
    }
    dense::trim(coeffs)
}

fn matmul(a: &[Vec<ExactComplex>], b: &[Vec<ExactComplex>]) -> Vec<Vec<ExactComplex>> {
    let n = a.len();
    let mut out = vec![vec![ExactComplex::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    out[i][j] = &out[i][j] + &(&a[i][k] * &b[k][j]);
                }
            }
        }
    }
    out
}
