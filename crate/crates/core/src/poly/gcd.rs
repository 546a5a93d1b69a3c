//! Exact greatest common divisors in one and two variables.

use super::dense::{self, Dense};
use super::multi::{ExactPoly, Monomial};
use super::resultant::bivariate_parts;
use super::scalar::ExactComplex;
use crate::error::{Error, Result};

/// Converts a polynomial depending only on `z_var` to dense form.
pub(crate) fn to_dense(p: &ExactPoly, var: usize) -> Result<Dense> {
    if !p.depends_only_on(var) {
        return Err(Error::Unsupported(format!(
            "expected a polynomial in z{} only",
            var + 1
        )));
    }
    let deg = p.degree_in(var).unwrap_or(0) as usize;
    let mut out = vec![ExactComplex::zero(); deg + 1];
    for (m, c) in p.terms() {
        out[m.0[var] as usize] = c.clone();
    }
    Ok(dense::trim(out))
}

/// Monic gcd of two one-variable polynomials by the Euclidean algorithm.
pub fn gcd_univariate(p: &ExactPoly, q: &ExactPoly) -> Result<ExactPoly> {
    if p.nvars() != 1 || q.nvars() != 1 {
        return Err(Error::Unsupported(
            "gcd_univariate expects one-variable polynomials".into(),
        ));
    }
    let g = dense::gcd_monic(&to_dense(p, 0)?, &to_dense(q, 0)?).ok_or(Error::ZeroPolynomial)?;
    ExactPoly::from_univariate(1, 0, &g)
}

/// Bivariate polynomial as coefficients in `z2` over ℚ(i)[z1].
type Bi = Vec<Dense>;

fn bi_trim(mut p: Bi) -> Bi {
    while p.last().is_some_and(|c| c.is_empty()) {
        p.pop();
    }
    p
}

fn bi_content(p: &Bi) -> Dense {
    p.iter()
        .filter(|c| !c.is_empty())
        .fold(None, |acc: Option<Dense>, c| match acc {
            None => Some(dense::monic(c)),
            Some(g) => dense::gcd_monic(&g, c),
        })
        .unwrap_or_default()
}

fn bi_primitive(p: &Bi) -> Bi {
    let c = bi_content(p);
    p.iter()
        .map(|x| {
            if x.is_empty() {
                Vec::new()
            } else {
                dense::exact_div(x, &c).expect("content divides")
            }
        })
        .collect()
}

/// Pseudo-remainder of `a` by `b` in `z2`.
fn bi_prem(a: &Bi, b: &Bi) -> Bi {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.clone();
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        let mut next: Bi = r.iter().map(|c| dense::mul(c, lb)).collect();
        for (i, bc) in b.iter().enumerate() {
            next[i + shift] = dense::sub(&next[i + shift], &dense::mul(&lr, bc));
        }
        r = bi_trim(next);
    }
    r
}

fn to_bi(p: &ExactPoly) -> Bi {
    bi_trim(bivariate_parts(p, 1))
}

fn from_bi(p: &Bi) -> ExactPoly {
    let terms = p.iter().enumerate().flat_map(|(j, c)| {
        c.iter()
            .enumerate()
            .map(move |(i, v)| (Monomial(vec![i as u32, j as u32]), v.clone()))
    });
    ExactPoly::from_terms(2, terms.collect::<Vec<_>>()).expect("two variables")
}

/// Gcd of two bivariate polynomials, normalized so that the lexicographically
/// largest term has coefficient 1. Returns `None` if both are zero.
pub fn gcd_bivariate(p: &ExactPoly, q: &ExactPoly) -> Option<ExactPoly> {
    let (a, b) = (to_bi(p), to_bi(q));
    if a.is_empty() && b.is_empty() {
        return None;
    }
    if a.is_empty() {
        return Some(normalize(q));
    }
    if b.is_empty() {
        return Some(normalize(p));
    }
    let content = dense::gcd_monic(&bi_content(&a), &bi_content(&b)).expect("nonzero");
    let (mut x, mut y) = (bi_primitive(&a), bi_primitive(&b));
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while y.len() > 1 {
        let r = bi_prem(&x, &y);
        x = y;
        y = if r.is_empty() { r } else { bi_primitive(&r) };
        if y.is_empty() {
            break;
        }
    }
    // y nonzero of degree 0 in z2: primitive parts are coprime
    let prim: Bi = if y.is_empty() { x } else { vec![vec![ExactComplex::one()]] };
    let g: Bi = prim.iter().map(|c| dense::mul(c, &content)).collect();
    Some(normalize(&from_bi(&g)))
}

fn normalize(p: &ExactPoly) -> ExactPoly {
    match p.terms().iter().next_back() {
        Some((_, lead)) => p.scale(&lead.inv().expect("stored coefficients are nonzero")),
        None => p.clone(),
    }
}

/// Exact quotient `p / g` of bivariate polynomials; errors when `g` does not divide `p`.
pub fn divide_bivariate(p: &ExactPoly, g: &ExactPoly) -> Result<ExactPoly> {
    if g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let b = to_bi(g);
    let db = b.len() - 1;
    let mut r = to_bi(p);
    let mut q: Bi = vec![Vec::new(); r.len().saturating_sub(db).max(1)];
    while r.len() > db {
        let dr = r.len() - 1;
        let t = dense::exact_div(&r[dr], &b[db])
            .ok_or_else(|| Error::Factorization(format!("{g} does not divide {p}")))?;
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] = dense::sub(&r[i + shift], &dense::mul(&t, bc));
        }
        q[shift] = t;
        r = bi_trim(r);
    }
    if !r.is_empty() {
        return Err(Error::Factorization(format!("{g} does not divide {p}")));
    }
    Ok(from_bi(&bi_trim(q)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uni(cs: &[(i64, i64)]) -> ExactPoly {
        let cs: Vec<_> = cs.iter().map(|&(n, d)| ExactComplex::from_ratio(n, d)).collect();
        ExactPoly::from_univariate(1, 0, &cs).unwrap()
    }

    fn z(i: usize) -> ExactPoly {
        ExactPoly::var(2, i).unwrap()
    }

    fn k(n: i64, d: i64) -> ExactPoly {
        ExactPoly::constant(2, ExactComplex::from_ratio(n, d))
    }

    #[test]
    fn univariate_examples() {
        let z2 = uni(&[(0, 1), (0, 1), (1, 1)]);
        let z3 = uni(&[(0, 1), (0, 1), (0, 1), (1, 1)]);
        assert_eq!(gcd_univariate(&z2, &z3).unwrap(), z2);
        let a = uni(&[(-1, 2), (1, 1)]);
        let b = uni(&[(-1, 3), (1, 1)]);
        assert_eq!(gcd_univariate(&a, &b).unwrap(), uni(&[(1, 1)]));
        let zero = ExactPoly::zero(1);
        assert!(matches!(gcd_univariate(&zero, &zero), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn bivariate_common_line() {
        let p = z(0).mul(&z(1));
        let q = z(0).mul(&z(1).sub(&k(2, 1)));
        assert_eq!(gcd_bivariate(&p, &q).unwrap(), z(0));
    }

    #[test]
    fn bivariate_mixed_factor() {
        let f = z(0).sub(&z(1).pow(2)).add(&k(1, 3));
        let p = f.mul(&z(0).sub(&k(2, 1)));
        let q = f.mul(&z(1).add(&z(0)));
        let g = gcd_bivariate(&p, &q).unwrap();
        assert_eq!(g, normalize(&f));
        let quotient = divide_bivariate(&p, &g).unwrap();
        assert_eq!(quotient.mul(&g), p);
    }

    #[test]
    fn coprime_pair_has_unit_gcd() {
        let g = gcd_bivariate(&z(0), &z(1)).unwrap();
        assert_eq!(g, ExactPoly::one(2));
        assert!(divide_bivariate(&z(0), &z(1)).is_err());
    }
}
