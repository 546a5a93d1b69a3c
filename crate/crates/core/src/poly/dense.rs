//! Dense univariate polynomials over exact complex rationals.
//!
//! Coefficients are stored lowest degree first; the zero polynomial is the
//! empty vector.

use num_complex::Complex64;

use super::scalar::ExactComplex;

pub type Dense = Vec<ExactComplex>;

pub fn trim(mut p: Dense) -> Dense {
    while p.last().is_some_and(ExactComplex::is_zero) {
        p.pop();
    }
    p
}

pub fn degree(p: &[ExactComplex]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn add(a: &[ExactComplex], b: &[ExactComplex]) -> Dense {
    let n = a.len().max(b.len());
    let zero = ExactComplex::zero();
    trim(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&zero) + b.get(i).unwrap_or(&zero))
            .collect(),
    )
}

pub fn sub(a: &[ExactComplex], b: &[ExactComplex]) -> Dense {
    let n = a.len().max(b.len());
    let zero = ExactComplex::zero();
    trim(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero))
            .collect(),
    )
}

pub fn mul(a: &[ExactComplex], b: &[ExactComplex]) -> Dense {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![ExactComplex::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    trim(out)
}

pub fn scale(p: &[ExactComplex], c: &ExactComplex) -> Dense {
    trim(p.iter().map(|x| x * c).collect())
}

pub fn derivative(p: &[ExactComplex]) -> Dense {
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * &ExactComplex::from_integer(k as i64))
            .collect(),
    )
}

pub fn monic(p: &[ExactComplex]) -> Dense {
    let p = trim(p.to_vec());
    match p.last() {
        Some(lead) => {
            let inv = lead.inv().expect("nonzero leading coefficient");
            scale(&p, &inv)
        }
        None => p,
    }
}

/// Quotient and remainder; panics on a zero divisor.
pub fn divrem(a: &[ExactComplex], b: &[ExactComplex]) -> (Dense, Dense) {
    let b = trim(b.to_vec());
    let db = degree(&b).expect("division by zero polynomial");
    let lead_inv = b[db].inv().expect("nonzero leading coefficient");
    let mut r = trim(a.to_vec());
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![ExactComplex::zero(); r.len() - db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let factor = &r[dr] * &lead_inv;
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] = &r[i + shift] - &(&factor * bc);
        }
        q[shift] = factor;
        r = trim(r);
    }
    (trim(q), r)
}

/// Monic gcd by the Euclidean algorithm; `None` if both inputs are zero.
pub fn gcd_monic(a: &[ExactComplex], b: &[ExactComplex]) -> Option<Dense> {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    if x.is_empty() && y.is_empty() {
        return None;
    }
    while !y.is_empty() {
        let (_, r) = divrem(&x, &y);
        x = y;
        y = r;
    }
    Some(monic(&x))
}

/// `a / b` when `b` divides `a` exactly.
pub fn exact_div(a: &[ExactComplex], b: &[ExactComplex]) -> Option<Dense> {
    let (q, r) = divrem(a, b);
    r.is_empty().then_some(q)
}

pub fn eval(p: &[ExactComplex], x: &ExactComplex) -> ExactComplex {
    p.iter()
        .rev()
        .fold(ExactComplex::zero(), |acc, c| &(&acc * x) + c)
}

pub fn to_complex(p: &[ExactComplex]) -> Vec<Complex64> {
    p.iter().map(ExactComplex::to_complex).collect()
}

/// Squarefree decomposition (Yun): returns `(factor, multiplicity)` pairs with
/// monic, pairwise coprime, squarefree factors of positive degree.
pub fn squarefree_decomposition(p: &[ExactComplex]) -> Vec<(Dense, usize)> {
    let p = monic(p);
    if degree(&p).unwrap_or(0) == 0 {
        return Vec::new();
    }
    let dp = derivative(&p);
    let a0 = gcd_monic(&p, &dp).expect("nonzero");
    let mut b = exact_div(&p, &a0).expect("gcd divides");
    let mut c = exact_div(&dp, &a0).expect("gcd divides derivative");
    let mut d = sub(&c, &derivative(&b));
    let mut out = Vec::new();
    let mut k = 1;
    while degree(&b).unwrap_or(0) > 0 {
        let a = gcd_monic(&b, &d).expect("b nonzero");
        if degree(&a).unwrap_or(0) > 0 {
            out.push((a.clone(), k));
        }
        b = exact_div(&b, &a).expect("gcd divides");
        c = exact_div(&d, &a).expect("gcd divides");
        d = sub(&c, &derivative(&b));
        k += 1;
    }
    out
}

/// Squarefree part `p / gcd(p, p')`, monic.
pub fn squarefree_part(p: &[ExactComplex]) -> Dense {
    let p = monic(p);
    if degree(&p).unwrap_or(0) == 0 {
        return p;
    }
    let g = gcd_monic(&p, &derivative(&p)).expect("nonzero");
    monic(&exact_div(&p, &g).expect("gcd divides"))
}

/// Interpolating polynomial through `(x_i, y_i)` by Newton divided differences.
pub fn interpolate(xs: &[ExactComplex], ys: &[ExactComplex]) -> Dense {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len();
    let mut coef = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = &coef[i] - &coef[i - 1];
            let den = &xs[i] - &xs[i - j];
            coef[i] = &num / &den;
        }
    }
    // expand the Newton form from the innermost coefficient outwards
    let mut p: Dense = Vec::new();
    for i in (0..n).rev() {
        let shifted = mul(&p, &[-&xs[i], ExactComplex::one()]);
        p = add(&shifted, &[coef[i].clone()]);
    }
    trim(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> ExactComplex {
        ExactComplex::from_integer(n)
    }

    fn poly(cs: &[i64]) -> Dense {
        trim(cs.iter().map(|&c| q(c)).collect())
    }

    #[test]
    fn gcd_of_products() {
        // z(z-2) and z(z-3)
        let a = poly(&[0, -2, 1]);
        let b = poly(&[0, -3, 1]);
        assert_eq!(gcd_monic(&a, &b).unwrap(), poly(&[0, 1]));
        assert!(gcd_monic(&[], &[]).is_none());
    }

    #[test]
    fn divrem_identity() {
        let a = poly(&[5, 0, 3, 1]);
        let b = poly(&[1, 2]);
        let (qt, r) = divrem(&a, &b);
        assert_eq!(add(&mul(&qt, &b), &r), a);
        assert!(degree(&r).unwrap_or(0) < 1);
    }

    #[test]
    fn yun_multiplicities() {
        // (z-1)^3 (z+2)^2 z
        let mut p = poly(&[0, 1]);
        for _ in 0..3 {
            p = mul(&p, &poly(&[-1, 1]));
        }
        for _ in 0..2 {
            p = mul(&p, &poly(&[2, 1]));
        }
        let dec = squarefree_decomposition(&p);
        let mults: Vec<(usize, usize)> = dec.iter().map(|(f, k)| (degree(f).unwrap(), *k)).collect();
        assert_eq!(mults, vec![(1, 1), (1, 2), (1, 3)]);
        assert_eq!(degree(&squarefree_part(&p)), Some(3));
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let p = poly(&[3, -1, 0, 2]);
        let xs: Vec<_> = (0..4).map(q).collect();
        let ys: Vec<_> = xs.iter().map(|x| eval(&p, x)).collect();
        assert_eq!(interpolate(&xs, &ys), p);
    }
}
