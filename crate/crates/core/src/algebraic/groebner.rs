//! Reduced Gröbner bases over ℚ(i) in graded reverse lexicographic order.

use std::cmp::Ordering;

use crate::poly::{ExactComplex, ExactPoly, Monomial};

/// Graded reverse lexicographic comparison.
pub fn grevlex(a: &Monomial, b: &Monomial) -> Ordering {
    a.total_degree().cmp(&b.total_degree()).then_with(|| {
        for (x, y) in a.0.iter().zip(&b.0).rev() {
            if x != y {
                // the smaller exponent in the last differing variable wins
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

/// Leading monomial and coefficient; `None` for the zero polynomial.
pub fn leading(p: &ExactPoly) -> Option<(Monomial, ExactComplex)> {
    p.terms()
        .iter()
        .max_by(|a, b| grevlex(a.0, b.0))
        .map(|(m, c)| (m.clone(), c.clone()))
}

fn monic(p: &ExactPoly) -> ExactPoly {
    match leading(p) {
        Some((_, c)) => p.scale(&c.inv().expect("nonzero")),
        None => p.clone(),
    }
}

/// Full reduction of `p` modulo `basis` (every term is reduced).
pub fn normal_form(p: &ExactPoly, basis: &[ExactPoly]) -> ExactPoly {
    let leads: Vec<(Monomial, ExactComplex)> = basis.iter().filter_map(leading).collect();
    let nvars = p.nvars();
    let mut rest = p.clone();
    let mut out = ExactPoly::zero(nvars);
    while let Some((m, c)) = leading(&rest) {
        let divisor = leads.iter().position(|(lm, _)| lm.divides(&m));
        match divisor {
            Some(i) => {
                let (lm, lc) = &leads[i];
                let shift = m.div(lm).expect("divides");
                let factor = &c / lc;
                rest = rest.sub(&basis[i].mul_monomial(&shift).scale(&factor));
            }
            None => {
                let term = ExactPoly::from_terms(nvars, [(m, c)]).expect("same nvars");
                rest = rest.sub(&term);
                out = out.add(&term);
            }
        }
    }
    out
}

fn s_polynomial(f: &ExactPoly, g: &ExactPoly) -> ExactPoly {
    let (mf, cf) = leading(f).expect("nonzero");
    let (mg, cg) = leading(g).expect("nonzero");
    let l = mf.lcm(&mg);
    let a = f.mul_monomial(&l.div(&mf).expect("lcm")).scale(&cf.inv().expect("nonzero"));
    let b = g.mul_monomial(&l.div(&mg).expect("lcm")).scale(&cg.inv().expect("nonzero"));
    a.sub(&b)
}

/// Reduced, monic Gröbner basis of the ideal generated by `gens` (Buchberger
/// with the coprime-leading-monomial criterion). The zero ideal gives an
/// empty basis.
pub fn groebner_basis(gens: &[ExactPoly]) -> Vec<ExactPoly> {
    let mut basis: Vec<ExactPoly> = gens.iter().filter(|g| !g.is_zero()).map(monic).collect();
    let mut pairs: Vec<(usize, usize)> = (0..basis.len())
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .collect();
    while let Some((i, j)) = pairs.pop() {
        let (mi, _) = leading(&basis[i]).expect("nonzero");
        let (mj, _) = leading(&basis[j]).expect("nonzero");
        let coprime = mi.0.iter().zip(&mj.0).all(|(a, b)| *a == 0 || *b == 0);
        if coprime {
            continue;
        }
        let r = normal_form(&s_polynomial(&basis[i], &basis[j]), &basis);
        if !r.is_zero() {
            let k = basis.len();
            basis.push(monic(&r));
            pairs.extend((0..k).map(|i| (i, k)));
        }
    }
    reduce_basis(basis)
}

fn reduce_basis(basis: Vec<ExactPoly>) -> Vec<ExactPoly> {
    // drop elements whose leading monomial is divisible by another's
    let leads: Vec<Monomial> = basis.iter().map(|g| leading(g).expect("nonzero").0).collect();
    let mut keep: Vec<ExactPoly> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let redundant = leads.iter().enumerate().any(|(j, lj)| {
            j != i && lj.divides(&leads[i]) && (lj != &leads[i] || j < i)
        });
        if !redundant {
            keep.push(g.clone());
        }
    }
    let mut reduced = Vec::with_capacity(keep.len());
    for i in 0..keep.len() {
        let others: Vec<ExactPoly> = keep
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let (lm, lc) = leading(&keep[i]).expect("nonzero");
        let tail = keep[i].sub(&ExactPoly::from_terms(keep[i].nvars(), [(lm.clone(), lc.clone())]).expect("same nvars"));
        let nf = normal_form(&tail, &others);
        let head = ExactPoly::from_terms(keep[i].nvars(), [(lm, lc)]).expect("same nvars");
        reduced.push(monic(&head.add(&nf)));
    }
    reduced.sort_by(|a, b| grevlex(&leading(a).expect("nonzero").0, &leading(b).expect("nonzero").0));
    reduced
}
