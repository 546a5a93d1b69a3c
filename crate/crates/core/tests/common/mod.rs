#![allow(dead_code)]

use fredholm_toeplitz::poly::{ExactComplex, ExactPoly, SymbolTuple};

pub fn z(nvars: usize, i: usize) -> ExactPoly {
    ExactPoly::var(nvars, i).unwrap()
}

pub fn k(nvars: usize, a: i64, b: i64) -> ExactPoly {
    ExactPoly::constant(nvars, ExactComplex::from_ratio(a, b))
}

pub fn tuple(symbols: Vec<ExactPoly>) -> SymbolTuple {
    SymbolTuple::new(symbols).unwrap()
}

/// Pairs in two variables with their expected index.
pub fn index_fixtures() -> Vec<(&'static str, SymbolTuple, i64)> {
    let z1 = z(2, 0);
    let z2 = z(2, 1);
    vec![
        ("(z1, z2)", tuple(vec![z1.clone(), z2.clone()]), -1),
        ("(z1^2, z2^3)", tuple(vec![z1.pow(2), z2.pow(3)]), -6),
        ("(z1^2 - 1/4, z2)", tuple(vec![z1.pow(2).sub(&k(2, 1, 4)), z2.clone()]), -2),
        ("(z1 - z2, z1 z2)", tuple(vec![z1.sub(&z2), z1.mul(&z2)]), -2),
        ("(z1 - 2, z2)", tuple(vec![z1.sub(&k(2, 2, 1)), z2.clone()]), 0),
        (
            "((z1 - 2) z2, (z1 - 2)(z2 - 1/2))",
            tuple(vec![
                z1.sub(&k(2, 2, 1)).mul(&z2),
                z1.sub(&k(2, 2, 1)).mul(&z2.sub(&k(2, 1, 2))),
            ]),
            -1,
        ),
    ]
}

/// Pairs whose symbols share a zero on the boundary region.
pub fn non_fredholm_fixtures() -> Vec<(&'static str, SymbolTuple)> {
    let z1 = z(2, 0);
    let z2 = z(2, 1);
    vec![
        ("(z1, z1)", tuple(vec![z1.clone(), z1.clone()])),
        ("(z1 z2, z1 (z2 - 2))", tuple(vec![z1.mul(&z2), z1.mul(&z2.sub(&k(2, 2, 1)))])),
    ]
}
