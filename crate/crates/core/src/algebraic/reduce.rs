//! Division of a pair by its common factor.

use serde::Serialize;

use crate::cert::{zero_free_on_closed_polydisc, BoundaryCertificate, CertConfig, CertVerdict};
use crate::error::{Error, Result};
use crate::poly::{divide_bivariate, gcd_bivariate, ExactPoly, SymbolTuple};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GcdReduction {
    #[serde(serialize_with = "crate::poly::json::serialize_poly")]
    pub common_factor: ExactPoly,
    #[serde(serialize_with = "crate::poly::json::serialize_tuple")]
    pub reduced_tuple: SymbolTuple,
    pub factor_zero_free_on_closed_polydisc: bool,
    pub certificate: BoundaryCertificate,
}

/// Writes each symbol as `g · f̃_i` with `g` the gcd of the pair, and decides
/// whether `g` is zero-free on the closed bidisc. An inconclusive zero-freeness
/// search is an error.
pub fn gcd_reduce(tuple: &SymbolTuple, cfg: &CertConfig) -> Result<GcdReduction> {
    if tuple.len() != 2 || tuple.nvars() != 2 {
        return Err(Error::Unsupported("gcd_reduce expects a pair in two variables".into()));
    }
    let [f, g] = [&tuple.symbols()[0], &tuple.symbols()[1]];
    let d = gcd_bivariate(f, g).ok_or(Error::ZeroPolynomial)?;
    let reduced = vec![divide_bivariate(f, &d)?, divide_bivariate(g, &d)?];
    debug_assert_eq!(reduced[0].mul(&d), *f);
    let certificate = zero_free_on_closed_polydisc(&d, cfg)?;
    let zero_free = match certificate.verdict {
        CertVerdict::Certified => true,
        CertVerdict::Failed => false,
        CertVerdict::Inconclusive => {
            return Err(Error::NotCertifiable(format!(
                "could not decide whether {d} vanishes on the closed bidisc"
            )))
        }
    };
    Ok(GcdReduction {
        common_factor: d,
        reduced_tuple: SymbolTuple::new(reduced)?,
        factor_zero_free_on_closed_polydisc: zero_free,
        certificate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebraic::{algebraic_index, AlgebraicConfig};
    use crate::poly::ExactComplex;

    fn z(i: usize) -> ExactPoly {
        ExactPoly::var(2, i).unwrap()
    }

    fn k(a: i64, b: i64) -> ExactPoly {
        ExactPoly::constant(2, ExactComplex::from_ratio(a, b))
    }

    fn pair(f: ExactPoly, g: ExactPoly) -> SymbolTuple {
        SymbolTuple::new(vec![f, g]).unwrap()
    }

    #[test]
    fn invertible_factor() {
        let h = z(0).sub(&k(2, 1));
        let t = pair(h.mul(&z(1)), h.mul(&z(1).sub(&k(1, 2))));
        let red = gcd_reduce(&t, &CertConfig::default()).unwrap();
        assert_eq!(red.common_factor, h);
        assert!(red.factor_zero_free_on_closed_polydisc);
        assert_eq!(red.reduced_tuple.symbols(), &[z(1), z(1).sub(&k(1, 2))]);
        for (orig, r) in t.symbols().iter().zip(red.reduced_tuple.symbols()) {
            assert_eq!(&r.mul(&red.common_factor), orig);
        }
    }

    #[test]
    fn vanishing_factor() {
        let t = pair(z(0).mul(&z(1)), z(0).mul(&z(1).sub(&k(2, 1))));
        let red = gcd_reduce(&t, &CertConfig::default()).unwrap();
        assert!(!red.factor_zero_free_on_closed_polydisc);
        assert!(matches!(
            algebraic_index(&t, &AlgebraicConfig::default()),
            Err(Error::NotFredholm(_))
        ));
    }

    #[test]
    fn repeated_zero_free_symbol() {
        let p = z(0).add(&z(1)).sub(&k(3, 1));
        let t = pair(p.clone(), p);
        let red = gcd_reduce(&t, &CertConfig::default()).unwrap();
        assert_eq!(red.reduced_tuple.symbols(), &[ExactPoly::one(2), ExactPoly::one(2)]);
        assert_eq!(algebraic_index(&t, &AlgebraicConfig::default()).unwrap(), 0);
    }
}
