//! Toeplitz indices of trigonometric symbols, the product formula for
//! tensor tuples, and tuples of symbols in one shared variable.

use std::collections::BTreeSet;

use nalgebra::DMatrix;
use serde::Serialize;

use super::TrigPoly;
use crate::cert::{as_condition_check, univariate_symbols, BoundaryCertificate, CertConfig, CertVerdict};
use crate::error::{Error, Result};
use crate::koszul::{homology_sweep, Estimate, HomologyDims, KoszulConfig};
use crate::linalg::singular_values;
use crate::oracle::{winding_number, OracleConfig};
use crate::poly::SymbolTuple;

/// Truncation sizes used for the numerical invertibility check.
const INVERTIBILITY_SIZES: [usize; 2] = [32, 64];
const INVERTIBILITY_SIGMA: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FactorIndex {
    pub fredholm: bool,
    /// `None` when the symbol vanishes on the circle.
    pub index: Option<i64>,
    /// Heuristic: Fredholm of index 0 with truncated sections bounded below.
    pub invertible_flag: bool,
}

/// Smallest singular value of the `n × n` section `[c_{i−j}]`.
fn section_sigma_min(f: &TrigPoly, n: usize) -> f64 {
    let m = DMatrix::from_fn(n, n, |i, j| f.coeff(i as i64 - j as i64));
    singular_values(&m).last().copied().unwrap_or(0.0)
}

/// Fredholmness and index `−winding` of the Toeplitz operator with symbol `f`.
pub fn trig_toeplitz_index(f: &TrigPoly) -> Result<FactorIndex> {
    let (p, shift) = f.analytic_part()?;
    let scale: f64 = f.coeffs().values().map(|c| c.to_complex().norm()).sum();
    let mut cfg = OracleConfig::default();
    let mut outcome = winding_number(&p, 1.0, &cfg);
    if let Err(Error::ContourVanishing { min }) = outcome {
        if min > 1e-9 * scale {
            // near-vanishing but not zero: retry with a much finer rule
            cfg.quadrature_points = 1 << 14;
            outcome = winding_number(&p, 1.0, &cfg);
        }
    }
    match outcome {
        Ok(w) => {
            let index = -(w + shift);
            let invertible_flag =
                index == 0 && INVERTIBILITY_SIZES.iter().all(|&n| section_sigma_min(f, n) > INVERTIBILITY_SIGMA);
            Ok(FactorIndex {
                fredholm: true,
                index: Some(index),
                invertible_flag,
            })
        }
        Err(Error::ContourVanishing { min }) if min <= 1e-9 * scale => Ok(FactorIndex {
            fredholm: false,
            index: None,
            invertible_flag: false,
        }),
        Err(Error::ContourVanishing { min }) => Err(Error::NotCertifiable(format!(
            "symbol {f} nearly vanishes on the circle (min sampled modulus {min:e})"
        ))),
        Err(e) => Err(e),
    }
}

/// A one-variable symbol attached to a coordinate of the polydisc.
#[derive(Debug, Clone, PartialEq)]
pub struct TensorFactor {
    pub var: usize,
    pub symbol: TrigPoly,
}

impl TensorFactor {
    /// Factors attached to the variables `0, 1, …` in order.
    pub fn sequential(symbols: Vec<TrigPoly>) -> Vec<Self> {
        symbols
            .into_iter()
            .enumerate()
            .map(|(var, symbol)| Self { var, symbol })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum TupleIndex {
    Value(i64),
    #[serde(serialize_with = "serialize_undefined")]
    Undefined,
}

fn serialize_undefined<S: serde::Serializer>(s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str("undefined")
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TensorIndexReport {
    pub per_factor: Vec<FactorIndex>,
    pub tuple_fredholm: bool,
    pub tuple_index: TupleIndex,
    pub notes: Vec<String>,
}

/// Index of `(T_{f_1}, …, T_{f_n})` with `f_i` a symbol in `z_{v_i}` alone and
/// distinct `v_i`. The tuple is Fredholm iff every factor is; its index is
/// `(−1)^(n+1) ∏ ind T_{f_i}` when no factor is invertible, and 0 when some
/// factor is invertible, since then the Koszul complex is exact.
pub fn tensor_tuple_index(factors: &[TensorFactor]) -> Result<TensorIndexReport> {
    if factors.len() < 2 {
        return Err(Error::Unsupported(format!(
            "tensor tuples need at least 2 factors, got {}",
            factors.len()
        )));
    }
    let mut vars = BTreeSet::new();
    for f in factors {
        if !vars.insert(f.var) {
            return Err(Error::Unsupported(format!("variable z{} is used by two factors", f.var + 1)));
        }
    }
    let per_factor: Vec<FactorIndex> = factors.iter().map(|f| trig_toeplitz_index(&f.symbol)).collect::<Result<_>>()?;
    let mut notes = Vec::new();
    let tuple_fredholm = per_factor.iter().all(|f| f.fredholm);
    let tuple_index = if !tuple_fredholm {
        TupleIndex::Undefined
    } else if per_factor.iter().any(|f| f.invertible_flag) {
        notes.push(
            "a factor is invertible (numerical check); index 0 is taken from exactness of the Koszul complex, outside the product formula's hypothesis"
                .into(),
        );
        TupleIndex::Value(0)
    } else {
        let n = factors.len() as u32;
        let sign = if (n + 1) % 2 == 0 { 1 } else { -1 };
        TupleIndex::Value(sign * per_factor.iter().map(|f| f.index.expect("fredholm")).product::<i64>())
    };
    Ok(TensorIndexReport {
        per_factor,
        tuple_fredholm,
        tuple_index,
        notes,
    })
}

/// Product formula for an analytic tuple whose symbols depend on distinct
/// single variables; `None` if the variables are not separated.
pub fn separated_tuple_index(tuple: &SymbolTuple) -> Result<Option<TensorIndexReport>> {
    let Some(vars) = tuple.separated_variables() else {
        return Ok(None);
    };
    if tuple.len() < 2 {
        return Ok(None);
    }
    let factors = tuple
        .symbols()
        .iter()
        .zip(vars)
        .map(|(p, var)| Ok(TensorFactor { var, symbol: TrigPoly::from_analytic(p, var)? }))
        .collect::<Result<Vec<_>>>()?;
    tensor_tuple_index(&factors).map(Some)
}

#[derive(Debug, Clone, Serialize)]
pub struct DiscIndexReport {
    pub index: i64,
    pub certificate: BoundaryCertificate,
    /// Windowed homology of the pair, when the tuple has two symbols.
    pub koszul: Option<HomologyDims>,
}

/// Annulus inner radii tried for the lower-bound condition.
const ANNULUS_SCHEDULE: [f64; 3] = [0.5, 0.75, 0.9];
const DISC_CAPS: std::ops::RangeInclusive<u32> = 24..=26;

/// Index of a Fredholm tuple of analytic symbols in one shared variable on
/// the Hardy space of the disc, which is always 0. Fredholmness is certified
/// by a lower bound of `Σ |f_i|²` on an annulus `s ≤ |z| ≤ 1`. For pairs the
/// windowed Koszul homology is computed as a cross-check and a stabilized
/// nonzero Euler characteristic is an error.
pub fn disc_tuple_index(tuple: &SymbolTuple, cfg: &CertConfig) -> Result<DiscIndexReport> {
    let symbols = univariate_symbols(tuple)?;
    let flat = SymbolTuple::new(symbols)?;
    let mut last = None;
    for s in ANNULUS_SCHEDULE {
        let cert = as_condition_check(&flat, s, cfg)?;
        if cert.verdict == CertVerdict::Certified {
            last = Some(cert);
            break;
        }
        last = Some(cert);
    }
    let certificate = last.expect("nonempty schedule");
    match certificate.verdict {
        CertVerdict::Certified => {}
        CertVerdict::Failed => {
            return Err(Error::NotFredholm(format!(
                "symbols have a common zero near the circle (r = {})",
                certificate.r
            )))
        }
        CertVerdict::Inconclusive => {
            return Err(Error::NotCertifiable("annulus lower bound inconclusive".into()))
        }
    }
    let koszul = if flat.len() == 2 {
        let dims = homology_sweep(&flat, DISC_CAPS, &KoszulConfig::default())?;
        if let Estimate::Value(v) = dims.index_estimate {
            if v != 0 {
                return Err(Error::Oracle(format!("windowed Koszul index {v} differs from 0")));
            }
        }
        Some(dims)
    } else {
        None
    };
    Ok(DiscIndexReport {
        index: 0,
        certificate,
        koszul,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{ExactComplex, ExactPoly};

    fn c(n: i64) -> ExactComplex {
        ExactComplex::from_integer(n)
    }

    #[test]
    fn factor_examples() {
        let f = trig_toeplitz_index(&TrigPoly::monomial(1)).unwrap();
        assert_eq!((f.fredholm, f.index, f.invertible_flag), (true, Some(-1), false));
        let f = trig_toeplitz_index(&TrigPoly::monomial(-1)).unwrap();
        assert_eq!((f.fredholm, f.index, f.invertible_flag), (true, Some(1), false));
        let f = trig_toeplitz_index(&TrigPoly::new([(0, c(2)), (1, c(1))])).unwrap();
        assert_eq!((f.fredholm, f.index, f.invertible_flag), (true, Some(0), true));
        let f = trig_toeplitz_index(&TrigPoly::new([(0, c(1)), (1, c(-1))])).unwrap();
        assert!(!f.fredholm);
    }

    #[test]
    fn product_formula_examples() {
        let r = tensor_tuple_index(&TensorFactor::sequential(vec![TrigPoly::monomial(2), TrigPoly::monomial(3)])).unwrap();
        assert_eq!(r.tuple_index, TupleIndex::Value(-6));
        let r = tensor_tuple_index(&TensorFactor::sequential(vec![TrigPoly::monomial(1), TrigPoly::monomial(1)])).unwrap();
        assert_eq!(r.tuple_index, TupleIndex::Value(-1));
        let r = tensor_tuple_index(&TensorFactor::sequential(vec![TrigPoly::monomial(1); 3])).unwrap();
        assert_eq!(r.tuple_index, TupleIndex::Value(-1));
    }

    #[test]
    fn invertible_factor_gives_zero() {
        let r = tensor_tuple_index(&TensorFactor::sequential(vec![
            TrigPoly::new([(0, c(2)), (1, c(1))]),
            TrigPoly::monomial(1),
        ]))
        .unwrap();
        assert_eq!(r.tuple_index, TupleIndex::Value(0));
        assert_eq!(r.notes.len(), 1);
    }

    #[test]
    fn factor_validation() {
        assert!(tensor_tuple_index(&TensorFactor::sequential(vec![TrigPoly::monomial(1)])).is_err());
        let f = TensorFactor { var: 0, symbol: TrigPoly::monomial(1) };
        assert!(tensor_tuple_index(&[f.clone(), f]).is_err());
    }

    #[test]
    fn disc_examples() {
        let z = ExactPoly::var(1, 0).unwrap();
        let half = ExactPoly::constant(1, ExactComplex::from_ratio(1, 2));
        let cfg = CertConfig::default();
        for t in [
            vec![z.clone(), z.sub(&half)],
            vec![z.pow(2), z.sub(&half)],
            vec![z.clone(), z.pow(2)],
        ] {
            let r = disc_tuple_index(&SymbolTuple::new(t).unwrap(), &cfg).unwrap();
            assert_eq!(r.index, 0);
            assert_eq!(r.koszul.unwrap().index_estimate, Estimate::Value(0));
        }
        let one = ExactPoly::one(1);
        let t = SymbolTuple::new(vec![z.sub(&one), z.pow(2).sub(&one)]).unwrap();
        assert!(matches!(disc_tuple_index(&t, &cfg), Err(Error::NotFredholm(_))));
    }

    #[test]
    fn separated_analytic_tuple() {
        let z1 = ExactPoly::var(2, 0).unwrap();
        let z2 = ExactPoly::var(2, 1).unwrap();
        let r = separated_tuple_index(&SymbolTuple::new(vec![z1.pow(2), z2.pow(3)]).unwrap()).unwrap().unwrap();
        assert_eq!(r.tuple_index, TupleIndex::Value(-6));
        let mixed = SymbolTuple::new(vec![z1.add(&z2), z2]).unwrap();
        assert!(separated_tuple_index(&mixed).unwrap().is_none());
    }
}
