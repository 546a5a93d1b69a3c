//! Windowed homology of the truncated Koszul complex.
//!
//! Homology is measured on an observation window of cap `K`. Kernels are
//! computed on `K`-windows directly. Ranges are taken from a larger cofactor
//! window of cap `M = K + d + slack`, because a low-degree element of an ideal
//! may need high-degree cofactors; the part of that range lying in the
//! `K`-window is found from principal angles between the range and the
//! coordinate subspace of the `K`-window. Angles whose sine falls between the
//! two configured thresholds make the level ambiguous, and an ambiguous level
//! never contributes an index.

use std::ops::RangeInclusive;

use serde::{Serialize, Serializer};

use super::complex::{all_real, binomial, boundary_matrix, check_arity, KoszulConfig, KoszulTruncation};
use super::window::MonomialWindow;
use crate::error::{Error, Result};
use crate::linalg::{coordinate_subspace_sines, range_basis, rank_from_singular, singular_values, Scalar};
use crate::poly::{FloatPoly, SymbolTuple};

/// An integer backed by three agreeing truncation levels, or `Unstable`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Estimate {
    Value(i64),
    Unstable,
}

impl Estimate {
    pub fn value(self) -> Option<i64> {
        match self {
            Estimate::Value(v) => Some(v),
            Estimate::Unstable => None,
        }
    }
}

impl Serialize for Estimate {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Estimate::Value(v) => s.serialize_i64(*v),
            Estimate::Unstable => s.serialize_str("unstable"),
        }
    }
}

/// Homology dimensions at one truncation level.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LevelDims {
    /// Observation cap `K`.
    pub k: u32,
    /// Cofactor cap `M`.
    pub m: u32,
    /// `[h_0, …, h_m]`, `h_0` being the kernel of the first map.
    pub dims: Vec<usize>,
    /// Some principal angle fell between the in-range and out-of-range thresholds.
    pub ambiguous: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HomologyDims {
    /// Dimensions at the last level computed.
    pub dims: Vec<usize>,
    pub levels: Vec<LevelDims>,
    pub stabilized: bool,
    pub index_estimate: Estimate,
}

/// Alternating sum with the sign convention `−h_0 + h_1 − h_2` for two
/// symbols; in general the last dimension enters with sign `−1`.
pub fn euler_index(dims: &[usize]) -> i64 {
    let m = dims.len() - 1;
    dims.iter()
        .enumerate()
        .map(|(j, &h)| if (m - j) % 2 == 0 { -(h as i64) } else { h as i64 })
        .sum()
}

/// Count of sines at or below `lo`, count strictly between `lo` and `hi`.
fn classify_sines(sines: &[f64], lo: f64, hi: f64) -> (usize, usize) {
    let inside = sines.iter().filter(|&&s| s <= lo).count();
    let outside = sines.iter().filter(|&&s| s >= hi).count();
    (inside, sines.len() - inside - outside)
}

/// Row positions of the `K`-window copies inside `copies` stacked `M + d` windows.
fn observation_rows(big: &MonomialWindow, k: u32, copies: usize) -> Vec<usize> {
    let pos = big.sub_window_positions(k);
    (0..copies)
        .flat_map(|c| pos.iter().map(move |&p| c * big.len() + p))
        .collect()
}

/// `(dim of K-window part of Ran(d_j from M-windows), ambiguous count)`.
fn range_in_window<T: Scalar>(
    symbols: &[FloatPoly],
    nvars: usize,
    j: usize,
    k: u32,
    m: u32,
    d: u32,
    cfg: &KoszulConfig,
) -> Result<(usize, usize, usize)> {
    let src = MonomialWindow::new(nvars, m);
    let dst = MonomialWindow::new(nvars, m + d);
    let b = boundary_matrix::<T>(symbols, j, &src, &dst, cfg.max_columns)?;
    let q = range_basis(&b, cfg.rank_tolerance);
    let rows = observation_rows(&dst, k, binomial(symbols.len(), j));
    let sines = coordinate_subspace_sines(&q, &rows);
    let (inside, ambiguous) = classify_sines(&sines, cfg.in_range_sine, cfg.out_of_range_sine);
    Ok((inside, ambiguous, rows.len()))
}

fn level_dims_t<T: Scalar>(
    symbols: &[FloatPoly],
    nvars: usize,
    k: u32,
    m: u32,
    cfg: &KoszulConfig,
) -> Result<LevelDims> {
    let count = symbols.len();
    let d = symbols.iter().map(|p| p.max_var_degree()).max().unwrap_or(0);
    let wk = MonomialWindow::new(nvars, k);
    let wkd = MonomialWindow::new(nvars, k + d);
    let mut kernels = Vec::with_capacity(count + 1);
    for j in 0..count {
        let a = boundary_matrix::<T>(symbols, j + 1, &wk, &wkd, cfg.max_columns)?;
        let rank = rank_from_singular(&singular_values(&a), cfg.rank_tolerance);
        kernels.push(a.ncols() - rank);
    }
    kernels.push(wk.len());
    let mut dims = vec![kernels[0]];
    let mut ambiguous = false;
    for j in 1..=count {
        let (inside, amb, _) = range_in_window::<T>(symbols, nvars, j, k, m, d, cfg)?;
        ambiguous |= amb > 0;
        dims.push(kernels[j].saturating_sub(inside));
    }
    Ok(LevelDims {
        k,
        m,
        dims,
        ambiguous,
    })
}

fn cofactor_cap(tuple: &SymbolTuple, k: u32, cfg: &KoszulConfig) -> u32 {
    k + tuple.max_var_degree() + cfg.slack_for(tuple.nvars())
}

/// Homology dimensions at observation cap `k` with the default cofactor cap.
pub fn level_dims(tuple: &SymbolTuple, k: u32, cfg: &KoszulConfig) -> Result<LevelDims> {
    check_arity(tuple)?;
    cfg.validate()?;
    let symbols = tuple.to_float();
    let m = cofactor_cap(tuple, k, cfg);
    if all_real(&symbols) {
        level_dims_t::<f64>(&symbols, tuple.nvars(), k, m, cfg)
    } else {
        level_dims_t::<num_complex::Complex64>(&symbols, tuple.nvars(), k, m, cfg)
    }
}

fn summarize(levels: Vec<LevelDims>) -> HomologyDims {
    let tail = &levels[levels.len().saturating_sub(3)..];
    let stabilized = tail.len() == 3
        && tail.iter().all(|l| !l.ambiguous && l.dims == tail[0].dims);
    let dims = levels.last().map(|l| l.dims.clone()).unwrap_or_default();
    let index_estimate = if stabilized {
        Estimate::Value(euler_index(&dims))
    } else {
        Estimate::Unstable
    };
    HomologyDims {
        dims,
        levels,
        stabilized,
        index_estimate,
    }
}

/// Homology at caps `n`, `n+1`, `n+2` of the truncation; stabilized when all
/// three agree without ambiguity.
pub fn homology_dims(kt: &KoszulTruncation) -> Result<HomologyDims> {
    homology_sweep(&kt.tuple, kt.n..=kt.n + 2, &kt.config)
}

/// Homology over a range of observation caps; stabilized when the last three
/// levels agree without ambiguity.
pub fn homology_sweep(tuple: &SymbolTuple, caps: RangeInclusive<u32>, cfg: &KoszulConfig) -> Result<HomologyDims> {
    if caps.is_empty() {
        return Err(Error::Unsupported("empty truncation range".into()));
    }
    let levels = caps
        .map(|k| level_dims(tuple, k, cfg))
        .collect::<Result<Vec<_>>>()?;
    Ok(summarize(levels))
}

/// Codimension of the ideal in the observation window, per level.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CodimWindow {
    /// `(K, M, value)`, `value` absent when the level was ambiguous.
    pub levels: Vec<(u32, u32, Option<usize>)>,
    pub codim: Estimate,
}

fn top_dim_t<T: Scalar>(symbols: &[FloatPoly], nvars: usize, k: u32, m: u32, cfg: &KoszulConfig) -> Result<Option<usize>> {
    let d = symbols.iter().map(|p| p.max_var_degree()).max().unwrap_or(0);
    let (inside, ambiguous, total) = range_in_window::<T>(symbols, nvars, symbols.len(), k, m, d, cfg)?;
    Ok((ambiguous == 0).then_some(total - inside))
}

/// Dimension of the `K`-window modulo its intersection with
/// `p_1·(M-window) + … + p_m·(M-window)`, evaluated at `(K, M)`,
/// `(K+1, M+1)`, `(K+2, M+2)` and reported only when all three agree.
pub fn ideal_codim_window(tuple: &SymbolTuple, k: u32, m: u32, cfg: &KoszulConfig) -> Result<CodimWindow> {
    check_arity(tuple)?;
    cfg.validate()?;
    if m < k + tuple.max_var_degree() {
        return Err(Error::Unsupported(format!(
            "cofactor cap {m} is below K + degree = {}",
            k + tuple.max_var_degree()
        )));
    }
    let symbols = tuple.to_float();
    let real = all_real(&symbols);
    let levels = (0..3)
        .map(|i| {
            let v = if real {
                top_dim_t::<f64>(&symbols, tuple.nvars(), k + i, m + i, cfg)?
            } else {
                top_dim_t::<num_complex::Complex64>(&symbols, tuple.nvars(), k + i, m + i, cfg)?
            };
            Ok((k + i, m + i, v))
        })
        .collect::<Result<Vec<_>>>()?;
    let first = levels[0].2;
    let codim = match first {
        Some(v) if levels.iter().all(|l| l.2 == Some(v)) => Estimate::Value(v as i64),
        _ => Estimate::Unstable,
    };
    Ok(CodimWindow { levels, codim })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::koszul::build_koszul;
    use crate::poly::{ExactComplex, ExactPoly};

    fn z(nvars: usize, i: usize) -> ExactPoly {
        ExactPoly::var(nvars, i).unwrap()
    }

    fn k(nvars: usize, n: i64, d: i64) -> ExactPoly {
        ExactPoly::constant(nvars, ExactComplex::from_ratio(n, d))
    }

    fn tuple(s: Vec<ExactPoly>) -> SymbolTuple {
        SymbolTuple::new(s).unwrap()
    }

    #[test]
    fn euler_sign_convention() {
        assert_eq!(euler_index(&[0, 0, 1]), -1);
        assert_eq!(euler_index(&[0, 1, 1]), 0);
        assert_eq!(euler_index(&[0, 0, 0, 1]), -1);
        assert_eq!(euler_index(&[0, 1]), -1);
    }

    #[test]
    fn coordinate_pair() {
        let cfg = KoszulConfig::default();
        let l = level_dims(&tuple(vec![z(2, 0), z(2, 1)]), 4, &cfg).unwrap();
        assert_eq!(l.dims, vec![0, 0, 1]);
        assert!(!l.ambiguous);
    }

    #[test]
    fn outside_zero_pair() {
        let cfg = KoszulConfig::default();
        let t = tuple(vec![z(2, 0).sub(&k(2, 2, 1)), z(2, 1)]);
        let kt = build_koszul(&t, 3, cfg).unwrap();
        let h = homology_dims(&kt).unwrap();
        assert_eq!(h.dims, vec![0, 0, 0]);
        assert_eq!(h.index_estimate, Estimate::Value(0));
    }

    #[test]
    fn repeated_symbol_never_stabilizes() {
        let cfg = KoszulConfig::default();
        let t = tuple(vec![z(2, 0), z(2, 0)]);
        let h = homology_sweep(&t, 1..=3, &cfg).unwrap();
        let h1: Vec<usize> = h.levels.iter().map(|l| l.dims[1]).collect();
        assert!(h1.windows(2).all(|w| w[1] > w[0]), "{h1:?}");
        assert_eq!(h.index_estimate, Estimate::Unstable);
    }

    #[test]
    fn codimension_examples() {
        let cfg = KoszulConfig::default();
        let c = ideal_codim_window(&tuple(vec![z(2, 0), z(2, 1)]), 2, 5, &cfg).unwrap();
        assert_eq!(c.codim, Estimate::Value(1));
        let c = ideal_codim_window(&tuple(vec![z(2, 0).pow(2), z(2, 1).pow(3)]), 3, 8, &cfg).unwrap();
        assert_eq!(c.codim, Estimate::Value(6));
        let c = ideal_codim_window(&tuple(vec![z(2, 0).sub(&k(2, 2, 1)), z(2, 1)]), 2, 14, &cfg).unwrap();
        assert_eq!(c.codim, Estimate::Value(0));
        assert!(ideal_codim_window(&tuple(vec![z(2, 0), z(2, 1)]), 2, 2, &cfg).is_err());
    }

    #[test]
    fn disc_pair_with_interior_common_zero() {
        let cfg = KoszulConfig::default();
        let t = tuple(vec![z(1, 0), z(1, 0).pow(2)]);
        let h = homology_sweep(&t, 4..=6, &cfg).unwrap();
        assert_eq!(h.dims, vec![0, 1, 1]);
        assert_eq!(h.index_estimate, Estimate::Value(0));
    }

    #[test]
    fn too_few_levels_is_unstable() {
        let cfg = KoszulConfig::default();
        let h = homology_sweep(&tuple(vec![z(2, 0), z(2, 1)]), 2..=3, &cfg).unwrap();
        assert_eq!(h.index_estimate, Estimate::Unstable);
        assert!(!h.stabilized);
    }
}
