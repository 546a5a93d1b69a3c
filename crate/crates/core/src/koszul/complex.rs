//! Truncated Koszul complexes of analytic Toeplitz tuples.
//!
//! The complex of `m` symbols is written as a contraction
//! `Λ^m → Λ^{m-1} → … → Λ^0`, each `Λ^j` being `C(m, j)` copies of the
//! Hardy space indexed by lexicographically ordered subsets `S`:
//!
//! `ι(ξ e_S) = Σ_{j ∈ S} (-1)^{pos(j, S)} T_{f_j} ξ e_{S∖{j}}`.
//!
//! For two symbols this gives `d1(ξ) = (-T2 ξ, T1 ξ)` and
//! `d2(ξ1, ξ2) = T1 ξ1 + T2 ξ2`. Multiplication by an analytic polynomial maps
//! the window of cap `c` into the window of cap `c + deg`, so the truncated
//! complex is an exact subcomplex and consecutive matrices compose to zero
//! without tolerance.

use std::io::{self, Write};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::window::MonomialWindow;
use crate::error::{Error, Result};
use crate::linalg::{singular_values, Scalar};
use crate::poly::{FloatPoly, SymbolTuple};

/// Numerical parameters of the Koszul route.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct KoszulConfig {
    /// Singular values below `rank_tolerance · σ_max` count as zero.
    pub rank_tolerance: f64,
    /// Principal-angle sine at or below which a window vector lies in a range.
    pub in_range_sine: f64,
    /// Principal-angle sine at or above which a window vector lies outside a range.
    pub out_of_range_sine: f64,
    /// Extra cofactor degree beyond `K + d`; `None` picks a default by variable count.
    pub cofactor_slack: Option<u32>,
    /// Largest admissible number of matrix columns.
    pub max_columns: usize,
}

impl Default for KoszulConfig {
    fn default() -> Self {
        Self {
            rank_tolerance: 1e-8,
            in_range_sine: 1e-3,
            out_of_range_sine: 0.05,
            cofactor_slack: None,
            max_columns: 20_000,
        }
    }
}

impl KoszulConfig {
    pub fn validate(&self) -> Result<()> {
        for t in [self.rank_tolerance, self.in_range_sine, self.out_of_range_sine] {
            if !(t > 0.0 && t.is_finite()) {
                return Err(Error::InvalidTolerance(t));
            }
        }
        if self.in_range_sine >= self.out_of_range_sine {
            return Err(Error::Unsupported(
                "in_range_sine must be below out_of_range_sine".into(),
            ));
        }
        Ok(())
    }

    /// Cofactor slack used for `nvars` variables. Windows in one variable are
    /// cheap, so the slack is generous there; three-variable windows grow
    /// cubically and get almost none.
    pub fn slack_for(&self, nvars: usize) -> u32 {
        self.cofactor_slack.unwrap_or(match nvars {
            1 => 40,
            2 => 10,
            _ => 1,
        })
    }
}

/// Lexicographically ordered `size`-subsets of `0..m`.
pub fn subsets(m: usize, size: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, m: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for j in start..m {
            cur.push(j);
            rec(j + 1, m, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if size <= m {
        rec(0, m, size, &mut Vec::new(), &mut out);
    }
    out
}

pub(crate) fn binomial(m: usize, k: usize) -> usize {
    subsets(m, k).len()
}

/// Accumulates `sign · T_p` from `src` into `dst` at the given block offsets.
fn place_block<T: Scalar>(
    out: &mut DMatrix<T>,
    p: &FloatPoly,
    sign: f64,
    src: &MonomialWindow,
    dst: &MonomialWindow,
    row0: usize,
    col0: usize,
) {
    let terms: Vec<(&[u32], T)> = p
        .terms()
        .iter()
        .map(|(m, c)| (m.0.as_slice(), T::from_c64(c * sign)))
        .collect();
    let mut target = vec![0u32; src.nvars()];
    for (col, alpha) in src.basis().iter().enumerate() {
        for (beta, c) in &terms {
            for (t, (a, b)) in target.iter_mut().zip(alpha.iter().zip(beta.iter())) {
                *t = a + b;
            }
            let row = dst
                .index_of(&target)
                .expect("destination window holds every shifted monomial");
            out[(row0 + row, col0 + col)] += *c;
        }
    }
}

/// Matrix of `T_p` from `src` into `dst` (which must contain every shift).
pub(crate) fn multiplication_matrix<T: Scalar>(
    p: &FloatPoly,
    src: &MonomialWindow,
    dst: &MonomialWindow,
) -> DMatrix<T> {
    let mut out = DMatrix::zeros(dst.len(), src.len());
    place_block(&mut out, p, 1.0, src, dst, 0, 0);
    out
}

/// Matrix of `T_p` from the window of cap `n` into the window of cap
/// `n + (largest per-variable degree of p)`.
pub fn toeplitz_matrix(p: &FloatPoly, n: u32) -> DMatrix<Complex64> {
    let src = MonomialWindow::new(p.nvars(), n);
    let dst = MonomialWindow::new(p.nvars(), n + p.max_var_degree());
    multiplication_matrix(p, &src, &dst)
}

/// Boundary map of stage `k` (1-based): `Λ^{m-k+1} → Λ^{m-k}`, with every
/// source copy on `src` and every target copy on `dst`.
pub(crate) fn boundary_matrix<T: Scalar>(
    symbols: &[FloatPoly],
    k: usize,
    src: &MonomialWindow,
    dst: &MonomialWindow,
    max_columns: usize,
) -> Result<DMatrix<T>> {
    let m = symbols.len();
    let sources = subsets(m, m + 1 - k);
    let targets = subsets(m, m - k);
    let columns = sources.len() * src.len();
    if columns > max_columns {
        return Err(Error::WindowOverflow {
            columns,
            cap: max_columns,
        });
    }
    let mut out = DMatrix::zeros(targets.len() * dst.len(), columns);
    for (si, s) in sources.iter().enumerate() {
        for (pos, &j) in s.iter().enumerate() {
            let rest: Vec<usize> = s.iter().copied().filter(|&x| x != j).collect();
            let ti = targets.iter().position(|t| *t == rest).expect("subset");
            let sign = if pos % 2 == 0 { 1.0 } else { -1.0 };
            place_block(
                &mut out,
                &symbols[j],
                sign,
                src,
                dst,
                ti * dst.len(),
                si * src.len(),
            );
        }
    }
    Ok(out)
}

/// True when every coefficient of every symbol is real, so real matrices suffice.
pub(crate) fn all_real(symbols: &[FloatPoly]) -> bool {
    symbols.iter().all(|p| p.terms().values().all(|c| c.im == 0.0))
}

/// Koszul complex of a tuple truncated at window cap `n`: stage `k` maps
/// `C(m, k-1)` copies of the cap `n + (k-1)d` window into `C(m, k)` copies of
/// the cap `n + kd` window.
#[derive(Debug, Clone)]
pub struct KoszulTruncation {
    pub tuple: SymbolTuple,
    pub symbols: Vec<FloatPoly>,
    pub n: u32,
    pub d: u32,
    pub boundary_matrices: Vec<DMatrix<Complex64>>,
    pub config: KoszulConfig,
}

impl KoszulTruncation {
    pub fn arity(&self) -> usize {
        self.symbols.len()
    }

    pub fn nvars(&self) -> usize {
        self.tuple.nvars()
    }

    pub fn rank_tolerance(&self) -> f64 {
        self.config.rank_tolerance
    }
}

pub(crate) fn check_arity(tuple: &SymbolTuple) -> Result<()> {
    if !(1..=3).contains(&tuple.nvars()) {
        return Err(Error::UnsupportedNvars(tuple.nvars()));
    }
    if !(1..=3).contains(&tuple.len()) {
        return Err(Error::Unsupported(format!(
            "Koszul complexes of {} symbols are not supported (expected 1..=3)",
            tuple.len()
        )));
    }
    Ok(())
}

pub fn build_koszul(tuple: &SymbolTuple, n: u32, config: KoszulConfig) -> Result<KoszulTruncation> {
    check_arity(tuple)?;
    config.validate()?;
    let symbols = tuple.to_float();
    let d = tuple.max_var_degree();
    let m = symbols.len();
    let nvars = tuple.nvars();
    let boundary_matrices = (1..=m)
        .map(|k| {
            let src = MonomialWindow::new(nvars, n + (k as u32 - 1) * d);
            let dst = MonomialWindow::new(nvars, n + k as u32 * d);
            boundary_matrix(&symbols, k, &src, &dst, config.max_columns)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(KoszulTruncation {
        tuple: tuple.clone(),
        symbols,
        n,
        d,
        boundary_matrices,
        config,
    })
}

/// Smallest singular value of the first boundary matrix.
pub fn stage1_sigma_min(kt: &KoszulTruncation) -> f64 {
    let m = &kt.boundary_matrices[0];
    let sv = singular_values(m);
    if sv.len() < m.ncols() {
        // wide matrix: a nontrivial kernel exists
        return 0.0;
    }
    sv.last().copied().unwrap_or(0.0)
}

/// Writes every boundary matrix as dense text: a `# stage k rows cols` header,
/// then one line per row with `re im` pairs.
pub fn dump_matrices(kt: &KoszulTruncation, out: &mut impl Write) -> io::Result<()> {
    for (k, m) in kt.boundary_matrices.iter().enumerate() {
        writeln!(out, "# stage {} {} {}", k + 1, m.nrows(), m.ncols())?;
        for r in 0..m.nrows() {
            let row: Vec<String> = (0..m.ncols())
                .map(|c| format!("{:e} {:e}", m[(r, c)].re, m[(r, c)].im))
                .collect();
            writeln!(out, "{}", row.join(" "))?;
        }
    }
    Ok(())
}
