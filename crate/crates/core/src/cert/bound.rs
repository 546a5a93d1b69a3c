//! Certified lower bounds of `Σ |f_i|²` near the boundary of the polydisc.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::search::{base_cell_count, polish, search, CompiledPoly, Face, SearchConfig};
use crate::error::{Error, Result};
use crate::numfmt::{serialize_point, serialize_sig17};
use crate::poly::{coefficient_bounds, ExactPoly, SymbolTuple};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CertVerdict {
    Certified,
    Failed,
    Inconclusive,
}

/// Point where `Σ |f_i|²` was evaluated to a small value.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    #[serde(serialize_with = "serialize_point")]
    pub point: Vec<Complex64>,
    #[serde(serialize_with = "serialize_sig17")]
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundaryCertificate {
    /// Inner radius of the region (0 for the whole closed polydisc).
    pub r: f64,
    /// Certified lower bound (0 unless certified).
    pub c: f64,
    /// Largest cell radius among cells whose bound was accepted.
    pub mesh: f64,
    /// Global chain-rule Lipschitz bound `2 Σ sup|f_i| · Σ_j sup|∂_j f_i|`.
    pub lipschitz: f64,
    pub verdict: CertVerdict,
    /// Smallest sampled value of `Σ |f_i|²`.
    pub min_sample: f64,
    pub witness: Option<Witness>,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct CertConfig {
    /// Base grid step; `None` picks a default by variable count.
    pub target_mesh: Option<f64>,
    /// Halvings allowed per variable and axis during refinement.
    pub max_halvings: u8,
    /// Maximum number of cell evaluations.
    pub budget: usize,
    /// Refinement continues until each cell bound reaches this fraction of the minimum sample.
    pub tightness: f64,
    /// `Σ |f_i|²` below this value at a polished point is treated as vanishing.
    pub vanishing_threshold: f64,
    pub polish_iterations: usize,
    pub max_unresolved: usize,
}

impl Default for CertConfig {
    fn default() -> Self {
        Self {
            target_mesh: None,
            max_halvings: 4,
            budget: 4_000_000,
            tightness: 0.9,
            vanishing_threshold: 1e-10,
            polish_iterations: 400,
            max_unresolved: 64,
        }
    }
}

impl CertConfig {
    pub fn mesh_for(&self, nvars: usize) -> f64 {
        self.target_mesh.unwrap_or(match nvars {
            1 => 0.01,
            2 => 0.1,
            _ => 0.3,
        })
    }

    pub fn validate(&self) -> Result<()> {
        for t in [self.tightness, self.vanishing_threshold] {
            if !(t > 0.0 && t.is_finite()) {
                return Err(Error::InvalidTolerance(t));
            }
        }
        if let Some(m) = self.target_mesh {
            if !(m > 0.0 && m.is_finite()) {
                return Err(Error::InvalidTolerance(m));
            }
        }
        Ok(())
    }
}

fn global_lipschitz(symbols: &[ExactPoly]) -> f64 {
    2.0 * symbols
        .iter()
        .map(|p| {
            let (s, g) = coefficient_bounds(p);
            s * g
        })
        .sum::<f64>()
}

/// Runs the cell search over `faces` and turns the outcome into a certificate.
pub(crate) fn certify_faces(symbols: &[ExactPoly], nvars: usize, faces: &[Face], r: f64, cfg: &CertConfig) -> Result<BoundaryCertificate> {
    cfg.validate()?;
    let mesh = cfg.mesh_for(nvars);
    let needed = base_cell_count(faces, mesh);
    if 2 * needed > cfg.budget {
        return Err(Error::BudgetExceeded {
            needed: 2 * needed,
            budget: cfg.budget,
        });
    }
    let compiled: Vec<CompiledPoly> = symbols.iter().map(|p| CompiledPoly::new(&p.to_float())).collect();
    let search_cfg = SearchConfig {
        base_mesh: mesh,
        max_halvings: cfg.max_halvings,
        budget: cfg.budget,
        tightness: cfg.tightness,
        vanishing: cfg.vanishing_threshold,
        polish_iterations: cfg.polish_iterations,
        max_unresolved: cfg.max_unresolved,
    };
    let out = search(&compiled, nvars, faces, &search_cfg);
    let lipschitz = global_lipschitz(symbols);
    let mut cert = BoundaryCertificate {
        r,
        c: 0.0,
        mesh: out.mesh,
        lipschitz,
        verdict: CertVerdict::Inconclusive,
        min_sample: out.min_sample,
        witness: None,
        evaluations: out.evaluations,
    };
    if let Some((point, value)) = out.witness {
        cert.verdict = CertVerdict::Failed;
        cert.min_sample = cert.min_sample.min(value);
        cert.witness = Some(Witness { point, value });
        return Ok(cert);
    }
    if out.unresolved.is_empty() && !out.budget_exhausted && out.lower_bound.is_finite() {
        cert.verdict = CertVerdict::Certified;
        cert.c = out.lower_bound;
        return Ok(cert);
    }
    // inconclusive: report the best point reachable from the smallest samples
    let starts = out
        .unresolved
        .iter()
        .map(|(_, z)| z.clone())
        .chain(std::iter::once(out.min_point.clone()));
    let mut best: Option<(Vec<Complex64>, f64)> = None;
    for z in starts.take(8) {
        let face = faces
            .iter()
            .find(|f| f.iter().zip(&z).all(|(&(a, b), zv)| zv.norm() >= a - 1e-12 && zv.norm() <= b + 1e-12))
            .unwrap_or(&faces[0]);
        let (p, v) = polish(&compiled, &z, face, cfg.polish_iterations);
        if best.as_ref().is_none_or(|b| v < b.1) {
            best = Some((p, v));
        }
    }
    if let Some((point, value)) = best {
        cert.min_sample = cert.min_sample.min(value);
        if value < cfg.vanishing_threshold {
            cert.verdict = CertVerdict::Failed;
        }
        cert.witness = Some(Witness { point, value });
    }
    Ok(cert)
}

/// Faces `{|z_i| ∈ [r, 1]}` whose union is the closure of `𝔻ⁿ ∖ 𝔻_rⁿ`.
pub(crate) fn boundary_faces(nvars: usize, r: f64) -> Vec<Face> {
    (0..nvars)
        .map(|i| (0..nvars).map(|v| if v == i { (r, 1.0) } else { (0.0, 1.0) }).collect())
        .collect()
}

fn check_radius(r: f64) -> Result<()> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::RadiusOutOfRange(r));
    }
    Ok(())
}

/// Certified lower bound of `Σ |f_i|²` over the closure of `𝔻ⁿ ∖ 𝔻_rⁿ`.
pub fn boundary_lower_bound(tuple: &SymbolTuple, r: f64, cfg: &CertConfig) -> Result<BoundaryCertificate> {
    check_radius(r)?;
    let n = tuple.nvars();
    certify_faces(tuple.symbols(), n, &boundary_faces(n, r), r, cfg)
}

/// Lower bound of `Σ |f_i|²` on the closed annulus `s ≤ |z| ≤ 1` for symbols
/// that all depend on one common variable.
pub fn as_condition_check(tuple: &SymbolTuple, s: f64, cfg: &CertConfig) -> Result<BoundaryCertificate> {
    check_radius(s)?;
    let symbols = univariate_symbols(tuple)?;
    certify_faces(&symbols, 1, &[vec![(s, 1.0)]], s, cfg)
}

/// The symbols as one-variable polynomials, when they share a single variable.
pub fn univariate_symbols(tuple: &SymbolTuple) -> Result<Vec<ExactPoly>> {
    if tuple.nvars() == 1 {
        return Ok(tuple.symbols().to_vec());
    }
    let mut vars: Vec<usize> = tuple.symbols().iter().flat_map(|s| s.support_vars()).collect();
    vars.sort_unstable();
    vars.dedup();
    let var = match vars.as_slice() {
        [] => 0,
        [v] => *v,
        _ => {
            return Err(Error::Unsupported(
                "symbols do not share a single variable".into(),
            ))
        }
    };
    tuple.symbols().iter().map(|s| s.restrict_vars(&[var])).collect()
}

/// Certificate that `p` has no zero on the closed unit polydisc.
pub fn zero_free_on_closed_polydisc(p: &ExactPoly, cfg: &CertConfig) -> Result<BoundaryCertificate> {
    let n = p.nvars();
    let face: Face = vec![(0.0, 1.0); n];
    certify_faces(std::slice::from_ref(p), n, &[face], 0.0, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ExactComplex;

    fn z(n: usize, i: usize) -> ExactPoly {
        ExactPoly::var(n, i).unwrap()
    }

    fn k(n: usize, a: i64, b: i64) -> ExactPoly {
        ExactPoly::constant(n, ExactComplex::from_ratio(a, b))
    }

    fn tuple(s: Vec<ExactPoly>) -> SymbolTuple {
        SymbolTuple::new(s).unwrap()
    }

    #[test]
    fn coordinate_pair_certifies_near_quarter() {
        let cert = boundary_lower_bound(&tuple(vec![z(2, 0), z(2, 1)]), 0.5, &CertConfig::default()).unwrap();
        assert_eq!(cert.verdict, CertVerdict::Certified);
        assert!(cert.c > 0.2 && cert.c <= 0.25, "c = {}", cert.c);
    }

    #[test]
    fn repeated_symbol_fails_with_witness() {
        let cert = boundary_lower_bound(&tuple(vec![z(2, 0), z(2, 0)]), 0.5, &CertConfig::default()).unwrap();
        assert_eq!(cert.verdict, CertVerdict::Failed);
        let w = cert.witness.unwrap();
        assert!(w.value < 1e-3);
        assert!(w.point[1].norm() >= 0.5 - 1e-12);
    }

    #[test]
    fn invertible_first_symbol() {
        let t = tuple(vec![z(2, 0).sub(&k(2, 2, 1)), z(2, 1)]);
        let cert = boundary_lower_bound(&t, 0.9, &CertConfig::default()).unwrap();
        assert_eq!(cert.verdict, CertVerdict::Certified);
        assert!(cert.c > 0.9 && cert.c <= 1.0, "c = {}", cert.c);
    }

    #[test]
    fn annulus_examples() {
        let cfg = CertConfig::default();
        let c = as_condition_check(&tuple(vec![z(1, 0), z(1, 0).sub(&k(1, 1, 2))]), 0.6, &cfg).unwrap();
        assert_eq!(c.verdict, CertVerdict::Certified);
        let c = as_condition_check(&tuple(vec![z(1, 0), z(1, 0)]), 0.5, &cfg).unwrap();
        assert_eq!(c.verdict, CertVerdict::Certified);
        assert!(c.c >= 0.45 && c.c <= 0.5, "c = {}", c.c);
        let one = ExactPoly::one(1);
        let c = as_condition_check(&tuple(vec![z(1, 0).sub(&one), z(1, 0).pow(2).sub(&one)]), 0.5, &cfg).unwrap();
        assert_eq!(c.verdict, CertVerdict::Failed);
        assert!((c.witness.unwrap().point[0] - Complex64::new(1.0, 0.0)).norm() < 1e-3);
    }

    #[test]
    fn radius_is_validated() {
        let t = tuple(vec![z(2, 0), z(2, 1)]);
        assert!(matches!(
            boundary_lower_bound(&t, 1.0, &CertConfig::default()),
            Err(Error::RadiusOutOfRange(_))
        ));
    }

    #[test]
    fn polydisc_zero_freeness() {
        let cfg = CertConfig::default();
        let c = zero_free_on_closed_polydisc(&z(2, 0).sub(&k(2, 2, 1)), &cfg).unwrap();
        assert_eq!(c.verdict, CertVerdict::Certified);
        let c = zero_free_on_closed_polydisc(&z(2, 0).add(&z(2, 1)).sub(&k(2, 1, 2)), &cfg).unwrap();
        assert_eq!(c.verdict, CertVerdict::Failed);
    }
}
