//! Common zeros of a polynomial pair with their intersection multiplicities.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::quotient::{characteristic_polynomial, Quotient};
use super::reduce::gcd_reduce;
use crate::cert::{boundary_lower_bound, CertConfig, CertVerdict};
use crate::error::{Error, Result};
use crate::linalg::{polynomial_roots, schur};
use crate::numfmt::serialize_point;
use crate::oracle::{perturbed_count, OracleConfig};
use crate::poly::dense;
use crate::poly::{gcd_bivariate, ExactComplex, ExactPoly, Monomial, SymbolTuple};

/// Separating forms `z1 + c z2` tried in order.
const FORM_COEFFICIENTS: [(i64, i64); 5] = [(1, 3), (-2, 7), (5, 11), (3, 13), (-7, 17)];

#[derive(Debug, Clone, PartialEq)]
pub enum Dimensionality {
    ZeroDimensional,
    CommonFactor(ExactPoly),
    /// A symbol is identically zero.
    Degenerate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Location {
    Inside,
    BoundaryProximate,
    Outside,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Zero {
    #[serde(serialize_with = "serialize_point")]
    pub point: Vec<Complex64>,
    pub multiplicity: usize,
    pub location: Location,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZeroSet {
    pub zeros: Vec<Zero>,
    pub total_inside: usize,
    /// Set when some zero lies within the boundary margin of the torus faces.
    pub degenerate: bool,
    /// Dimension of the quotient algebra, equal to the sum of all multiplicities.
    pub quotient_dim: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct AlgebraicConfig {
    pub boundary_margin: f64,
    pub cluster_radius: f64,
    /// Require a boundary certificate before reporting an index.
    pub certify: bool,
    /// Compare with the perturbed zero count; disagreement is an error.
    pub cross_check: bool,
    pub oracle: OracleConfig,
    pub cert: CertConfig,
}

impl Default for AlgebraicConfig {
    fn default() -> Self {
        Self {
            boundary_margin: 1e-6,
            cluster_radius: 1e-7,
            certify: true,
            cross_check: true,
            oracle: OracleConfig::default(),
            cert: CertConfig::default(),
        }
    }
}

fn check_pair(tuple: &SymbolTuple) -> Result<()> {
    if tuple.len() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: tuple.len(),
        });
    }
    if tuple.nvars() != 2 {
        return Err(Error::UnsupportedNvars(tuple.nvars()));
    }
    Ok(())
}

/// Classifies the common zero set of a pair: finite, containing a curve
/// `{g = 0}` for a shared factor `g`, or degenerate because of a zero symbol.
///
/// Both elimination resultants are nonzero exactly when the gcd is constant,
/// so the gcd alone decides the first two cases.
pub fn zero_dimensionality(tuple: &SymbolTuple) -> Result<Dimensionality> {
    check_pair(tuple)?;
    let [f, g] = [&tuple.symbols()[0], &tuple.symbols()[1]];
    if f.is_zero() || g.is_zero() {
        return Ok(Dimensionality::Degenerate);
    }
    let d = gcd_bivariate(f, g).expect("nonzero symbols");
    Ok(if d.is_constant() {
        Dimensionality::ZeroDimensional
    } else {
        Dimensionality::CommonFactor(d)
    })
}

/// Rank of a matrix over ℚ(i) by Gaussian elimination.
fn exact_rank(mut m: Vec<Vec<ExactComplex>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = m[rank][c].inv().expect("nonzero pivot");
        for r in rank + 1..rows {
            if m[r][c].is_zero() {
                continue;
            }
            let f = &m[r][c] * &inv;
            for k in c..cols {
                let t = &f * &m[rank][k];
                m[r][k] = &m[r][k] - &t;
            }
        }
        rank += 1;
    }
    rank
}

/// Number of distinct common zeros: the rank of the trace form
/// `(s_i, s_j) ↦ Tr(M_{s_i s_j})` on the quotient.
fn distinct_zero_count(q: &Quotient) -> usize {
    let mut traces: BTreeMap<Monomial, ExactComplex> = BTreeMap::new();
    let n = q.dim();
    let mut h = vec![vec![ExactComplex::zero(); n]; n];
    for i in 0..n {
        for j in i..n {
            let m = q.standard[i].mul(&q.standard[j]);
            let t = traces
                .entry(m.clone())
                .or_insert_with(|| {
                    let f = ExactPoly::from_terms(m.nvars(), [(m, ExactComplex::one())]).expect("same nvars");
                    let mm = q.multiplication_matrix(&f);
                    (0..n).fold(ExactComplex::zero(), |acc, k| &acc + &mm[k][k])
                })
                .clone();
            h[i][j] = t.clone();
            h[j][i] = t;
        }
    }
    exact_rank(h)
}

fn to_float(m: &[Vec<ExactComplex>]) -> DMatrix<Complex64> {
    let n = m.len();
    DMatrix::from_fn(n, n, |i, j| m[i][j].to_complex())
}

fn locate(point: &[Complex64], margin: f64) -> Location {
    let m = point.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if (m - 1.0).abs() <= margin {
        Location::BoundaryProximate
    } else if m < 1.0 {
        Location::Inside
    } else {
        Location::Outside
    }
}

/// Newton refinement of a simple zero on the original pair.
fn polish_simple(f: &ExactPoly, g: &ExactPoly, z: &mut [Complex64]) {
    let (f, g) = (f.to_float(), g.to_float());
    let (fx, fy, gx, gy) = (
        f.derivative(0).expect("var"),
        f.derivative(1).expect("var"),
        g.derivative(0).expect("var"),
        g.derivative(1).expect("var"),
    );
    for _ in 0..8 {
        let (a, b) = (f.eval_unchecked(z), g.eval_unchecked(z));
        let j = [fx.eval_unchecked(z), fy.eval_unchecked(z), gx.eval_unchecked(z), gy.eval_unchecked(z)];
        let det = j[0] * j[3] - j[1] * j[2];
        if det.norm() < 1e-12 {
            return;
        }
        z[0] -= (a * j[3] - b * j[1]) / det;
        z[1] -= (j[0] * b - j[2] * a) / det;
    }
}

/// Attempts the zero decomposition with the form `z1 + c z2`; `None` when the
/// form does not separate the zeros or the clusters cannot be told apart.
fn try_form(q: &Quotient, m1: &[Vec<ExactComplex>], m2: &[Vec<ExactComplex>], c: &ExactComplex, distinct: usize, cfg: &AlgebraicConfig) -> Option<Vec<(Vec<Complex64>, usize)>> {
    let n = q.dim();
    let ml: Vec<Vec<ExactComplex>> = (0..n)
        .map(|i| (0..n).map(|j| &m1[i][j] + &(c * &m2[i][j])).collect())
        .collect();
    let chi = characteristic_polynomial(&ml);
    let factors = dense::squarefree_decomposition(&chi);
    let separated: usize = factors.iter().map(|(f, _)| dense::degree(f).unwrap_or(0)).sum();
    if separated != distinct {
        return None;
    }
    let mut roots: Vec<(Complex64, usize)> = Vec::new();
    for (f, mult) in &factors {
        for r in polynomial_roots(&dense::to_complex(f)) {
            roots.push((r, *mult));
        }
    }
    for (i, a) in roots.iter().enumerate() {
        for b in &roots[i + 1..] {
            if (a.0 - b.0).norm() <= cfg.cluster_radius * (1.0 + a.0.norm()) {
                return None;
            }
        }
    }
    let (qm, t) = schur(to_float(&ml))?;
    let qh = qm.adjoint();
    let a1 = &qh * to_float(m1) * &qm;
    let a2 = &qh * to_float(m2) * &qm;
    let mut sums = vec![(Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), 0usize); roots.len()];
    for k in 0..n {
        let lambda = t[(k, k)];
        let nearest = (0..roots.len())
            .min_by(|&i, &j| (roots[i].0 - lambda).norm().total_cmp(&(roots[j].0 - lambda).norm()))
            .expect("nonempty");
        sums[nearest].0 += a1[(k, k)];
        sums[nearest].1 += a2[(k, k)];
        sums[nearest].2 += 1;
    }
    if sums.iter().zip(&roots).any(|(s, r)| s.2 != r.1) {
        return None;
    }
    Some(
        sums.iter()
            .map(|&(s1, s2, m)| (vec![s1 / m as f64, s2 / m as f64], m))
            .collect(),
    )
}

/// Common zeros of a zero-dimensional pair with intersection multiplicities.
///
/// Multiplicities come from the exact characteristic polynomial of a
/// separating multiplication operator on the quotient algebra; the points are
/// read off a Schur basis that triangularizes both coordinate operators.
pub fn common_zeros(tuple: &SymbolTuple, cfg: &AlgebraicConfig) -> Result<ZeroSet> {
    match zero_dimensionality(tuple)? {
        Dimensionality::ZeroDimensional => {}
        Dimensionality::CommonFactor(g) => {
            return Err(Error::NotZeroDimensional(format!("shared factor {g}")))
        }
        Dimensionality::Degenerate => return Err(Error::NotZeroDimensional("zero symbol".into())),
    }
    let (f, g) = (&tuple.symbols()[0], &tuple.symbols()[1]);
    let q = Quotient::new(tuple.symbols())?;
    let n = q.dim();
    if n == 0 {
        return Ok(ZeroSet {
            zeros: Vec::new(),
            total_inside: 0,
            degenerate: false,
            quotient_dim: 0,
        });
    }
    let m1 = q.multiplication_matrix(&ExactPoly::var(2, 0)?);
    let m2 = q.multiplication_matrix(&ExactPoly::var(2, 1)?);
    let distinct = distinct_zero_count(&q);
    let found = FORM_COEFFICIENTS
        .iter()
        .find_map(|&(a, b)| try_form(&q, &m1, &m2, &ExactComplex::from_ratio(a, b), distinct, cfg))
        .ok_or(Error::ClusterAmbiguity {
            radius: cfg.cluster_radius,
        })?;
    let mut zeros: Vec<Zero> = found
        .into_iter()
        .map(|(mut point, multiplicity)| {
            if multiplicity == 1 {
                polish_simple(f, g, &mut point);
            }
            Zero {
                location: locate(&point, cfg.boundary_margin),
                point,
                multiplicity,
            }
        })
        .collect();
    zeros.sort_by(|a, b| {
        a.point[0]
            .re
            .total_cmp(&b.point[0].re)
            .then(a.point[0].im.total_cmp(&b.point[0].im))
            .then(a.point[1].re.total_cmp(&b.point[1].re))
            .then(a.point[1].im.total_cmp(&b.point[1].im))
    });
    let total_inside = zeros
        .iter()
        .filter(|z| z.location == Location::Inside)
        .map(|z| z.multiplicity)
        .sum();
    let degenerate = zeros.iter().any(|z| z.location == Location::BoundaryProximate);
    Ok(ZeroSet {
        zeros,
        total_inside,
        degenerate,
        quotient_dim: n,
    })
}

/// Radius between the interior zeros and the torus used for the boundary
/// certificate.
fn certificate_radius(zs: &ZeroSet) -> f64 {
    let inner = zs
        .zeros
        .iter()
        .filter(|z| z.location == Location::Inside)
        .map(|z| z.point.iter().map(|c| c.norm()).fold(0.0, f64::max))
        .fold(0.0, f64::max);
    (0.5 * (1.0 + inner)).max(0.5)
}

/// Index of the Toeplitz pair: minus the number of common zeros in the open
/// bidisc counted with multiplicity.
///
/// A shared factor that is zero-free on the closed bidisc is divided out
/// first. A shared factor with a zero there gives a curve of common zeros
/// reaching the torus, so the pair is not Fredholm.
pub fn algebraic_index(tuple: &SymbolTuple, cfg: &AlgebraicConfig) -> Result<i64> {
    match zero_dimensionality(tuple)? {
        Dimensionality::Degenerate => Err(Error::NotFredholm("a symbol is identically zero".into())),
        Dimensionality::CommonFactor(_) => {
            let red = gcd_reduce(tuple, &cfg.cert)?;
            if !red.factor_zero_free_on_closed_polydisc {
                return Err(Error::NotFredholm(format!(
                    "shared factor {} vanishes on the closed bidisc",
                    red.common_factor
                )));
            }
            algebraic_index(&red.reduced_tuple, cfg)
        }
        Dimensionality::ZeroDimensional => {
            let zs = common_zeros(tuple, cfg)?;
            if zs.degenerate {
                return Err(Error::NotCertifiable(
                    "a common zero lies within the boundary margin of the torus".into(),
                ));
            }
            if cfg.certify {
                let cert = boundary_lower_bound(tuple, certificate_radius(&zs), &cfg.cert)?;
                match cert.verdict {
                    CertVerdict::Certified => {}
                    CertVerdict::Failed => {
                        return Err(Error::NotFredholm(format!(
                            "boundary lower bound failed at r = {}",
                            cert.r
                        )))
                    }
                    CertVerdict::Inconclusive => {
                        return Err(Error::NotCertifiable(format!(
                            "boundary lower bound inconclusive at r = {}",
                            cert.r
                        )))
                    }
                }
            }
            if cfg.cross_check {
                let oracle = perturbed_count(tuple, &cfg.oracle)?;
                if oracle != zs.total_inside {
                    return Err(Error::Oracle(format!(
                        "perturbed count {oracle} disagrees with multiplicity sum {}",
                        zs.total_inside
                    )));
                }
            }
            Ok(-(zs.total_inside as i64))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

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
    fn dimensionality_examples() {
        assert_eq!(zero_dimensionality(&pair(z(0), z(1))).unwrap(), Dimensionality::ZeroDimensional);
        assert_eq!(zero_dimensionality(&pair(z(0), z(0))).unwrap(), Dimensionality::CommonFactor(z(0)));
        assert_eq!(
            zero_dimensionality(&pair(z(0).mul(&z(1)), z(0).mul(&z(1).sub(&k(2, 1))))).unwrap(),
            Dimensionality::CommonFactor(z(0))
        );
        assert_eq!(
            zero_dimensionality(&pair(z(0), ExactPoly::zero(2))).unwrap(),
            Dimensionality::Degenerate
        );
    }

    #[test]
    fn zero_examples() {
        let cfg = AlgebraicConfig::default();
        let zs = common_zeros(&pair(z(0).pow(2).sub(&k(1, 4)), z(1)), &cfg).unwrap();
        assert_eq!(zs.zeros.len(), 2);
        assert_eq!(zs.total_inside, 2);
        assert!((zs.zeros[0].point[0] + 0.5).norm() < 1e-12);
        assert!((zs.zeros[1].point[0] - 0.5).norm() < 1e-12);

        let zs = common_zeros(&pair(z(0).sub(&z(1)), z(0).mul(&z(1))), &cfg).unwrap();
        assert_eq!(zs.zeros.len(), 1);
        assert_eq!(zs.zeros[0].multiplicity, 2);
        assert!(zs.zeros[0].point[0].norm() < 1e-6);

        let zs = common_zeros(&pair(z(0).sub(&k(2, 1)), z(1)), &cfg).unwrap();
        assert_eq!(zs.total_inside, 0);
        assert_eq!(zs.zeros[0].location, Location::Outside);
    }

    #[test]
    fn index_examples() {
        let cfg = AlgebraicConfig::default();
        assert_eq!(algebraic_index(&pair(z(0), z(1)), &cfg).unwrap(), -1);
        assert_eq!(algebraic_index(&pair(z(0).pow(2), z(1).pow(3)), &cfg).unwrap(), -6);
        assert_eq!(algebraic_index(&pair(z(0).sub(&k(2, 1)), z(1)), &cfg).unwrap(), 0);
    }

    #[test]
    fn boundary_zero_is_not_certifiable() {
        let r = algebraic_index(&pair(z(0).sub(&k(1, 1)), z(1)), &AlgebraicConfig::default());
        assert!(matches!(r, Err(Error::NotCertifiable(_))));
    }

    #[test]
    fn separating_form_count() {
        // four distinct zeros (±1/2, ±1/3), all simple
        let zs = common_zeros(
            &pair(z(0).pow(2).sub(&k(1, 4)), z(1).pow(2).sub(&k(1, 9))),
            &AlgebraicConfig::default(),
        )
        .unwrap();
        assert_eq!(zs.zeros.len(), 4);
        assert_eq!(zs.quotient_dim, 4);
        assert!(zs.zeros.iter().all(|z| z.multiplicity == 1));
    }
}
