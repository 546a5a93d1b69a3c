//! Zero counting after a small random constant perturbation.

use std::collections::BTreeMap;

use num_complex::Complex64;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cert::search::CompiledPoly;
use crate::error::{Error, Result};
use crate::linalg::polynomial_roots;
use crate::poly::dense;
use crate::poly::resultant::resultant_dense;
use crate::poly::{ExactComplex, ExactPoly, SymbolTuple};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct OracleConfig {
    pub epsilon: f64,
    pub trials: usize,
    pub seed: u64,
    pub quadrature_points: usize,
    /// Zeros with `max |z_i|` within this distance of 1 invalidate a trial.
    pub boundary_margin: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            epsilon: 1e-3,
            trials: 5,
            seed: 0,
            quadrature_points: 256,
            boundary_margin: 1e-6,
        }
    }
}

impl OracleConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return Err(Error::InvalidTolerance(self.epsilon));
        }
        if self.trials < 3 {
            return Err(Error::Oracle(format!("need at least 3 trials, got {}", self.trials)));
        }
        if self.quadrature_points < 64 {
            return Err(Error::Oracle(format!(
                "need at least 64 quadrature points, got {}",
                self.quadrature_points
            )));
        }
        if !(self.boundary_margin >= 0.0) {
            return Err(Error::InvalidTolerance(self.boundary_margin));
        }
        Ok(())
    }
}

/// A numerically located common zero of a polynomial pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairZero {
    pub point: [Complex64; 2],
    /// `|det J|` at the point; small values indicate a multiple zero.
    pub jacobian: f64,
}

const PERTURBATION_DENOMINATOR: f64 = (1u64 << 24) as f64;

/// Random constant of modulus at most `eps`, rounded to a dyadic rational.
fn random_constant(rng: &mut ChaCha8Rng, eps: f64) -> ExactComplex {
    let r = eps * rng.gen::<f64>().sqrt();
    let z = Complex64::from_polar(r, rng.gen::<f64>() * std::f64::consts::TAU);
    let q = |x: f64| {
        // round towards zero so the modulus never exceeds eps
        let n = (x * PERTURBATION_DENOMINATOR).trunc() as i64;
        BigRational::new(n.into(), (PERTURBATION_DENOMINATOR as i64).into())
    };
    ExactComplex::new(q(z.re), q(z.im))
}

/// Coefficients in `z2` of `p(a, z2)`, lowest degree first.
fn specialize_first(p: &CompiledPoly, a: Complex64, deg: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); deg + 1];
    for (e, c) in p.term_list() {
        out[e[1] as usize] += c * a.powu(e[0]);
    }
    out
}

fn trimmed_roots(mut c: Vec<Complex64>) -> Vec<Complex64> {
    let scale = c.iter().map(|x| x.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return Vec::new();
    }
    while c.len() > 1 && c.last().is_some_and(|x| x.norm() <= 1e-12 * scale) {
        c.pop();
    }
    if c.len() <= 1 {
        return Vec::new();
    }
    polynomial_roots(&c)
}

fn newton(f: &[CompiledPoly; 2], mut z: [Complex64; 2]) -> ([Complex64; 2], f64, f64) {
    for _ in 0..50 {
        let v = [f[0].eval(&z), f[1].eval(&z)];
        let j = [
            [f[0].partial(&z, 0), f[0].partial(&z, 1)],
            [f[1].partial(&z, 0), f[1].partial(&z, 1)],
        ];
        let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        if det.norm() == 0.0 {
            break;
        }
        let dz0 = (v[0] * j[1][1] - v[1] * j[0][1]) / det;
        let dz1 = (j[0][0] * v[1] - j[1][0] * v[0]) / det;
        z = [z[0] - dz0, z[1] - dz1];
        if dz0.norm() + dz1.norm() <= 1e-15 * (1.0 + z[0].norm() + z[1].norm()) {
            break;
        }
    }
    let res = f[0].eval(&z).norm() + f[1].eval(&z).norm();
    let j = [
        [f[0].partial(&z, 0), f[0].partial(&z, 1)],
        [f[1].partial(&z, 0), f[1].partial(&z, 1)],
    ];
    let det = (j[0][0] * j[1][1] - j[0][1] * j[1][0]).norm();
    (z, res, det)
}

/// All affine common zeros of a zero-dimensional pair in two variables:
/// roots of the exact resultant in `z1`, each lifted through the roots of
/// the specialized symbols in `z2` and polished by Newton's method.
pub fn solve_pair(f: &ExactPoly, g: &ExactPoly) -> Result<Vec<PairZero>> {
    if f.nvars() != 2 || g.nvars() != 2 {
        return Err(Error::UnsupportedNvars(f.nvars().max(g.nvars())));
    }
    if f.degree_in(1).unwrap_or(0) == 0 && g.degree_in(1).unwrap_or(0) == 0 {
        // both free of z2: common zeros form vertical lines unless z1-coprime
        let coprime = if f.is_constant() && g.is_constant() {
            !f.is_zero() && !g.is_zero()
        } else {
            !resultant_dense(f, g, 0)?.is_empty()
        };
        return if coprime {
            Ok(Vec::new())
        } else {
            Err(Error::NotZeroDimensional("common factor in z1".into()))
        };
    }
    let res = resultant_dense(f, g, 1)?;
    if res.is_empty() {
        return Err(Error::NotZeroDimensional("resultant vanishes identically".into()));
    }
    let compiled = [CompiledPoly::new(&f.to_float()), CompiledPoly::new(&g.to_float())];
    let scale: f64 = compiled.iter().map(|p| p.coefficient_sum()).sum();
    let firsts = polynomial_roots(&dense::to_complex(&dense::squarefree_part(&res)));
    let degs = [f.degree_in(1).unwrap_or(0) as usize, g.degree_in(1).unwrap_or(0) as usize];
    let mut out: Vec<PairZero> = Vec::new();
    for a in firsts {
        let mut cands = Vec::new();
        for (p, &d) in compiled.iter().zip(&degs) {
            cands.extend(trimmed_roots(specialize_first(p, a, d)));
        }
        for b in cands {
            let start = [a, b];
            let pre = compiled[0].eval(&start).norm() + compiled[1].eval(&start).norm();
            if pre > 1e-4 * scale.max(1.0) {
                continue;
            }
            let (z, res, det) = newton(&compiled, start);
            if !(res <= 1e-9 * scale.max(1.0)) {
                continue;
            }
            let near = |w: &PairZero| (w.point[0] - z[0]).norm() + (w.point[1] - z[1]).norm() < 1e-7;
            if !out.iter().any(near) {
                out.push(PairZero { point: z, jacobian: det });
            }
        }
    }
    Ok(out)
}

enum Trial {
    Count(usize),
    Invalid,
}

fn run_trial(tuple: &SymbolTuple, cfg: &OracleConfig, stream: u64) -> Result<Trial> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(stream);
    let s = tuple.symbols();
    let one = ExactPoly::one(2);
    let f = s[0].add(&one.scale(&random_constant(&mut rng, cfg.epsilon)));
    let g = s[1].add(&one.scale(&random_constant(&mut rng, cfg.epsilon)));
    let zeros = match solve_pair(&f, &g) {
        Ok(z) => z,
        Err(Error::NotZeroDimensional(_)) => return Ok(Trial::Invalid),
        Err(e) => return Err(e),
    };
    let mut count = 0;
    for z in &zeros {
        let m = z.point[0].norm().max(z.point[1].norm());
        if (m - 1.0).abs() <= cfg.boundary_margin || z.jacobian < 1e-10 {
            return Ok(Trial::Invalid);
        }
        if m < 1.0 {
            count += 1;
        }
    }
    Ok(Trial::Count(count))
}

/// Per-trial counts (`None` for a discarded trial) and their majority.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleVote {
    pub trial_counts: Vec<Option<usize>>,
    pub count: usize,
}

/// Majority count of simple zeros inside the bidisc over randomly perturbed
/// copies of the pair. Each trial uses its own ChaCha stream derived from
/// the seed, so the result does not depend on evaluation order.
pub fn perturbed_vote(tuple: &SymbolTuple, cfg: &OracleConfig) -> Result<OracleVote> {
    cfg.validate()?;
    if tuple.nvars() != 2 || tuple.len() != 2 {
        return Err(Error::Unsupported("perturbed_count expects a pair in two variables".into()));
    }
    let mut votes: BTreeMap<usize, usize> = BTreeMap::new();
    let mut trial_counts = Vec::new();
    let mut valid = 0;
    let mut stream = 0u64;
    // a discarded trial is replaced by a fresh stream, up to trials extra streams
    while valid < cfg.trials && stream < 2 * cfg.trials as u64 {
        match run_trial(tuple, cfg, stream)? {
            Trial::Count(c) => {
                *votes.entry(c).or_default() += 1;
                valid += 1;
                trial_counts.push(Some(c));
            }
            Trial::Invalid => trial_counts.push(None),
        }
        stream += 1;
    }
    if valid == 0 {
        return Err(Error::Oracle(format!(
            "all {} trials degenerate or hit the boundary margin",
            trial_counts.len()
        )));
    }
    let (&count, &n) = votes.iter().max_by_key(|(_, &n)| n).expect("nonempty");
    if 2 * n <= valid {
        return Err(Error::Oracle(format!("no majority among trial counts {votes:?}")));
    }
    Ok(OracleVote { trial_counts, count })
}

/// Majority count from [`perturbed_vote`].
pub fn perturbed_count(tuple: &SymbolTuple, cfg: &OracleConfig) -> Result<usize> {
    perturbed_vote(tuple, cfg).map(|v| v.count)
}
