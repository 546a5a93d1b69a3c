//! Essential-spectrum membership tests and sampled approximations of the
//! joint range near the torus.

use std::collections::HashSet;
use std::fmt::Write as _;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::bound::{boundary_faces, boundary_lower_bound, BoundaryCertificate, CertConfig, CertVerdict};
use crate::error::{Error, Result};
use crate::numfmt::{serialize_point, serialize_points, serialize_sig17, sig17};
use crate::poly::{ExactComplex, SymbolTuple};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Membership {
    Inside,
    Outside,
    Inconclusive,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumQuery {
    #[serde(serialize_with = "serialize_point")]
    pub lambda: Vec<Complex64>,
    pub verdict: Membership,
    /// Sampled distance from `λ` to the image of the boundary region; for
    /// `Outside` this is an upper estimate, the certificate gives `sqrt(c)` below it.
    #[serde(serialize_with = "serialize_sig17")]
    pub distance_estimate: f64,
    pub r_schedule: Vec<f64>,
    pub mesh: f64,
    /// Set when the answer rests on a finite sample rather than a certificate.
    pub approximate: bool,
    pub certificates: Vec<BoundaryCertificate>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SpectrumConfig {
    /// A sampled point within this distance of `λ` counts as a hit.
    pub distance_tolerance: f64,
    pub cert: CertConfig,
}

impl Default for SpectrumConfig {
    fn default() -> Self {
        Self {
            distance_tolerance: 1e-3,
            cert: CertConfig::default(),
        }
    }
}

/// Default radii, moving towards the torus.
pub fn default_r_schedule() -> Vec<f64> {
    vec![0.5, 0.7, 0.9]
}

/// Decides whether `λ` lies in the essential spectrum of the tuple.
///
/// `Outside` means `f − λ` certifiably has no near-zero on `𝔻ⁿ ∖ 𝔻_rⁿ` for
/// some scheduled `r`. `Inside` means every scheduled `r` has a sample whose
/// image lies within `distance_tolerance` of `λ`.
pub fn essential_spectrum_membership(
    tuple: &SymbolTuple,
    lambda: &[Complex64],
    r_schedule: &[f64],
    cfg: &SpectrumConfig,
) -> Result<SpectrumQuery> {
    if lambda.len() != tuple.len() {
        return Err(Error::DimensionMismatch {
            expected: tuple.len(),
            found: lambda.len(),
        });
    }
    if r_schedule.is_empty() {
        return Err(Error::Unsupported("empty radius schedule".into()));
    }
    if !(cfg.distance_tolerance > 0.0) {
        return Err(Error::InvalidTolerance(cfg.distance_tolerance));
    }
    let exact: Vec<ExactComplex> = lambda
        .iter()
        .map(|&l| ExactComplex::from_complex(l).ok_or_else(|| Error::Unsupported("non-finite spectral parameter".into())))
        .collect::<Result<_>>()?;
    let shifted = tuple.shifted(&exact)?;
    let mut certificates = Vec::with_capacity(r_schedule.len());
    let mut distances = Vec::with_capacity(r_schedule.len());
    for &r in r_schedule {
        let cert = boundary_lower_bound(&shifted, r, &cfg.cert)?;
        let sample = cert.witness.as_ref().map_or(cert.min_sample, |w| w.value.min(cert.min_sample));
        distances.push(sample.max(0.0).sqrt());
        let done = cert.verdict == CertVerdict::Certified;
        certificates.push(cert);
        if done {
            let d = *distances.last().expect("pushed");
            return Ok(SpectrumQuery {
                lambda: lambda.to_vec(),
                verdict: Membership::Outside,
                distance_estimate: d,
                r_schedule: r_schedule.to_vec(),
                mesh: cfg.cert.mesh_for(tuple.nvars()),
                approximate: false,
                certificates,
            });
        }
    }
    let inside = distances.iter().all(|&d| d <= cfg.distance_tolerance);
    let best = distances.iter().cloned().fold(0.0, f64::max);
    Ok(SpectrumQuery {
        lambda: lambda.to_vec(),
        verdict: if inside { Membership::Inside } else { Membership::Inconclusive },
        distance_estimate: best,
        r_schedule: r_schedule.to_vec(),
        mesh: cfg.cert.mesh_for(tuple.nvars()),
        approximate: true,
        certificates,
    })
}

/// Sampled image of `𝔻ⁿ ∖ 𝔻_rⁿ` under the symbol map. It approximates the
/// essential spectrum from outside; the spectrum itself is the limit `r → 1`.
#[derive(Debug, Clone, Serialize)]
pub struct SpectrumCloud {
    pub r: f64,
    pub resolution: usize,
    #[serde(serialize_with = "serialize_points")]
    pub points: Vec<Vec<Complex64>>,
}

impl SpectrumCloud {
    /// CSV with columns `re1,im1,…`, one row per sampled image point.
    pub fn to_csv(&self) -> String {
        let width = self.points.first().map_or(0, |p| p.len());
        let mut out = String::new();
        let header: Vec<String> = (1..=width).flat_map(|i| [format!("re{i}"), format!("im{i}")]).collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for p in &self.points {
            let row: Vec<String> = p.iter().flat_map(|c| [sig17(c.re), sig17(c.im)]).collect();
            let _ = writeln!(out, "{}", row.join(","));
        }
        out
    }
}

/// Samples the image of each face on a polar grid with `resolution` angles
/// and `resolution / 8` radii per variable, stopping at `max_points`.
pub fn essential_spectrum_cloud(tuple: &SymbolTuple, r: f64, resolution: usize, max_points: usize) -> Result<SpectrumCloud> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::RadiusOutOfRange(r));
    }
    if resolution == 0 {
        return Err(Error::Unsupported("resolution must be positive".into()));
    }
    let n = tuple.nvars();
    let radial = (resolution / 8).max(2);
    let per_face = (radial * resolution).pow(n as u32);
    let needed = per_face * n;
    if needed > max_points {
        return Err(Error::BudgetExceeded {
            needed,
            budget: max_points,
        });
    }
    let symbols = tuple.to_float();
    let mut seen = HashSet::new();
    let mut points = Vec::new();
    for face in boundary_faces(n, r) {
        let axes: Vec<Vec<Complex64>> = face
            .iter()
            .map(|&(a, b)| {
                let mut axis = Vec::with_capacity(radial * resolution);
                for i in 0..radial {
                    let rho = a + (b - a) * i as f64 / (radial - 1) as f64;
                    for t in 0..resolution {
                        let theta = std::f64::consts::TAU * t as f64 / resolution as f64;
                        axis.push(Complex64::from_polar(rho, theta));
                    }
                }
                axis
            })
            .collect();
        let mut idx = vec![0usize; n];
        loop {
            let z: Vec<Complex64> = idx.iter().enumerate().map(|(v, &i)| axes[v][i]).collect();
            let image: Vec<Complex64> = symbols.iter().map(|p| p.eval_unchecked(&z)).collect();
            let key: Vec<u64> = image.iter().flat_map(|c| [c.re.to_bits(), c.im.to_bits()]).collect();
            if seen.insert(key) {
                points.push(image);
            }
            let mut v = 0;
            while v < n {
                idx[v] += 1;
                if idx[v] < axes[v].len() {
                    break;
                }
                idx[v] = 0;
                v += 1;
            }
            if v == n {
                break;
            }
        }
    }
    Ok(SpectrumCloud { r, resolution, points })
}
