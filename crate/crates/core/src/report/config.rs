//! Job configuration shared by every subcommand.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::algebraic::AlgebraicConfig;
use crate::cert::{default_r_schedule, CertConfig, SpectrumConfig};
use crate::error::{Error, Result};
use crate::koszul::KoszulConfig;
use crate::oracle::OracleConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Index,
    Spectrum,
    Certify,
    KoszulDims,
    Tensor,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Index => "index",
            Command::Spectrum => "spectrum",
            Command::Certify => "certify",
            Command::KoszulDims => "koszul-dims",
            Command::Tensor => "tensor",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Emit {
    #[default]
    Json,
    Csv,
}

/// Numeric parameters of a job. Everything here enters the cache key.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct JobConfig {
    /// Observation caps for the Koszul route; `None` picks one by variable count.
    pub n_range: Option<[u32; 2]>,
    pub koszul: KoszulConfig,
    pub oracle: OracleConfig,
    pub cert: CertConfig,
    /// Radius for `certify` and spectrum clouds.
    pub r: Option<f64>,
    /// Radii tried in order by `index` and spectrum membership.
    pub r_schedule: Vec<f64>,
    pub boundary_margin: f64,
    pub cluster_radius: f64,
    pub distance_tolerance: f64,
    /// Spectral parameter; without it `spectrum` samples a cloud.
    pub lambda: Option<Vec<[f64; 2]>>,
    pub resolution: usize,
    pub max_points: usize,
    pub seed: u64,
}

impl Default for JobConfig {
    fn default() -> Self {
        Self {
            n_range: None,
            koszul: KoszulConfig::default(),
            oracle: OracleConfig::default(),
            cert: CertConfig::default(),
            r: None,
            r_schedule: default_r_schedule(),
            boundary_margin: 1e-6,
            cluster_radius: 1e-7,
            distance_tolerance: 1e-3,
            lambda: None,
            resolution: 32,
            max_points: 4_000_000,
            seed: 0,
        }
    }
}

impl JobConfig {
    /// Reads a JSON config file; absent fields keep their defaults.
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(|e| {
            Error::parse(
                path.display().to_string(),
                format!("line {}, column {}: {e}", e.line(), e.column()),
            )
        })
    }

    pub fn validate(&self) -> Result<()> {
        self.koszul.validate()?;
        self.oracle.validate()?;
        self.cert.validate()?;
        for t in [self.boundary_margin, self.cluster_radius, self.distance_tolerance] {
            if !(t > 0.0 && t.is_finite()) {
                return Err(Error::InvalidTolerance(t));
            }
        }
        if let Some([a, b]) = self.n_range {
            if a > b {
                return Err(Error::Unsupported(format!("empty truncation range {a}..{b}")));
            }
        }
        for &r in self.r.iter().chain(&self.r_schedule) {
            if !(r > 0.0 && r < 1.0) {
                return Err(Error::RadiusOutOfRange(r));
            }
        }
        if self.r_schedule.is_empty() {
            return Err(Error::Unsupported("empty radius schedule".into()));
        }
        Ok(())
    }

    /// Observation caps: the configured range, or three levels sized for
    /// the variable count.
    pub fn n_range_for(&self, nvars: usize) -> [u32; 2] {
        self.n_range.unwrap_or(match nvars {
            1 => [24, 26],
            2 => [4, 6],
            _ => [2, 4],
        })
    }

    /// Oracle settings with the job seed applied.
    pub fn oracle(&self) -> OracleConfig {
        OracleConfig {
            seed: self.seed,
            boundary_margin: self.boundary_margin,
            ..self.oracle
        }
    }

    pub fn algebraic(&self) -> AlgebraicConfig {
        AlgebraicConfig {
            boundary_margin: self.boundary_margin,
            cluster_radius: self.cluster_radius,
            certify: false,
            cross_check: false,
            oracle: self.oracle(),
            cert: self.cert,
        }
    }

    pub fn spectrum(&self) -> SpectrumConfig {
        SpectrumConfig {
            distance_tolerance: self.distance_tolerance,
            cert: self.cert,
        }
    }
}

/// A complete job: what to run, on which input, with which parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct Job {
    pub command: Command,
    pub input: PathBuf,
    pub config: JobConfig,
    pub emit: Emit,
    /// Write the boundary matrices of the first truncation level here.
    pub dump_matrices: Option<PathBuf>,
    /// `None` disables caching.
    pub cache_dir: Option<PathBuf>,
}

impl Job {
    /// Job with default parameters and the cache directory beside the input.
    pub fn new(command: Command, input: impl Into<PathBuf>) -> Self {
        let input = input.into();
        let cache_dir = Some(default_cache_dir(&input));
        Self {
            command,
            input,
            config: JobConfig::default(),
            emit: Emit::Json,
            dump_matrices: None,
            cache_dir,
        }
    }
}

pub fn default_cache_dir(input: &Path) -> PathBuf {
    input
        .parent()
        .filter(|p| !p.as_os_str().is_empty())
        .unwrap_or(Path::new("."))
        .join(".fredholm-cache")
}
