//! Report documents emitted by the subcommands.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

use super::config::{Command, JobConfig};
use crate::algebraic::{GcdReduction, ZeroSet};
use crate::cert::{BoundaryCertificate, CertVerdict, SpectrumCloud, SpectrumQuery, Witness};
use crate::koszul::HomologyDims;
use crate::oracle::OracleVote;
use crate::tensor::{DiscIndexReport, TensorIndexReport};

pub const SCHEMA_VERSION: u32 = 1;

/// Exit codes of the command-line contract.
pub mod exit {
    pub const AGREE: i32 = 0;
    pub const USAGE: i32 = 1;
    pub const NOT_FREDHOLM: i32 = 2;
    pub const NOT_CERTIFIABLE: i32 = 3;
    pub const DISAGREE: i32 = 4;
}

/// Fields shared by every report.
#[derive(Debug, Clone, Serialize)]
pub struct Header {
    pub schema_version: u32,
    pub command: Command,
    pub toolkit_version: &'static str,
    pub seed: u64,
    pub input: Value,
    pub config: JobConfig,
}

impl Header {
    pub fn new(command: Command, input: Value, config: &JobConfig) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            command,
            toolkit_version: env!("CARGO_PKG_VERSION"),
            seed: config.seed,
            input,
            config: config.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    Agree { index: i64 },
    Disagree { details: String },
    NotFredholm { reason: String, witness: Option<Witness> },
    NotCertifiable { reason: String },
}

impl Verdict {
    pub fn exit_code(&self) -> i32 {
        match self {
            Verdict::Agree { .. } => exit::AGREE,
            Verdict::Disagree { .. } => exit::DISAGREE,
            Verdict::NotFredholm { .. } => exit::NOT_FREDHOLM,
            Verdict::NotCertifiable { .. } => exit::NOT_CERTIFIABLE,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct KoszulRoute {
    pub n_range: [u32; 2],
    pub homology: Option<HomologyDims>,
    pub index: Option<i64>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AlgebraicRoute {
    pub zeros: Option<ZeroSet>,
    pub index: Option<i64>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleRoute {
    pub seed: u64,
    pub vote: Option<OracleVote>,
    pub index: Option<i64>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TensorRoute {
    pub report: Option<TensorIndexReport>,
    pub index: Option<i64>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DiscRoute {
    pub report: Option<DiscIndexReport>,
    pub index: Option<i64>,
    pub error: Option<String>,
}

/// Routes that apply to the input; the others stay `null`.
#[derive(Debug, Clone, Default, Serialize)]
pub struct Routes {
    pub koszul: Option<KoszulRoute>,
    pub algebraic: Option<AlgebraicRoute>,
    pub oracle: Option<OracleRoute>,
    pub tensor: Option<TensorRoute>,
    pub disc: Option<DiscRoute>,
}

impl Routes {
    /// `(name, index, error)` for every applicable route.
    pub fn outcomes(&self) -> Vec<(&'static str, Option<i64>, Option<&str>)> {
        let mut out = Vec::new();
        if let Some(r) = &self.koszul {
            out.push(("koszul", r.index, r.error.as_deref()));
        }
        if let Some(r) = &self.algebraic {
            out.push(("algebraic", r.index, r.error.as_deref()));
        }
        if let Some(r) = &self.oracle {
            out.push(("oracle", r.index, r.error.as_deref()));
        }
        if let Some(r) = &self.tensor {
            out.push(("tensor", r.index, r.error.as_deref()));
        }
        if let Some(r) = &self.disc {
            out.push(("disc", r.index, r.error.as_deref()));
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct IndexReport {
    #[serde(flatten)]
    pub header: Header,
    /// Every certificate computed, in schedule order.
    pub certificates: Vec<BoundaryCertificate>,
    /// The certificate the verdict rests on.
    pub certificate: Option<BoundaryCertificate>,
    pub reduction: Option<GcdReduction>,
    pub routes: Routes,
    pub verdict: Verdict,
    /// Wall-clock time per stage; not part of the deterministic body.
    pub timings_ms: BTreeMap<String, u64>,
}

impl IndexReport {
    /// Panics if an `agree` verdict lacks a certified certificate.
    pub fn assert_sound(&self) {
        if let Verdict::Agree { .. } = self.verdict {
            let certified = self
                .certificate
                .as_ref()
                .is_some_and(|c| c.verdict == CertVerdict::Certified);
            assert!(certified, "agree verdict without a certified boundary bound");
        }
    }

    /// The report without timings; byte-identical across runs with the same input and config.
    pub fn body(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        v.as_object_mut().expect("object").remove("timings_ms");
        v
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CertifyReport {
    #[serde(flatten)]
    pub header: Header,
    pub certificates: Vec<BoundaryCertificate>,
    pub verdict: CertVerdict,
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum SpectrumResult {
    Query(SpectrumQuery),
    Cloud(SpectrumCloud),
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumReport {
    #[serde(flatten)]
    pub header: Header,
    pub spectrum: SpectrumResult,
}

#[derive(Debug, Clone, Serialize)]
pub struct KoszulReport {
    #[serde(flatten)]
    pub header: Header,
    pub n_range: [u32; 2],
    pub homology: HomologyDims,
}

#[derive(Debug, Clone, Serialize)]
pub struct TensorReport {
    #[serde(flatten)]
    pub header: Header,
    pub tensor: TensorIndexReport,
}
