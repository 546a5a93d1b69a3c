//! Subcommand pipelines and the job driver.

use std::collections::BTreeMap;
use std::time::Instant;

use num_complex::Complex64;
use serde::Serialize;

use super::cache::{cache_key, Cache};
use super::config::{Command, Emit, Job, JobConfig};
use super::input::{read_input, JobInput, ParsedInput};
use super::model::*;
use crate::algebraic::{common_zeros, gcd_reduce, zero_dimensionality, Dimensionality};
use crate::cert::{
    boundary_lower_bound, essential_spectrum_cloud, essential_spectrum_membership, BoundaryCertificate, CertVerdict,
    Membership,
};
use crate::error::{Error, Result};
use crate::koszul::{build_koszul, dump_matrices, homology_sweep};
use crate::oracle::perturbed_vote;
use crate::poly::json::tuple_to_value;
use crate::poly::SymbolTuple;
use crate::tensor::{disc_tuple_index, separated_tuple_index, tensor_tuple_index, TensorIndexReport, TupleIndex};

/// Exit code for an error that aborted a job.
pub fn error_exit_code(e: &Error) -> i32 {
    match e {
        Error::NotFredholm(_) => exit::NOT_FREDHOLM,
        Error::NotCertifiable(_)
        | Error::BudgetExceeded { .. }
        | Error::ContourVanishing { .. }
        | Error::NonIntegerWinding { .. }
        | Error::ClusterAmbiguity { .. }
        | Error::WindowOverflow { .. }
        | Error::Factorization(_) => exit::NOT_CERTIFIABLE,
        Error::Oracle(_) => exit::DISAGREE,
        _ => exit::USAGE,
    }
}

struct Stopwatch(BTreeMap<String, u64>);

impl Stopwatch {
    fn time<T>(&mut self, stage: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.0.insert(stage.into(), start.elapsed().as_millis() as u64);
        out
    }
}

fn radii(cfg: &JobConfig) -> Vec<f64> {
    cfg.r.map_or_else(|| cfg.r_schedule.clone(), |r| vec![r])
}

/// Boundary certificates along the radius schedule, stopping at the first certified one.
fn certificate_schedule(tuple: &SymbolTuple, cfg: &JobConfig) -> Result<Vec<BoundaryCertificate>> {
    let mut certs = Vec::new();
    for r in radii(cfg) {
        let c = boundary_lower_bound(tuple, r, &cfg.cert)?;
        let done = c.verdict == CertVerdict::Certified;
        certs.push(c);
        if done {
            break;
        }
    }
    Ok(certs)
}

fn split<T>(r: Result<T>, index: impl Fn(&T) -> Option<i64>) -> (Option<T>, Option<i64>, Option<String>) {
    match r {
        Ok(v) => {
            let i = index(&v);
            (Some(v), i, None)
        }
        Err(e) => (None, None, Some(e.to_string())),
    }
}

fn tensor_value(t: &TensorIndexReport) -> Option<i64> {
    match t.tuple_index {
        TupleIndex::Value(v) => Some(v),
        TupleIndex::Undefined => None,
    }
}

fn koszul_route(tuple: &SymbolTuple, cfg: &JobConfig) -> KoszulRoute {
    let n_range = cfg.n_range_for(tuple.nvars());
    let (homology, index, error) = split(homology_sweep(tuple, n_range[0]..=n_range[1], &cfg.koszul), |h| {
        h.index_estimate.value()
    });
    let error = error.or_else(|| {
        index.is_none().then(|| format!("no three agreeing levels in {}..{}", n_range[0], n_range[1]))
    });
    KoszulRoute {
        n_range,
        homology,
        index,
        error,
    }
}

/// Combines route results into a verdict; disagreement outranks missing values.
fn combine(routes: &Routes) -> Verdict {
    let outcomes = routes.outcomes();
    let values: Vec<(&str, i64)> = outcomes.iter().filter_map(|&(n, i, _)| i.map(|i| (n, i))).collect();
    if values.windows(2).any(|w| w[0].1 != w[1].1) {
        let details = values.iter().map(|(n, i)| format!("{n}={i}")).collect::<Vec<_>>().join(", ");
        return Verdict::Disagree { details };
    }
    let missing: Vec<String> = outcomes
        .iter()
        .filter(|(_, i, _)| i.is_none())
        .map(|(n, _, e)| format!("{n}: {}", e.unwrap_or("no value")))
        .collect();
    match (values.first(), missing.is_empty()) {
        (Some(&(_, index)), true) => Verdict::Agree { index },
        (None, true) => Verdict::NotCertifiable {
            reason: "no route applies to this input".into(),
        },
        _ => Verdict::NotCertifiable {
            reason: missing.join("; "),
        },
    }
}

/// Certificate first, then every applicable index route, then the verdict.
///
/// Routes: windowed Koszul homology always; for pairs in two variables the
/// common-zero count and the perturbed oracle, after dividing out a common
/// factor; the product formula when each symbol uses its own variable; and
/// the disc formula for one variable.
pub fn run_index(tuple: &SymbolTuple, cfg: &JobConfig) -> Result<IndexReport> {
    cfg.validate()?;
    let mut clock = Stopwatch(BTreeMap::new());
    let header = Header::new(Command::Index, tuple_to_value(tuple), cfg);
    let certificates = clock.time("certificate", || certificate_schedule(tuple, cfg))?;
    let certificate = certificates.last().cloned();
    let mut report = IndexReport {
        header,
        certificates,
        certificate: certificate.clone(),
        reduction: None,
        routes: Routes::default(),
        verdict: Verdict::NotCertifiable { reason: String::new() },
        timings_ms: BTreeMap::new(),
    };
    let certificate = certificate.expect("validated schedule is nonempty");
    match certificate.verdict {
        CertVerdict::Certified => {}
        CertVerdict::Failed => {
            report.verdict = Verdict::NotFredholm {
                reason: format!("Σ|f_i|² vanishes numerically on the boundary region at r = {}", certificate.r),
                witness: certificate.witness.clone(),
            };
        }
        CertVerdict::Inconclusive => {
            report.verdict = Verdict::NotCertifiable {
                reason: format!("boundary lower bound inconclusive up to r = {}", certificate.r),
            };
        }
    }
    if certificate.verdict != CertVerdict::Certified {
        report.timings_ms = clock.0;
        return Ok(report);
    }

    let mut routes = Routes {
        koszul: Some(clock.time("koszul", || koszul_route(tuple, cfg))),
        ..Default::default()
    };
    if tuple.nvars() == 2 && tuple.len() == 2 {
        let mut reduced = tuple.clone();
        let mut blocked = None;
        match zero_dimensionality(tuple) {
            Ok(Dimensionality::ZeroDimensional) => {}
            Ok(Dimensionality::CommonFactor(_)) => match gcd_reduce(tuple, &cfg.cert) {
                Ok(red) => {
                    if red.factor_zero_free_on_closed_polydisc {
                        reduced = red.reduced_tuple.clone();
                    } else {
                        blocked = Some(format!("common factor {} vanishes on the closed bidisc", red.common_factor));
                    }
                    report.reduction = Some(red);
                }
                Err(e) => blocked = Some(e.to_string()),
            },
            Ok(Dimensionality::Degenerate) => blocked = Some("a symbol is identically zero".into()),
            Err(e) => blocked = Some(e.to_string()),
        }
        let alg_cfg = cfg.algebraic();
        routes.algebraic = Some(clock.time("algebraic", || {
            let result = match &blocked {
                Some(b) => Err(Error::NotFredholm(b.clone())),
                None => common_zeros(&reduced, &alg_cfg).and_then(|zs| {
                    if zs.degenerate {
                        Err(Error::NotCertifiable("a common zero lies within the boundary margin".into()))
                    } else {
                        Ok(zs)
                    }
                }),
            };
            let (zeros, index, error) = split(result, |zs| Some(-(zs.total_inside as i64)));
            AlgebraicRoute { zeros, index, error }
        }));
        let oracle_cfg = cfg.oracle();
        routes.oracle = Some(clock.time("oracle", || {
            let result = match &blocked {
                Some(b) => Err(Error::NotFredholm(b.clone())),
                None => perturbed_vote(&reduced, &oracle_cfg),
            };
            let (vote, index, error) = split(result, |v| Some(-(v.count as i64)));
            OracleRoute {
                seed: oracle_cfg.seed,
                vote,
                index,
                error,
            }
        }));
    }
    if tuple.nvars() >= 2 {
        let t = clock.time("tensor", || separated_tuple_index(tuple));
        routes.tensor = match t {
            Ok(None) => None,
            Ok(Some(rep)) => {
                let index = tensor_value(&rep);
                Some(TensorRoute {
                    error: index.is_none().then(|| "tuple index undefined".into()),
                    report: Some(rep),
                    index,
                })
            }
            Err(e) => Some(TensorRoute {
                report: None,
                index: None,
                error: Some(e.to_string()),
            }),
        };
    } else {
        routes.disc = Some(clock.time("disc", || {
            let (report, index, error) = split(disc_tuple_index(tuple, &cfg.cert), |d| Some(d.index));
            DiscRoute { report, index, error }
        }));
    }
    report.verdict = combine(&routes);
    report.routes = routes;
    report.timings_ms = clock.0;
    report.assert_sound();
    Ok(report)
}

/// Boundary certificates along the configured radius (or schedule).
pub fn run_certify(tuple: &SymbolTuple, cfg: &JobConfig) -> Result<CertifyReport> {
    cfg.validate()?;
    let certificates = certificate_schedule(tuple, cfg)?;
    let verdict = certificates.last().expect("nonempty schedule").verdict;
    Ok(CertifyReport {
        header: Header::new(Command::Certify, tuple_to_value(tuple), cfg),
        certificates,
        verdict,
    })
}

/// Membership query when `lambda` is given, otherwise a cloud at `cfg.r` (default 0.9).
pub fn run_spectrum(tuple: &SymbolTuple, lambda: Option<&[Complex64]>, cfg: &JobConfig) -> Result<SpectrumReport> {
    cfg.validate()?;
    let from_cfg: Option<Vec<Complex64>> = cfg
        .lambda
        .as_ref()
        .map(|l| l.iter().map(|&[re, im]| Complex64::new(re, im)).collect());
    let lambda = lambda.map(<[Complex64]>::to_vec).or(from_cfg);
    let spectrum = match &lambda {
        Some(l) => SpectrumResult::Query(essential_spectrum_membership(tuple, l, &radii(cfg), &cfg.spectrum())?),
        None => SpectrumResult::Cloud(essential_spectrum_cloud(
            tuple,
            cfg.r.unwrap_or(0.9),
            cfg.resolution,
            cfg.max_points,
        )?),
    };
    let mut input = tuple_to_value(tuple);
    if let Some(l) = &lambda {
        input["lambda"] = serde_json::json!(l.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>());
    }
    Ok(SpectrumReport {
        header: Header::new(Command::Spectrum, input, cfg),
        spectrum,
    })
}

/// Windowed Koszul homology over the configured (or default) truncation range.
pub fn run_koszul_dims(tuple: &SymbolTuple, cfg: &JobConfig) -> Result<KoszulReport> {
    cfg.validate()?;
    let n_range = cfg.n_range_for(tuple.nvars());
    let homology = homology_sweep(tuple, n_range[0]..=n_range[1], &cfg.koszul)?;
    Ok(KoszulReport {
        header: Header::new(Command::KoszulDims, tuple_to_value(tuple), cfg),
        n_range,
        homology,
    })
}

/// Product formula for tensor factors, or for an analytic tuple with separated variables.
pub fn run_tensor(input: &ParsedInput, cfg: &JobConfig) -> Result<TensorReport> {
    cfg.validate()?;
    let tensor = match &input.input {
        JobInput::Tensor(factors) => tensor_tuple_index(factors)?,
        JobInput::Tuple(t) => separated_tuple_index(t)?
            .ok_or_else(|| Error::Unsupported("symbols do not depend on distinct single variables".into()))?,
    };
    Ok(TensorReport {
        header: Header::new(Command::Tensor, input.canonical.clone(), cfg),
        tensor,
    })
}

/// Text printed by a job and the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JobOutput {
    pub text: String,
    pub exit_code: i32,
    pub cache_hit: bool,
}

fn json_text<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

fn tuple_of(input: &ParsedInput) -> Result<&SymbolTuple> {
    match &input.input {
        JobInput::Tuple(t) => Ok(t),
        JobInput::Tensor(_) => Err(Error::Unsupported(
            "tensor factor input is only accepted by the tensor subcommand".into(),
        )),
    }
}

fn execute(job: &Job, input: &ParsedInput) -> Result<(i32, String)> {
    let cfg = &job.config;
    if job.emit == Emit::Csv && job.command != Command::Spectrum {
        return Err(Error::Unsupported("CSV output is only available for spectrum clouds".into()));
    }
    match job.command {
        Command::Index => {
            let r = run_index(tuple_of(input)?, cfg)?;
            Ok((r.verdict.exit_code(), json_text(&r)))
        }
        Command::Certify => {
            let r = run_certify(tuple_of(input)?, cfg)?;
            let code = match r.verdict {
                CertVerdict::Certified => exit::AGREE,
                CertVerdict::Failed => exit::NOT_FREDHOLM,
                CertVerdict::Inconclusive => exit::NOT_CERTIFIABLE,
            };
            Ok((code, json_text(&r)))
        }
        Command::Spectrum => {
            let r = run_spectrum(tuple_of(input)?, input.lambda.as_deref(), cfg)?;
            match (&r.spectrum, job.emit) {
                (SpectrumResult::Cloud(c), Emit::Csv) => Ok((exit::AGREE, c.to_csv())),
                (SpectrumResult::Query(_), Emit::Csv) => {
                    Err(Error::Unsupported("CSV output is only available for spectrum clouds".into()))
                }
                (SpectrumResult::Query(q), Emit::Json) => {
                    let code = if q.verdict == Membership::Inconclusive {
                        exit::NOT_CERTIFIABLE
                    } else {
                        exit::AGREE
                    };
                    Ok((code, json_text(&r)))
                }
                (SpectrumResult::Cloud(_), Emit::Json) => Ok((exit::AGREE, json_text(&r))),
            }
        }
        Command::KoszulDims => {
            let tuple = tuple_of(input)?;
            if let Some(path) = &job.dump_matrices {
                let kt = build_koszul(tuple, cfg.n_range_for(tuple.nvars())[0], cfg.koszul)?;
                let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
                dump_matrices(&kt, &mut out)?;
            }
            let r = run_koszul_dims(tuple, cfg)?;
            let code = if r.homology.stabilized { exit::AGREE } else { exit::NOT_CERTIFIABLE };
            Ok((code, json_text(&r)))
        }
        Command::Tensor => {
            let r = run_tensor(input, cfg)?;
            let code = if r.tensor.tuple_fredholm { exit::AGREE } else { exit::NOT_FREDHOLM };
            Ok((code, json_text(&r)))
        }
    }
}

/// Runs a job, consulting the cache unless it is disabled or matrices are dumped.
pub fn run_job(job: &Job) -> Result<JobOutput> {
    job.config.validate()?;
    let input = read_input(&job.input)?;
    let key = cache_key(job.command, job.emit, &job.config, &input.canonical);
    let cache = job
        .cache_dir
        .as_ref()
        .filter(|_| job.dump_matrices.is_none())
        .map(Cache::new);
    if let Some((exit_code, text)) = cache.as_ref().and_then(|c| c.get(&key)) {
        return Ok(JobOutput {
            text,
            exit_code,
            cache_hit: true,
        });
    }
    let (exit_code, text) = execute(job, &input)?;
    if let Some(c) = &cache {
        if let Err(e) = c.put(&key, exit_code, &text) {
            eprintln!("warning: could not write cache entry in {}: {e}", c.dir().display());
        }
    }
    Ok(JobOutput {
        text,
        exit_code,
        cache_hit: false,
    })
}
