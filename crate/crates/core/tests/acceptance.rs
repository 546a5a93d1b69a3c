//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

mod common;

use std::time::Instant;

use common::{index_fixtures, k, non_fredholm_fixtures, tuple, z};
use fredholm_toeplitz::cert::{
    essential_spectrum_membership, BoundaryCertificate, CertVerdict, Membership, SpectrumConfig,
};
use fredholm_toeplitz::koszul::{euler_index, homology_sweep, range_sum_check, Estimate, HomologyDims, KoszulConfig};
use fredholm_toeplitz::poly::{ExactPoly, SymbolTuple};
use fredholm_toeplitz::report::{run_index, IndexReport, JobConfig, Verdict};
use fredholm_toeplitz::tensor::{disc_tuple_index, tensor_tuple_index, TensorFactor, TrigPoly, TupleIndex};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

/// Certificates gathered along the way for the soundness audit.
struct Audit {
    items: Vec<(String, Vec<ExactPoly>, BoundaryCertificate)>,
}

fn index_reports() -> (Vec<(&'static str, i64, IndexReport)>, f64) {
    let start = Instant::now();
    let reports = index_fixtures()
        .into_iter()
        .map(|(name, t, expected)| (name, expected, run_index(&t, &JobConfig::default()).expect("index job")))
        .collect();
    (reports, start.elapsed().as_secs_f64())
}

fn criterion_1(reports: &[(&str, i64, IndexReport)], secs: f64) -> Outcome {
    let mut failures = Vec::new();
    for (name, expected, r) in reports {
        let routes = &r.routes;
        let n_max = routes.koszul.as_ref().map_or(0, |k| k.n_range[1]);
        let got = [
            routes.koszul.as_ref().and_then(|k| k.index),
            routes.algebraic.as_ref().and_then(|a| a.index),
            routes.oracle.as_ref().and_then(|o| o.index),
        ];
        if n_max > 12 || got.iter().any(|g| *g != Some(*expected)) {
            failures.push(format!("{name}: expected {expected}, koszul/algebraic/oracle = {got:?}"));
        }
    }
    if secs >= 120.0 || !failures.is_empty() {
        failures.push(format!("runtime {secs:.1} s"));
    }
    if failures.is_empty() {
        Ok(format!("{} fixtures, three routes equal, {secs:.1} s", reports.len()))
    } else {
        Err(failures.join("; "))
    }
}

fn criterion_2(reports: &[(&str, i64, IndexReport)]) -> Outcome {
    let mut failures = Vec::new();
    for (name, _, r) in reports {
        if matches!(r.verdict, Verdict::Agree { .. })
            && r.certificate.as_ref().map(|c| c.verdict) != Some(CertVerdict::Certified)
        {
            failures.push(format!("{name}: agree without certificate"));
        }
    }
    let mut witnesses = Vec::new();
    for (name, t) in non_fredholm_fixtures() {
        let r = run_index(&t, &JobConfig::default()).map_err(|e| e.to_string())?;
        match &r.verdict {
            Verdict::NotFredholm { witness: Some(w), .. } => {
                let value: f64 = t.symbols().iter().map(|p| p.eval(&w.point).unwrap().norm_sqr()).sum();
                if value < 1e-3 {
                    witnesses.push(format!("{name} at Σ|f|² = {value:.1e}"));
                } else {
                    failures.push(format!("{name}: witness value {value}"));
                }
            }
            v => failures.push(format!("{name}: verdict {v:?}")),
        }
    }
    if failures.is_empty() {
        Ok(format!("agree ⇒ certified; not_fredholm for {}", witnesses.join(", ")))
    } else {
        Err(failures.join("; "))
    }
}

fn criterion_3() -> Outcome {
    let cfg = JobConfig::default();
    let mut failures = Vec::new();
    for a in 1..=4u32 {
        for b in 1..=4u32 {
            let factors = TensorFactor::sequential(vec![TrigPoly::monomial(a as i64), TrigPoly::monomial(b as i64)]);
            let formula = tensor_tuple_index(&factors).map_err(|e| e.to_string())?.tuple_index;
            let t = tuple(vec![z(2, 0).pow(a), z(2, 1).pow(b)]);
            let [lo, hi] = cfg.n_range_for(2);
            let koszul = homology_sweep(&t, lo..=hi, &cfg.koszul).map_err(|e| e.to_string())?.index_estimate;
            let expected = -((a * b) as i64);
            if formula != TupleIndex::Value(expected) || koszul != Estimate::Value(expected) {
                failures.push(format!("(z1^{a}, z2^{b}): formula {formula:?}, koszul {koszul:?}"));
            }
        }
    }
    let factors = TensorFactor::sequential(vec![TrigPoly::monomial(1); 3]);
    let formula = tensor_tuple_index(&factors).map_err(|e| e.to_string())?.tuple_index;
    let t = tuple(vec![z(3, 0), z(3, 1), z(3, 2)]);
    let [lo, hi] = cfg.n_range_for(3);
    let koszul = homology_sweep(&t, lo..=hi, &cfg.koszul).map_err(|e| e.to_string())?.index_estimate;
    if formula != TupleIndex::Value(-1) || koszul != Estimate::Value(-1) || hi > 6 {
        failures.push(format!("(z1, z2, z3): formula {formula:?}, koszul {koszul:?} at N ≤ {hi}"));
    }
    if failures.is_empty() {
        Ok("16 monomial pairs and (z1, z2, z3) match".into())
    } else {
        Err(failures.join("; "))
    }
}

fn criterion_4(audit: &mut Audit) -> Outcome {
    let zz = || z(1, 0);
    let cases = vec![
        ("(z, z^2)", vec![zz(), zz().pow(2)]),
        ("(z - 1/2, z + 1/3)", vec![zz().sub(&k(1, 1, 2)), zz().add(&k(1, 1, 3))]),
        ("(z^2, z - 2)", vec![zz().pow(2), zz().sub(&k(1, 2, 1))]),
        ("(z + 3, z)", vec![zz().add(&k(1, 3, 1)), zz()]),
        ("(z^3 - 1/8, z)", vec![zz().pow(3).sub(&k(1, 1, 8)), zz()]),
    ];
    let mut failures = Vec::new();
    for (name, symbols) in &cases {
        let t = tuple(symbols.clone());
        match disc_tuple_index(&t, &Default::default()) {
            Ok(d) => {
                let koszul = d.koszul.as_ref().map(|h| h.index_estimate);
                if d.index != 0 || koszul != Some(Estimate::Value(0)) || d.certificate.verdict != CertVerdict::Certified {
                    failures.push(format!("{name}: formula {}, koszul {koszul:?}", d.index));
                }
                audit.items.push((name.to_string(), symbols.clone(), d.certificate));
            }
            Err(e) => failures.push(format!("{name}: {e}")),
        }
    }
    if failures.is_empty() {
        Ok(format!("{} certified univariate pairs give 0 on both routes", cases.len()))
    } else {
        Err(failures.join("; "))
    }
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> DMatrix<Complex64> {
    DMatrix::from_fn(rows, cols, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut failures = 0;
    for _ in 0..100 {
        let n = rng.gen_range(4..=8);
        let count = rng.gen_range(1..=3);
        let tuple: Vec<DMatrix<Complex64>> = (0..count)
            .map(|_| {
                let rank = rng.gen_range(0..=n);
                random_matrix(&mut rng, n, rank) * random_matrix(&mut rng, rank, n)
            })
            .collect();
        if !range_sum_check(&tuple, 1e-8).map_err(|e| e.to_string())? {
            failures += 1;
        }
    }
    if failures == 0 {
        Ok("100 random tuples satisfy the range identity".into())
    } else {
        Err(format!("{failures} of 100 tuples violate the range identity"))
    }
}

fn criterion_6(audit: &mut Audit) -> Outcome {
    let coords = tuple(vec![z(2, 0), z(2, 1)]);
    let shifted = tuple(vec![z(2, 0).sub(&k(2, 2, 1)), z(2, 1)]);
    let schedule = fredholm_toeplitz::cert::default_r_schedule();
    let cfg = SpectrumConfig::default();
    let zero = [Complex64::new(0.0, 0.0); 2];
    let one = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
    let q1 = essential_spectrum_membership(&coords, &zero, &schedule, &cfg).map_err(|e| e.to_string())?;
    let q2 = essential_spectrum_membership(&coords, &one, &schedule, &cfg).map_err(|e| e.to_string())?;
    let q3 = essential_spectrum_membership(&shifted, &zero, &schedule, &cfg).map_err(|e| e.to_string())?;
    for (name, t, q) in [("(z1, z2) at 0", &coords, &q1), ("(z1 - 2, z2) at 0", &shifted, &q3)] {
        for c in &q.certificates {
            audit.items.push((name.into(), t.symbols().to_vec(), c.clone()));
        }
    }
    let ok = q1.verdict == Membership::Outside
        && !q1.approximate
        && q2.verdict == Membership::Inside
        && q2.approximate
        && q2.distance_estimate < 1e-3
        && q3.verdict == Membership::Outside
        && !q3.approximate;
    let detail = format!(
        "(z1,z2)@0 {:?}, (z1,z2)@(1,0) {:?} at distance {:.1e}, (z1-2,z2)@0 {:?}",
        q1.verdict, q2.verdict, q2.distance_estimate, q3.verdict
    );
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

/// Uniform point in `{z ∈ closed polydisc : max |z_i| ≥ r}`, or in the closed
/// polydisc when `r = 0`.
fn sample_region(rng: &mut ChaCha8Rng, n: usize, r: f64) -> Vec<Complex64> {
    let face = rng.gen_range(0..n);
    (0..n)
        .map(|i| {
            let rho = if i == face { r + (1.0 - r) * rng.gen::<f64>().sqrt() } else { rng.gen::<f64>().sqrt() };
            Complex64::from_polar(rho, rng.gen_range(0.0..std::f64::consts::TAU))
        })
        .collect()
}

fn criterion_7(reports: &[(&str, i64, IndexReport)], audit: &mut Audit) -> Outcome {
    for (name, _, r) in reports {
        let t = index_fixtures().into_iter().find(|f| f.0 == *name).expect("fixture").1;
        for c in &r.certificates {
            audit.items.push((name.to_string(), t.symbols().to_vec(), c.clone()));
        }
        if let Some(red) = &r.reduction {
            audit.items.push((format!("{name} factor"), vec![red.common_factor.clone()], red.certificate.clone()));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut audited = 0;
    let mut violations = Vec::new();
    for (name, symbols, cert) in &audit.items {
        if cert.verdict != CertVerdict::Certified {
            continue;
        }
        audited += 1;
        let n = symbols[0].nvars();
        for _ in 0..10_000 {
            let p = sample_region(&mut rng, n, cert.r);
            let v: f64 = symbols.iter().map(|s| s.eval(&p).unwrap().norm_sqr()).sum();
            if v < cert.c {
                violations.push(format!("{name} at r = {}: {v} < {}", cert.r, cert.c));
                break;
            }
        }
    }
    if violations.is_empty() && audited > 0 {
        Ok(format!("{audited} certified bounds, {} samples, no violations", audited * 10_000))
    } else {
        Err(format!("{audited} audited; {}", violations.join("; ")))
    }
}

fn criterion_8(reports: &[(&str, i64, IndexReport)]) -> Outcome {
    let (again, _) = index_reports();
    let mut differing = Vec::new();
    for ((name, _, a), (_, _, b)) in reports.iter().zip(&again) {
        if a.body().to_string() != b.body().to_string() {
            differing.push(*name);
        }
    }
    if differing.is_empty() {
        Ok(format!("{} report bodies byte-identical across runs", reports.len()))
    } else {
        Err(format!("bodies differ for {differing:?}"))
    }
}

/// An integer estimate must rest on three unambiguous levels with equal Euler characteristic.
fn honest(h: &HomologyDims) -> bool {
    match h.index_estimate {
        Estimate::Unstable => true,
        Estimate::Value(v) => {
            let tail = &h.levels[h.levels.len().saturating_sub(3)..];
            h.stabilized && tail.len() == 3 && tail.iter().all(|l| !l.ambiguous && euler_index(&l.dims) == v)
        }
    }
}

fn criterion_9(reports: &[(&str, i64, IndexReport)]) -> Outcome {
    let mut failures = Vec::new();
    for (name, _, r) in reports {
        if let Some(h) = r.routes.koszul.as_ref().and_then(|k| k.homology.as_ref()) {
            if !honest(h) {
                failures.push(format!("{name}: integer without three agreeing levels"));
            }
        }
    }
    let cfg = KoszulConfig::default();
    let mut unstable = 0;
    let mut runs = 0;
    let z1 = z(2, 0);
    let z2 = z(2, 1);
    let forced: Vec<(&str, SymbolTuple, i64)> = vec![
        ("(z1^2, z2^3)", tuple(vec![z1.pow(2), z2.pow(3)]), -6),
        ("(z1^4, z2^4)", tuple(vec![z1.pow(4), z2.pow(4)]), -16),
        ("(z1 - z2, z1 z2)", tuple(vec![z1.sub(&z2), z1.mul(&z2)]), -2),
    ];
    for (name, t, expected) in &forced {
        for range in [0..=1, 0..=2, 1..=3, 2..=4, 4..=5] {
            let h = homology_sweep(t, range.clone(), &cfg).map_err(|e| e.to_string())?;
            runs += 1;
            match h.index_estimate {
                Estimate::Unstable => unstable += 1,
                Estimate::Value(v) if v != *expected => {
                    failures.push(format!("{name} over {range:?}: wrong integer {v}"))
                }
                Estimate::Value(_) => {}
            }
            if !honest(&h) {
                failures.push(format!("{name} over {range:?}: integer without three agreeing levels"));
            }
        }
    }
    if unstable == 0 {
        failures.push("no forced range reported unstable".into());
    }
    if failures.is_empty() {
        Ok(format!("{unstable} of {runs} forced ranges unstable, no wrong integers"))
    } else {
        Err(failures.join("; "))
    }
}

fn main() {
    let mut audit = Audit { items: Vec::new() };
    let (reports, secs) = index_reports();
    let results: Vec<(u32, Outcome)> = vec![
        (1, criterion_1(&reports, secs)),
        (2, criterion_2(&reports)),
        (3, criterion_3()),
        (4, criterion_4(&mut audit)),
        (5, criterion_5()),
        (6, criterion_6(&mut audit)),
        (7, criterion_7(&reports, &mut audit)),
        (8, criterion_8(&reports)),
        (9, criterion_9(&reports)),
    ];
    let mut failed = 0;
    for (n, r) in &results {
        match r {
            Ok(d) => println!("PASS criterion {n}: {d}"),
            Err(d) => {
                failed += 1;
                println!("FAIL criterion {n}: {d}")
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
