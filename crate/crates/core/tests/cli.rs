//! End-to-end runs of the `fredholm` binary.

use std::path::{Path, PathBuf};
use std::process::Command;

const COORDS: &str = r#"{"nvars": 2, "symbols": [
  {"terms": [{"exp": [1, 0], "re": "1"}]},
  {"terms": [{"exp": [0, 1], "re": "1"}]}]}"#;

const REPEATED: &str = r#"{"nvars": 2, "symbols": [
  {"terms": [{"exp": [1, 0], "re": "1"}]},
  {"terms": [{"exp": [1, 0], "re": "1"}]}]}"#;

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_fredholm")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(text: &str) -> serde_json::Value {
    serde_json::from_str(text).unwrap()
}

#[test]
fn index_agrees_and_caches() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "coords.json", COORDS);
    let input = input.to_str().unwrap();
    let (code, out, _) = run(&["index", "--input", input, "--seed", "3"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["seed"], 3);
    assert_eq!(v["verdict"]["kind"], "agree");
    assert_eq!(v["verdict"]["index"], -1);
    assert_eq!(v["certificate"]["verdict"], "certified");
    assert!(dir.path().join(".fredholm-cache").is_dir());
    let (code2, out2, _) = run(&["index", "--input", input, "--seed", "3"]);
    assert_eq!((code2, out2), (0, out));
}

#[test]
fn index_not_fredholm_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "rep.json", REPEATED);
    let (code, out, _) = run(&["index", "--input", input.to_str().unwrap(), "--no-cache"]);
    assert_eq!(code, 2);
    let v = json(&out);
    assert_eq!(v["verdict"]["kind"], "not_fredholm");
    assert!(v["verdict"]["witness"]["point"].is_array());
}

#[test]
fn parse_error_is_located() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "bad.json", "{\"nvars\": 2,\n \"symbols\": [{\"terms\": [{\"exp\": [1, 0], \"re\": \"1/0\"}]}]}");
    let (code, _, err) = run(&["index", "--input", input.to_str().unwrap(), "--no-cache"]);
    assert_eq!(code, 1);
    assert!(err.contains("symbols[0].terms[0].re"), "{err}");
    let cfg = write(dir.path(), "cfg.json", "{\n  \"seeed\": 1\n}");
    let input = write(dir.path(), "ok.json", COORDS);
    let (code, _, err) = run(&["certify", "--input", input.to_str().unwrap(), "--config", cfg.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn certify_and_spectrum_query() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "coords.json", COORDS);
    let input = input.to_str().unwrap();
    let (code, out, _) = run(&["certify", "--input", input, "--r", "0.5", "--no-cache"]);
    assert_eq!(code, 0);
    let c = json(&out)["certificates"][0]["c"].as_f64().unwrap();
    assert!(c > 0.2 && c <= 0.25);

    let with_lambda = COORDS.replacen('{', r#"{"lambda": [{"re": 1}, {"re": 0}], "#, 1);
    let q = write(dir.path(), "q.json", &with_lambda);
    let (code, out, _) = run(&["spectrum", "--input", q.to_str().unwrap(), "--no-cache"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["spectrum"]["verdict"], "inside");
    assert_eq!(v["spectrum"]["approximate"], true);
}

#[test]
fn spectrum_cloud_csv_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "coords.json", COORDS);
    let args = ["spectrum", "--input", input.to_str().unwrap(), "--r", "0.9", "--emit", "csv", "--no-cache"];
    let (code, a, _) = run(&args);
    let (_, b, _) = run(&args);
    assert_eq!(code, 0);
    assert_eq!(a, b);
    assert!(a.starts_with("re1,im1,re2,im2\n"));
    let (code, _, _) = run(&["index", "--input", input.to_str().unwrap(), "--emit", "csv", "--no-cache"]);
    assert_eq!(code, 1);
}

#[test]
fn koszul_dims_unstable_range_and_dump() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "coords.json", COORDS);
    let input = input.to_str().unwrap();
    let (code, out, _) = run(&["koszul-dims", "--input", input, "--n-range", "2..3", "--dump-matrices", "--no-cache"]);
    assert_eq!(code, 3);
    assert_eq!(json(&out)["homology"]["index_estimate"], "unstable");
    let dump = std::fs::read_to_string(dir.path().join("coords.matrices.txt")).unwrap();
    assert!(!dump.is_empty());
    let (code, out, _) = run(&["koszul-dims", "--input", input, "--n-range", "3..5", "--rank-tol", "1e-9"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["homology"]["index_estimate"], -1);
}

#[test]
fn tensor_factors() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(
        dir.path(),
        "t.json",
        r#"{"factors": [{"var": 0, "fourier": [{"k": 2, "re": 1}]}, {"var": 1, "fourier": [{"k": 3, "re": 1}]}]}"#,
    );
    let (code, out, _) = run(&["tensor", "--input", input.to_str().unwrap(), "--no-cache"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["tensor"]["tuple_index"], -6);
}

#[test]
fn usage_errors_exit_with_one() {
    let (code, _, _) = run(&["index"]);
    assert_eq!(code, 1);
    let (code, _, _) = run(&["index", "--input", "x.json", "--n-range", "5..2"]);
    assert_eq!(code, 1);
    let (code, _, _) = run(&["index", "--input", "/nonexistent/x.json", "--no-cache"]);
    assert_eq!(code, 1);
}
