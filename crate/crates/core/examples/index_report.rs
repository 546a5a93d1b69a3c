// Full index job from an input file, as the command-line tool runs it:
// certificate, every applicable route, verdict, and a cached replay.

use fredholm_toeplitz::report::{run_job, Command, Job, JobOutput};

const INPUT: &str = r#"{
  "nvars": 2,
  "symbols": [
    {"terms": [{"exp": [2, 0], "re": "1"}]},
    {"terms": [{"exp": [0, 3], "re": "1"}]}
  ]
}"#;

pub fn run_example() -> fredholm_toeplitz::Result<JobOutput> {
    let dir = tempfile::tempdir()?;
    let input = dir.path().join("pair.json");
    std::fs::write(&input, INPUT)?;
    let job = Job::new(Command::Index, &input);
    let first = run_job(&job)?;
    let report: serde_json::Value = serde_json::from_str(&first.text)?;
    println!("verdict: {}", report["verdict"]);
    for route in ["koszul", "algebraic", "oracle", "tensor"] {
        println!("  {route:9} index {}", report["routes"][route]["index"]);
    }
    let replay = run_job(&job)?;
    println!("exit code {}, replayed from cache: {}", first.exit_code, replay.cache_hit);
    Ok(replay)
}

#[allow(dead_code)]
fn main() -> fredholm_toeplitz::Result<()> {
    run_example().map(|_| ())
}
