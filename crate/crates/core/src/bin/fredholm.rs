use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fredholm_toeplitz::report::{default_cache_dir, error_exit_code, exit, run_job, Command, Emit, Job, JobConfig};

#[derive(Parser)]
#[command(name = "fredholm", version, about = "Fredholmness and index of Toeplitz tuples on the polydisc")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Certificate, then every applicable index route, then an agreement verdict.
    Index(Opts),
    /// Essential-spectrum membership of `lambda`, or a sampled cloud.
    Spectrum(Opts),
    /// Lower bound of Σ|f_i|² near the boundary.
    Certify(Opts),
    /// Windowed homology dimensions of the truncated Koszul complex.
    KoszulDims(Opts),
    /// Product formula for tuples of one-variable symbols.
    Tensor(Opts),
}

#[derive(Clone, Copy, ValueEnum)]
enum EmitArg {
    Json,
    Csv,
}

#[derive(Args)]
struct Opts {
    #[arg(long, value_name = "FILE")]
    input: PathBuf,
    /// JSON file with numeric parameters; flags override it.
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Truncation caps, e.g. `4..6`.
    #[arg(long, value_name = "A..B", value_parser = parse_range)]
    n_range: Option<[u32; 2]>,
    #[arg(long, value_name = "X")]
    rank_tol: Option<f64>,
    #[arg(long, value_name = "X")]
    r: Option<f64>,
    #[arg(long, value_name = "X")]
    mesh: Option<f64>,
    #[arg(long, value_name = "S")]
    seed: Option<u64>,
    /// Cache directory; defaults to `.fredholm-cache` beside the input.
    #[arg(long, value_name = "DIR")]
    cache: Option<PathBuf>,
    #[arg(long, conflicts_with = "cache")]
    no_cache: bool,
    #[arg(long, value_enum, default_value = "json")]
    emit: EmitArg,
    /// Write the boundary matrices of the first truncation level (koszul-dims).
    #[arg(long, value_name = "FILE", num_args = 0..=1)]
    dump_matrices: Option<Option<PathBuf>>,
}

fn parse_range(s: &str) -> Result<[u32; 2], String> {
    let (a, b) = s.split_once("..").ok_or("expected A..B")?;
    let a = a.trim().parse().map_err(|e| format!("{a}: {e}"))?;
    let b = b.trim().parse().map_err(|e| format!("{b}: {e}"))?;
    if a > b {
        return Err(format!("empty range {a}..{b}"));
    }
    Ok([a, b])
}

fn build_job(command: Command, o: Opts) -> fredholm_toeplitz::Result<Job> {
    let mut config = match &o.config {
        Some(p) => JobConfig::from_file(p)?,
        None => JobConfig::default(),
    };
    if o.n_range.is_some() {
        config.n_range = o.n_range;
    }
    if let Some(t) = o.rank_tol {
        config.koszul.rank_tolerance = t;
    }
    if o.r.is_some() {
        config.r = o.r;
    }
    if o.mesh.is_some() {
        config.cert.target_mesh = o.mesh;
    }
    if let Some(s) = o.seed {
        config.seed = s;
    }
    let cache_dir = if o.no_cache {
        None
    } else {
        Some(o.cache.unwrap_or_else(|| default_cache_dir(&o.input)))
    };
    let dump_matrices = o
        .dump_matrices
        .map(|p| p.unwrap_or_else(|| o.input.with_extension("matrices.txt")));
    Ok(Job {
        command,
        input: o.input,
        config,
        emit: match o.emit {
            EmitArg::Json => Emit::Json,
            EmitArg::Csv => Emit::Csv,
        },
        dump_matrices,
        cache_dir,
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit::USAGE as u8 } else { 0 });
        }
    };
    let (command, opts) = match cli.command {
        Sub::Index(o) => (Command::Index, o),
        Sub::Spectrum(o) => (Command::Spectrum, o),
        Sub::Certify(o) => (Command::Certify, o),
        Sub::KoszulDims(o) => (Command::KoszulDims, o),
        Sub::Tensor(o) => (Command::Tensor, o),
    };
    let result = build_job(command, opts).and_then(|job| run_job(&job));
    match result {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.exit_code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(error_exit_code(&e) as u8)
        }
    }
}
