//! Job configuration, input files, report documents, caching, and the
//! subcommand pipelines behind the command-line tool.

mod cache;
mod config;
mod input;
mod model;
mod run;

pub use cache::{cache_key, Cache};
pub use config::{default_cache_dir, Command, Emit, Job, JobConfig};
pub use input::{parse_input, read_input, JobInput, ParsedInput};
pub use model::{
    exit, AlgebraicRoute, CertifyReport, DiscRoute, Header, IndexReport, KoszulReport, KoszulRoute, OracleRoute, Routes,
    SpectrumReport, SpectrumResult, TensorReport, TensorRoute, Verdict, SCHEMA_VERSION,
};
pub use run::{error_exit_code, run_certify, run_index, run_job, run_koszul_dims, run_spectrum, run_tensor, JobOutput};
