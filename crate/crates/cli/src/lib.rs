//! Batch driver behind the `pentajm` binary: configuration, the four run
//! commands, and CSV output.

pub mod checks;
pub mod config;
pub mod output;
pub mod reference;
pub mod scatter;

use std::path::{Path, PathBuf};

pub use config::{Command, Overrides, RunConfig};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("check failed: {0}")]
    CheckFailed(String),
    #[error("output error on {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => exit::CONFIG,
            CliError::Numerical(_) | CliError::CheckFailed(_) => exit::NUMERICAL,
            CliError::Io { .. } => exit::IO,
        }
    }
}

impl From<pentajm::Error> for CliError {
    fn from(e: pentajm::Error) -> Self {
        CliError::Numerical(e.to_string())
    }
}

pub mod exit {
    pub const SUCCESS: i32 = 0;
    pub const IO: i32 = 1;
    pub const CONFIG: i32 = 2;
    pub const NUMERICAL: i32 = 3;
    pub const FLAGGED: i32 = 4;
}

/// Result of a completed run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunSummary {
    pub files: Vec<PathBuf>,
    /// Rows carrying a failure flag.
    pub flagged_rows: usize,
    /// Human-readable lines for stdout.
    pub report: Vec<String>,
}

impl RunSummary {
    pub fn exit_code(&self) -> i32 {
        if self.flagged_rows > 0 {
            exit::FLAGGED
        } else {
            exit::SUCCESS
        }
    }
}

/// Reads and validates the config file, then runs `command` on a worker pool
/// of the configured size.
pub fn run_file(command: Command, config: &Path, out: &Path, overrides: &Overrides) -> Result<RunSummary, CliError> {
    let text = std::fs::read_to_string(config)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", config.display())))?;
    let cfg = RunConfig::from_text(command, &text, overrides)?;
    run(&cfg, out)
}

pub fn run(cfg: &RunConfig, out: &Path) -> Result<RunSummary, CliError> {
    std::fs::create_dir_all(out).map_err(|source| CliError::Io { path: out.to_path_buf(), source })?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = cfg.jobs {
        builder = builder.num_threads(j);
    }
    let pool = builder.build().map_err(|e| CliError::Config(format!("jobs: cannot start worker pool: {e}")))?;
    pool.install(|| match cfg.command {
        Command::ReferenceConvergence => reference::run(cfg, out),
        Command::Scatter => scatter::run(cfg, out),
        Command::QuadratureCheck => checks::run_quadrature(cfg, out),
        Command::GreensCheck => checks::run_greens(cfg, out),
    })
}
