use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pentajm_cli::{run_file, Command, Overrides};

#[derive(Parser)]
#[command(name = "pentajm", version, about = "Penta-diagonal J-matrix reference, scattering and self-check runs")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Partial sums of the reference solution against the exact function.
    ReferenceConvergence(RunArgs),
    /// S-matrix and phase shift over an energy grid.
    Scatter(RunArgs),
    /// Gauss quadrature and recursion self-checks.
    QuadratureCheck(RunArgs),
    /// Finite Green's function self-checks on random systems.
    GreensCheck(RunArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum PrecisionArg {
    Double,
    Extended,
}

#[derive(Args)]
struct RunArgs {
    /// `key = value` configuration file.
    #[arg(long)]
    config: PathBuf,
    /// Output directory, created if missing.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Overrides the `precision` key.
    #[arg(long, value_enum)]
    precision: Option<PrecisionArg>,
    /// Worker threads; overrides the `jobs` key.
    #[arg(long)]
    jobs: Option<usize>,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let (command, args) = match cli.command {
        Cmd::ReferenceConvergence(a) => (Command::ReferenceConvergence, a),
        Cmd::Scatter(a) => (Command::Scatter, a),
        Cmd::QuadratureCheck(a) => (Command::QuadratureCheck, a),
        Cmd::GreensCheck(a) => (Command::GreensCheck, a),
    };
    let overrides = Overrides {
        precision: args.precision.map(|p| match p {
            PrecisionArg::Double => "double".to_string(),
            PrecisionArg::Extended => "extended".to_string(),
        }),
        jobs: args.jobs,
    };
    let code = match run_file(command, &args.config, &args.out, &overrides) {
        Ok(summary) => {
            for line in &summary.report {
                println!("{line}");
            }
            for f in &summary.files {
                println!("wrote {}", f.display());
            }
            summary.exit_code()
        }
        Err(e) => {
            eprintln!("pentajm {command}: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
