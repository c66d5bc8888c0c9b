//! Batch front-end for the Gaudin-equation solver.
//!
//! Exit codes: 0 success, 1 computational failure, 2 usage error. Data goes
//! to stdout (or `--out`); diagnostics go to stderr.

mod commands;
mod config;
mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{CommandKind, FlagSet, MinorSamplerArg, OutputFormat, RegimeChoice};

#[derive(Parser)]
#[command(
    name = "gaudin",
    version,
    about = "Quasimomentum solver for 1D point bosons with zero boundary conditions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Number of particles
    #[arg(long = "N")]
    n_particles: Option<usize>,
    /// Segment length L > 0
    #[arg(long = "L")]
    length: Option<f64>,
    /// Repulsion strength c > 0
    #[arg(long = "c")]
    coupling: Option<f64>,
    /// Quantum numbers as a comma list, e.g. 1,2,3 (any signs)
    #[arg(long = "n", value_delimiter = ',', allow_hyphen_values = true)]
    n: Option<Vec<i64>>,
    /// Seed for every random draw in the run
    #[arg(long)]
    seed: Option<u64>,
    /// Output format
    #[arg(long, value_parser = parse_format)]
    format: Option<OutputFormat>,
    /// Write data output to a file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Gradient tolerance (scaled by L*max(1, max |k|))
    #[arg(long = "grad-tol")]
    grad_tol: Option<f64>,
    /// Newton iteration budget
    #[arg(long = "max-iters")]
    max_iters: Option<usize>,
    /// JSON config file; flags take precedence over its values
    #[arg(long)]
    config: Option<PathBuf>,
}

fn parse_format(s: &str) -> Result<OutputFormat, String> {
    match s {
        "json" => Ok(OutputFormat::Json),
        "csv" => Ok(OutputFormat::Csv),
        other => Err(format!("unknown format '{other}' (expected json or csv)")),
    }
}

fn parse_regime(s: &str) -> Result<RegimeChoice, String> {
    match s {
        "free" => Ok(RegimeChoice::Free),
        "tonks" => Ok(RegimeChoice::Tonks),
        "both" => Ok(RegimeChoice::Both),
        other => Err(format!(
            "unknown regime '{other}' (expected free, tonks, or both)"
        )),
    }
}

#[derive(Subcommand)]
enum Command {
    /// Solve the zero-BC system for the given quantum numbers
    Solve(CommonArgs),
    /// Solve and run the verification battery (minor chain, oracle, identity)
    Verify(CommonArgs),
    /// Sample k-configurations and check the Hessian minor chain
    ScanMinors {
        #[command(flatten)]
        common: CommonArgs,
        /// Number of sampled configurations
        #[arg(long)]
        samples: Option<usize>,
        /// Scale of the random spacing increments (perturbed sampler)
        #[arg(long = "step-scale")]
        step_scale: Option<f64>,
        #[arg(long, value_enum)]
        sampler: Option<MinorSamplerArg>,
    },
    /// Deviation of the solution from the free and impenetrable limits
    Limits {
        #[command(flatten)]
        common: CommonArgs,
        /// Which asymptotic reference to compare against
        #[arg(long, value_parser = parse_regime)]
        regime: Option<RegimeChoice>,
    },
    /// Solve the mirror-antisymmetric periodic system and compare halves
    CompareBc(CommonArgs),
    /// Probe uniqueness: solve from many seeded random starts and cluster
    Multistart {
        #[command(flatten)]
        common: CommonArgs,
        /// Number of starting points
        #[arg(long)]
        starts: Option<usize>,
        /// Half-width of the start box [-box, box]^N
        #[arg(long = "box")]
        box_half_width: Option<f64>,
    },
}

fn split(cmd: Command) -> (CommandKind, CommonArgs, FlagSet) {
    let mut extras = FlagSet::default();
    let (kind, common) = match cmd {
        Command::Solve(c) => (CommandKind::Solve, c),
        Command::Verify(c) => (CommandKind::Verify, c),
        Command::ScanMinors {
            common,
            samples,
            step_scale,
            sampler,
        } => {
            extras.samples = samples;
            extras.step_scale = step_scale;
            extras.sampler = sampler;
            (CommandKind::ScanMinors, common)
        }
        Command::Limits { common, regime } => {
            extras.regime = regime;
            (CommandKind::Limits, common)
        }
        Command::CompareBc(c) => (CommandKind::CompareBc, c),
        Command::Multistart {
            common,
            starts,
            box_half_width,
        } => {
            extras.starts = starts;
            extras.box_half_width = box_half_width;
            (CommandKind::Multistart, common)
        }
    };
    (kind, common, extras)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (kind, common, mut flags) = split(cli.command);

    flags.n_particles = common.n_particles;
    flags.length = common.length;
    flags.coupling = common.coupling;
    flags.n = common.n;
    flags.seed = common.seed;
    flags.format = common.format;
    flags.out = common.out;
    flags.grad_tol = common.grad_tol;
    flags.max_iters = common.max_iters;

    let file_text = match &common.config {
        Some(path) => match std::fs::read_to_string(path) {
            Ok(text) => Some(text),
            Err(e) => {
                eprintln!("error: cannot read config {}: {e}", path.display());
                return ExitCode::from(2);
            }
        },
        None => None,
    };

    let cfg = match config::parse_config(kind, &flags, file_text.as_deref()) {
        Ok(cfg) => cfg,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };

    let doc = match commands::run(&cfg) {
        Ok(doc) => doc,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };

    let bytes = output::render(&doc, cfg.output_format);
    let write_result = match &cfg.output_path {
        Some(path) => std::fs::write(path, &bytes),
        None => std::io::stdout().write_all(&bytes),
    };
    if let Err(e) = write_result {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}
