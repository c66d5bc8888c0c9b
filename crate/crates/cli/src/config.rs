//! Run configuration: CLI flags merged over an optional JSON config file,
//! flags taking precedence.

use std::path::PathBuf;

use serde::Deserialize;

use gaudin::analysis::MinorSampler;
use gaudin::model::validate_spec;
use gaudin::{QuantumNumberSet, SolverConfig, SystemSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Solve,
    Verify,
    ScanMinors,
    Limits,
    CompareBc,
    Multistart,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegimeChoice {
    Free,
    Tonks,
    Both,
}

/// Flag values as parsed; `None` means "not given on the command line".
#[derive(Debug, Clone, Default)]
pub struct FlagSet {
    pub n_particles: Option<usize>,
    pub length: Option<f64>,
    pub coupling: Option<f64>,
    pub n: Option<Vec<i64>>,
    pub seed: Option<u64>,
    pub format: Option<OutputFormat>,
    pub out: Option<PathBuf>,
    pub grad_tol: Option<f64>,
    pub max_iters: Option<usize>,
    pub starts: Option<usize>,
    pub box_half_width: Option<f64>,
    pub samples: Option<usize>,
    pub step_scale: Option<f64>,
    pub sampler: Option<MinorSamplerArg>,
    pub regime: Option<RegimeChoice>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum MinorSamplerArg {
    Homogeneous,
    Perturbed,
}

impl From<MinorSamplerArg> for MinorSampler {
    fn from(v: MinorSamplerArg) -> Self {
        match v {
            MinorSamplerArg::Homogeneous => MinorSampler::Homogeneous,
            MinorSamplerArg::Perturbed => MinorSampler::Perturbed,
        }
    }
}

/// JSON config file schema; keys mirror the command-line flags.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    #[serde(rename = "N")]
    pub n_particles: Option<usize>,
    #[serde(rename = "L")]
    pub length: Option<f64>,
    pub c: Option<f64>,
    pub n: Option<Vec<i64>>,
    pub seed: Option<u64>,
    pub format: Option<OutputFormat>,
    pub out: Option<PathBuf>,
    pub grad_tol: Option<f64>,
    pub max_iters: Option<usize>,
    pub starts: Option<usize>,
    #[serde(rename = "box")]
    pub box_half_width: Option<f64>,
    pub samples: Option<usize>,
    pub step_scale: Option<f64>,
    pub sampler: Option<MinorSamplerArg>,
    pub regime: Option<RegimeChoice>,
}

/// Fully resolved configuration for one run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: CommandKind,
    pub spec: SystemSpec,
    pub n: Option<QuantumNumberSet>,
    pub solver: SolverConfig,
    pub output_format: OutputFormat,
    pub output_path: Option<PathBuf>,
    pub seed: u64,
    pub starts: usize,
    pub box_half_width: f64,
    pub samples: usize,
    pub step_scale: f64,
    pub sampler: MinorSampler,
    pub regime: RegimeChoice,
}

/// Merge flags over the file config, apply defaults, and validate.
/// Every failure here is a usage error.
pub fn parse_config(
    command: CommandKind,
    flags: &FlagSet,
    file: Option<&str>,
) -> Result<RunConfig, String> {
    let file: FileConfig = match file {
        Some(text) => serde_json::from_str(text).map_err(|e| format!("config file: {e}"))?,
        None => FileConfig::default(),
    };

    let n_particles = flags.n_particles.or(file.n_particles);
    let length = flags.length.or(file.length);
    let coupling = flags.coupling.or(file.c);
    let n = flags.n.clone().or(file.n);

    // scan-minors samples k-configurations directly and needs no quantum
    // numbers; its length/coupling default to 1.
    let (length, coupling) = if command == CommandKind::ScanMinors {
        (length.or(Some(1.0)), coupling.or(Some(1.0)))
    } else {
        (length, coupling)
    };

    let n_particles = n_particles.ok_or("missing --N")?;
    let spec = SystemSpec::new(
        n_particles,
        length.ok_or("missing --L")?,
        coupling.ok_or("missing --c")?,
    );

    let n = if command == CommandKind::ScanMinors {
        n.map(QuantumNumberSet)
    } else {
        let values = n.ok_or("missing --n")?;
        Some(QuantumNumberSet(values))
    };
    if let Some(qn) = &n {
        validate_spec(&spec, qn).map_err(|e| e.to_string())?;
    }

    let mut solver = SolverConfig::default();
    if let Some(t) = flags.grad_tol.or(file.grad_tol) {
        solver.grad_tol = t;
    }
    if let Some(m) = flags.max_iters.or(file.max_iters) {
        solver.max_iters = m;
    }

    let starts = flags.starts.or(file.starts).unwrap_or(20);
    if command == CommandKind::Multistart && starts < 2 {
        return Err("multistart requires --starts >= 2".to_string());
    }

    Ok(RunConfig {
        command,
        spec,
        n,
        solver,
        output_format: flags.format.or(file.format).unwrap_or(OutputFormat::Json),
        output_path: flags.out.clone().or(file.out),
        seed: flags.seed.or(file.seed).unwrap_or(0),
        starts,
        box_half_width: flags.box_half_width.or(file.box_half_width).unwrap_or(50.0),
        samples: flags.samples.or(file.samples).unwrap_or(100),
        step_scale: flags.step_scale.or(file.step_scale).unwrap_or(0.1),
        sampler: flags
            .sampler
            .or(file.sampler)
            .map(MinorSampler::from)
            .unwrap_or(MinorSampler::Perturbed),
        regime: flags.regime.or(file.regime).unwrap_or(RegimeChoice::Both),
    })
}
