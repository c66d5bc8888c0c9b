//! Subcommand dispatch: each command produces one serializable document.

use serde::Serialize;

use gaudin::analysis::{
    attach_minor_chain, energy, limit_deviation, ordering_for_report, periodic_halving_check,
    scan_minor_chains, HalvingReport, LimitRegime, LimitReport, MinorChain, MinorSampler,
    MinorScanSummary, OrderingReport,
};
use gaudin::equations::quadratic_form_parts;
use gaudin::solver::{multistart_probe, oracle_solve, solve, MultistartReport};
use gaudin::SolveReport;

use crate::config::{CommandKind, RegimeChoice, RunConfig};

/// Computational failure; rendered on stderr with exit code 1.
#[derive(Debug)]
pub struct RunError(pub String);

impl std::fmt::Display for RunError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Serialize)]
pub struct InputsEcho {
    pub n_particles: usize,
    pub length: f64,
    pub coupling: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<Vec<i64>>,
    pub seed: u64,
    pub grad_tol: f64,
    pub max_iters: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub starts: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub box_half_width: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub step_scale: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sampler: Option<MinorSampler>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub regime: Option<&'static str>,
}

impl InputsEcho {
    fn new(cfg: &RunConfig) -> Self {
        Self {
            n_particles: cfg.spec.n_particles,
            length: cfg.spec.length,
            coupling: cfg.spec.coupling,
            n: cfg.n.as_ref().map(|qn| qn.to_vec()),
            seed: cfg.seed,
            grad_tol: cfg.solver.grad_tol,
            max_iters: cfg.solver.max_iters,
            starts: None,
            box_half_width: None,
            samples: None,
            step_scale: None,
            sampler: None,
            regime: None,
        }
    }
}

#[derive(Serialize)]
pub struct OracleCheck {
    pub available: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_deviation: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agrees: Option<bool>,
}

#[derive(Serialize)]
pub struct QuadraticFormCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub abs_diff: f64,
    pub rhs_nonnegative: bool,
}

#[derive(Serialize)]
pub struct SolveDocument {
    pub command: &'static str,
    pub inputs: InputsEcho,
    #[serde(flatten)]
    pub result: SolveReport,
    pub ordering: OrderingReport,
    pub energy: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub minor_chain: Option<MinorChain>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quadratic_form_check: Option<QuadraticFormCheck>,
}

#[derive(Serialize)]
pub struct MultistartDocument {
    pub command: &'static str,
    pub inputs: InputsEcho,
    #[serde(flatten)]
    pub result: MultistartReport,
}

#[derive(Serialize)]
pub struct ScanDocument {
    pub command: &'static str,
    pub inputs: InputsEcho,
    #[serde(flatten)]
    pub result: MinorScanSummary,
}

#[derive(Serialize)]
pub struct LimitsDocument {
    pub command: &'static str,
    pub inputs: InputsEcho,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub free: Option<LimitReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tonks: Option<LimitReport>,
}

#[derive(Serialize)]
pub struct CompareBcDocument {
    pub command: &'static str,
    pub inputs: InputsEcho,
    #[serde(flatten)]
    pub result: HalvingReport,
    /// Zero-BC residual at the half-system roots is at least 90% of the
    /// smallest obstruction term, so the two solution sets are distinct.
    pub obstruction_ok: bool,
}

pub enum Document {
    Solve(Box<SolveDocument>),
    Multistart(MultistartDocument),
    Scan(ScanDocument),
    Limits(LimitsDocument),
    CompareBc(CompareBcDocument),
}

pub fn run(cfg: &RunConfig) -> Result<Document, RunError> {
    match cfg.command {
        CommandKind::Solve => run_solve(cfg, false),
        CommandKind::Verify => run_solve(cfg, true),
        CommandKind::Multistart => run_multistart(cfg),
        CommandKind::ScanMinors => Ok(run_scan(cfg)),
        CommandKind::Limits => run_limits(cfg),
        CommandKind::CompareBc => run_compare(cfg),
    }
}

fn err(e: impl std::fmt::Display) -> RunError {
    RunError(e.to_string())
}

fn run_solve(cfg: &RunConfig, verify: bool) -> Result<Document, RunError> {
    let n = cfg.n.as_ref().expect("validated");
    let mut report = solve(&cfg.spec, n, &cfg.solver).map_err(err)?;
    let ordering = ordering_for_report(&report, &cfg.spec);
    let e = energy(&report.roots);

    let (minor_chain, oracle, quadratic_form_check) = if verify {
        let chain = attach_minor_chain(&mut report, &cfg.spec).map_err(err)?;
        let oracle = match oracle_solve(&cfg.spec, n) {
            Ok(roots) => {
                let max_deviation = roots
                    .iter()
                    .zip(report.roots.iter())
                    .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
                OracleCheck {
                    available: true,
                    agrees: Some(max_deviation <= 1e-8),
                    max_deviation: Some(max_deviation),
                }
            }
            Err(gaudin::Error::OracleTooLarge { .. }) => OracleCheck {
                available: false,
                max_deviation: None,
                agrees: None,
            },
            Err(e) => return Err(err(e)),
        };
        let u = deterministic_direction(report.roots.len(), cfg.seed);
        let (lhs, rhs) = quadratic_form_parts(&report.roots, &u, &cfg.spec).map_err(err)?;
        let qf = QuadraticFormCheck {
            lhs,
            rhs,
            abs_diff: (lhs - rhs).abs(),
            rhs_nonnegative: rhs >= 0.0,
        };
        (Some(chain), Some(oracle), Some(qf))
    } else {
        (None, None, None)
    };

    Ok(Document::Solve(Box::new(SolveDocument {
        command: if verify { "verify" } else { "solve" },
        inputs: InputsEcho::new(cfg),
        result: report,
        ordering,
        energy: e,
        minor_chain,
        oracle,
        quadratic_form_check,
    })))
}

fn deterministic_direction(dim: usize, seed: u64) -> Vec<f64> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect()
}

fn run_multistart(cfg: &RunConfig) -> Result<Document, RunError> {
    let n = cfg.n.as_ref().expect("validated");
    let result = multistart_probe(
        &cfg.spec,
        n,
        cfg.starts,
        cfg.box_half_width,
        cfg.seed,
        &cfg.solver,
    )
    .map_err(err)?;
    let mut inputs = InputsEcho::new(cfg);
    inputs.starts = Some(cfg.starts);
    inputs.box_half_width = Some(cfg.box_half_width);
    Ok(Document::Multistart(MultistartDocument {
        command: "multistart",
        inputs,
        result,
    }))
}

fn run_scan(cfg: &RunConfig) -> Document {
    let result = scan_minor_chains(
        &cfg.spec,
        cfg.sampler,
        cfg.spec.n_particles,
        cfg.samples,
        cfg.step_scale,
        cfg.seed,
    );
    eprintln!(
        "scan-minors: {} samples at order {} in {:.3}s",
        result.samples, result.order, result.elapsed_seconds
    );
    let mut inputs = InputsEcho::new(cfg);
    inputs.samples = Some(cfg.samples);
    inputs.step_scale = Some(cfg.step_scale);
    inputs.sampler = Some(cfg.sampler);
    Document::Scan(ScanDocument {
        command: "scan-minors",
        inputs,
        result,
    })
}

fn run_limits(cfg: &RunConfig) -> Result<Document, RunError> {
    let n = cfg.n.as_ref().expect("validated");
    let mut free = None;
    let mut tonks = None;
    if matches!(cfg.regime, RegimeChoice::Free | RegimeChoice::Both) {
        free = Some(limit_deviation(&cfg.spec, n, LimitRegime::Free).map_err(err)?);
    }
    if matches!(cfg.regime, RegimeChoice::Tonks | RegimeChoice::Both) {
        tonks = Some(limit_deviation(&cfg.spec, n, LimitRegime::Tonks).map_err(err)?);
    }
    let mut inputs = InputsEcho::new(cfg);
    inputs.regime = Some(match cfg.regime {
        RegimeChoice::Free => "free",
        RegimeChoice::Tonks => "tonks",
        RegimeChoice::Both => "both",
    });
    Ok(Document::Limits(LimitsDocument {
        command: "limits",
        inputs,
        free,
        tonks,
    }))
}

fn run_compare(cfg: &RunConfig) -> Result<Document, RunError> {
    let n = cfg.n.as_ref().expect("validated");
    let result = periodic_halving_check(&cfg.spec, n, &cfg.solver).map_err(err)?;
    let obstruction_ok = result.zero_bc_residual_norm >= 0.9 * result.min_obstruction;
    Ok(Document::CompareBc(CompareBcDocument {
        command: "compare-bc",
        inputs: InputsEcho::new(cfg),
        result,
        obstruction_ok,
    }))
}
