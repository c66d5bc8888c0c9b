//! Globally convergent minimization of the convex potentials.
//!
//! The potential is strictly convex (its Hessian dominates L times the
//! identity) and grows at infinity, so damped Newton from any start reaches
//! the unique minimum; the minimizer is the solution of the corresponding
//! transcendental system. An independent fixed-point/bisection oracle and a
//! seeded multistart probe provide uniqueness evidence.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::equations::{
    hessian_b, hessian_b_reduced, hessian_periodic, inf_norm, periodic_labels, potential_b,
    potential_b_reduced, potential_periodic, reduced_labels, residual_periodic,
    residual_periodic_smooth, residual_raw, residual_reduced_from_labels, residual_transformed,
};
use crate::error::{Error, Result};
use crate::linalg::DenseSymMatrix;
use crate::model::{
    canonicalize, equivalence_class_size, momentum_labels, same_physical_solution, validate_spec,
    CanonicalForm, QuantumNumberSet, RootSet, SystemSpec,
};

const ORACLE_MAX_UNKNOWNS: usize = 6;
const ORACLE_SWEEP_LIMIT: usize = 1_000_000;
const ORACLE_SWEEP_TOL: f64 = 1e-10;

/// How the first Newton iterate is chosen.
#[derive(Debug, Clone, PartialEq)]
pub enum InitMode {
    /// k_i = pi I_i / L, exact in the impenetrable (c -> infinity) limit.
    TonksLimit,
    UserSupplied(Vec<f64>),
    RandomBox {
        half_width: f64,
        seed: u64,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    /// Tolerance on the gradient inf-norm, scaled by L * max(1, max|k_i|).
    pub grad_tol: f64,
    pub max_iters: usize,
    pub armijo_c: f64,
    pub backtrack: f64,
    pub init_mode: InitMode,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            grad_tol: 1e-12,
            max_iters: 200,
            armijo_c: 1e-4,
            backtrack: 0.5,
            init_mode: InitMode::TonksLimit,
        }
    }
}

impl SolverConfig {
    fn validate(&self) -> Result<()> {
        let mut violations = Vec::new();
        if self.grad_tol <= 0.0 || self.grad_tol.is_nan() {
            violations.push("grad_tol must be > 0".to_string());
        }
        if self.max_iters < 1 {
            violations.push("max_iters must be >= 1".to_string());
        }
        if !(self.armijo_c > 0.0 && self.armijo_c < 1.0) {
            violations.push("armijo_c must be in (0, 1)".to_string());
        }
        if !(self.backtrack > 0.0 && self.backtrack < 1.0) {
            violations.push("backtrack must be in (0, 1)".to_string());
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidSpec { violations })
        }
    }
}

/// Solution plus the diagnostics that certify it.
#[derive(Debug, Clone, Serialize)]
pub struct SolveReport {
    /// Canonical roots, sorted ascending. For zero-reduced states the pinned
    /// zero is the first entry.
    pub roots: RootSet,
    /// Roots mapped back to the input order with recorded signs applied.
    pub signed_roots_input_order: Vec<f64>,
    pub b_value: f64,
    pub iterations: usize,
    pub final_grad_norm: f64,
    pub residual_transformed_norm: f64,
    /// Raw-system residual at the solution; absent if the evaluation would
    /// be degenerate.
    pub raw_residual_norm: Option<f64>,
    pub hessian_pd: bool,
    /// Populated by verification front-ends that run the minor chain.
    pub minor_chain_ok: Option<bool>,
    pub ordering_ok: bool,
    pub equivalence_class_size: u64,
    /// Two roots share a magnitude within 1e-10 of scale; surfaced, not
    /// rejected.
    pub coincident_magnitudes: bool,
    pub physically_excluded: bool,
    /// Present for the zero-BC systems; periodic solves have no
    /// canonicalization step.
    pub canonicalization: Option<CanonicalForm>,
}

/// Per-iterate record of a Newton run.
#[derive(Debug, Clone, Default)]
pub struct NewtonTrace {
    pub b_values: Vec<f64>,
    pub grad_norms: Vec<f64>,
}

pub(crate) trait ConvexSystem {
    fn dim(&self) -> usize;
    fn length(&self) -> f64;
    fn residual(&self, k: &[f64]) -> Vec<f64>;
    fn potential(&self, k: &[f64]) -> f64;
    fn hessian(&self, k: &[f64]) -> DenseSymMatrix;
    /// Asymptotic roots for c -> infinity, used as the default start.
    fn tonks_start(&self) -> Vec<f64>;
}

struct FullSystem<'a> {
    labels: Vec<i64>,
    spec: &'a SystemSpec,
}

impl ConvexSystem for FullSystem<'_> {
    fn dim(&self) -> usize {
        self.labels.len()
    }
    fn length(&self) -> f64 {
        self.spec.length
    }
    fn residual(&self, k: &[f64]) -> Vec<f64> {
        residual_transformed(k, &self.labels, self.spec)
    }
    fn potential(&self, k: &[f64]) -> f64 {
        potential_b(k, &self.labels, self.spec).0
    }
    fn hessian(&self, k: &[f64]) -> DenseSymMatrix {
        hessian_b(k, self.spec)
    }
    fn tonks_start(&self) -> Vec<f64> {
        self.labels
            .iter()
            .map(|&i| std::f64::consts::PI * i as f64 / self.spec.length)
            .collect()
    }
}

struct ReducedSystem<'a> {
    labels: Vec<i64>,
    spec: &'a SystemSpec,
}

impl ConvexSystem for ReducedSystem<'_> {
    fn dim(&self) -> usize {
        self.labels.len()
    }
    fn length(&self) -> f64 {
        self.spec.length
    }
    fn residual(&self, k: &[f64]) -> Vec<f64> {
        residual_reduced_from_labels(k, &self.labels, self.spec)
    }
    fn potential(&self, k: &[f64]) -> f64 {
        potential_b_reduced(k, &self.labels, self.spec).0
    }
    fn hessian(&self, k: &[f64]) -> DenseSymMatrix {
        hessian_b_reduced(k, self.spec)
    }
    fn tonks_start(&self) -> Vec<f64> {
        self.labels
            .iter()
            .map(|&i| std::f64::consts::PI * i as f64 / self.spec.length)
            .collect()
    }
}

struct PeriodicSystem<'a> {
    labels_j: Vec<f64>,
    spec: &'a SystemSpec,
}

impl ConvexSystem for PeriodicSystem<'_> {
    fn dim(&self) -> usize {
        self.labels_j.len()
    }
    fn length(&self) -> f64 {
        self.spec.length
    }
    fn residual(&self, k: &[f64]) -> Vec<f64> {
        residual_periodic_smooth(k, &self.labels_j, self.spec)
    }
    fn potential(&self, k: &[f64]) -> f64 {
        potential_periodic(k, &self.labels_j, self.spec).0
    }
    fn hessian(&self, k: &[f64]) -> DenseSymMatrix {
        hessian_periodic(k, self.spec)
    }
    fn tonks_start(&self) -> Vec<f64> {
        self.labels_j
            .iter()
            .map(|&j| 2.0 * std::f64::consts::PI * j / self.spec.length)
            .collect()
    }
}

struct NewtonOutcome {
    k: Vec<f64>,
    iterations: usize,
    final_grad_norm: f64,
    b_value: f64,
    hessian_pd: bool,
    trace: NewtonTrace,
}

fn initial_point(system: &dyn ConvexSystem, cfg: &SolverConfig) -> Result<Vec<f64>> {
    match &cfg.init_mode {
        InitMode::TonksLimit => Ok(system.tonks_start()),
        InitMode::UserSupplied(k0) => {
            if k0.len() != system.dim() {
                return Err(Error::LengthMismatch {
                    expected: system.dim(),
                    got: k0.len(),
                });
            }
            Ok(k0.clone())
        }
        InitMode::RandomBox { half_width, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            Ok((0..system.dim())
                .map(|_| rng.gen_range(-half_width..=*half_width))
                .collect())
        }
    }
}

fn newton_minimize(system: &dyn ConvexSystem, cfg: &SolverConfig) -> Result<NewtonOutcome> {
    cfg.validate()?;
    let length = system.length();
    let mut k = initial_point(system, cfg)?;
    if k.is_empty() {
        return Ok(NewtonOutcome {
            k,
            iterations: 0,
            final_grad_norm: 0.0,
            b_value: 0.0,
            hessian_pd: true,
            trace: NewtonTrace::default(),
        });
    }
    let mut b = system.potential(&k);
    let mut trace = NewtonTrace::default();
    let mut grad_norm = f64::INFINITY;

    for iter in 0..=cfg.max_iters {
        let g = system.residual(&k);
        grad_norm = inf_norm(&g);
        trace.b_values.push(b);
        trace.grad_norms.push(grad_norm);
        let scale = length * inf_norm(&k).max(1.0);
        if grad_norm <= cfg.grad_tol * scale {
            let hessian_pd = system.hessian(&k).cholesky().is_ok();
            return Ok(NewtonOutcome {
                k,
                iterations: iter,
                final_grad_norm: grad_norm,
                b_value: b,
                hessian_pd,
                trace,
            });
        }
        if iter == cfg.max_iters {
            break;
        }

        // Positive definiteness is guaranteed; a failed factorization is an
        // internal fault and is escalated, not retried.
        let chol = system.hessian(&k).cholesky()?;
        let mut dir: Vec<f64> = chol.solve(&g).iter().map(|v| -v).collect();
        if dir.iter().any(|v| !v.is_finite()) {
            // Overflowed Newton direction (extreme coupling): take a
            // gradient step of length 1/L instead.
            let gn = g.iter().map(|v| v * v).sum::<f64>().sqrt();
            dir = g.iter().map(|v| -v / (gn * length)).collect();
        }
        let mut slope: f64 = g.iter().zip(&dir).map(|(a, b)| a * b).sum();
        if slope >= 0.0 {
            let gn = g.iter().map(|v| v * v).sum::<f64>().sqrt();
            dir = g.iter().map(|v| -v / (gn * length)).collect();
            slope = g.iter().zip(&dir).map(|(a, b)| a * b).sum();
        }

        // Armijo backtracking. Near the minimum the decrease drops below
        // what f64 can resolve in B; accept the step once the demanded
        // decrease is under that floor.
        let noise_floor = 64.0 * f64::EPSILON * (1.0 + b.abs());
        let mut step = 1.0;
        let (k_next, b_next) = loop {
            let trial: Vec<f64> = k.iter().zip(&dir).map(|(x, d)| x + step * d).collect();
            let b_trial = system.potential(&trial);
            if b_trial <= b + cfg.armijo_c * step * slope || (step * slope).abs() <= noise_floor {
                break (trial, b_trial);
            }
            step *= cfg.backtrack;
        };
        k = k_next;
        b = b_next;
    }

    Err(Error::NoConvergence {
        max_iters: cfg.max_iters,
        final_grad_norm: grad_norm,
    })
}

fn coincident_magnitudes(roots: &[f64]) -> bool {
    let scale = inf_norm(roots).max(1.0);
    let mut mags: Vec<f64> = roots.iter().map(|v| v.abs()).collect();
    mags.sort_by(f64::total_cmp);
    mags.windows(2).any(|w| w[1] - w[0] <= 1e-10 * scale)
}

fn strictly_increasing_positive(k: &[f64]) -> bool {
    k.iter().all(|&v| v > 0.0) && k.windows(2).all(|w| w[0] < w[1])
}

/// Solve the zero-BC system for any integer quantum numbers. The input is
/// canonicalized first; zero entries route to the reduced system with the
/// pinned zero prepended to the reported roots.
pub fn solve(spec: &SystemSpec, n: &QuantumNumberSet, cfg: &SolverConfig) -> Result<SolveReport> {
    validate_spec(spec, n)?;
    let canon = canonicalize(n);
    solve_canonical(spec, canon, cfg)
}

/// Solve the reduced system directly: `n` holds the N-1 quantum numbers
/// that remain after one zero entry pinned a root at the origin.
pub fn solve_reduced(
    spec: &SystemSpec,
    n: &QuantumNumberSet,
    cfg: &SolverConfig,
) -> Result<SolveReport> {
    if spec.n_particles < 1 || n.len() + 1 != spec.n_particles {
        return Err(Error::LengthMismatch {
            expected: spec.n_particles.saturating_sub(1),
            got: n.len(),
        });
    }
    let mut with_zero = vec![0i64];
    with_zero.extend_from_slice(n);
    let canon = canonicalize(&QuantumNumberSet(with_zero));
    solve_canonical(spec, canon, cfg)
}

fn solve_canonical(
    spec: &SystemSpec,
    canon: CanonicalForm,
    cfg: &SolverConfig,
) -> Result<SolveReport> {
    let outcome = if canon.zero_reduced {
        let labels = reduced_labels(&canon.canonical_n);
        newton_minimize(&ReducedSystem { labels, spec }, cfg)?
    } else {
        let labels = momentum_labels(&canon.canonical_n)?;
        newton_minimize(
            &FullSystem {
                labels: labels.0,
                spec,
            },
            cfg,
        )?
    };
    let mut roots = outcome.k.clone();
    let interior_sorted = strictly_increasing_positive(&roots);
    if canon.zero_reduced {
        roots.insert(0, 0.0);
    }
    // The unique minimizer comes out ordered; sort defensively so the
    // reported set always honors the contract.
    let ordering_ok = interior_sorted;
    roots.sort_by(f64::total_cmp);

    let mut full_n = Vec::with_capacity(canon.n_total());
    if canon.zero_reduced {
        full_n.push(0);
    }
    full_n.extend_from_slice(&canon.canonical_n);

    let smooth_norm = if canon.zero_reduced {
        inf_norm(&residual_reduced_from_labels(
            &roots[1..],
            &reduced_labels(&canon.canonical_n),
            spec,
        ))
    } else {
        let labels = momentum_labels(&canon.canonical_n)?;
        inf_norm(&residual_transformed(&roots, &labels, spec))
    };
    let raw_residual_norm = residual_raw(&roots, &full_n, spec)
        .ok()
        .map(|r| inf_norm(&r));

    Ok(SolveReport {
        signed_roots_input_order: canon.signed_roots_input_order(&roots),
        equivalence_class_size: equivalence_class_size(&full_n),
        coincident_magnitudes: coincident_magnitudes(&roots),
        physically_excluded: canon.physically_excluded,
        b_value: outcome.b_value,
        iterations: outcome.iterations,
        final_grad_norm: outcome.final_grad_norm,
        residual_transformed_norm: smooth_norm,
        raw_residual_norm,
        hessian_pd: outcome.hessian_pd,
        minor_chain_ok: None,
        ordering_ok,
        canonicalization: Some(canon),
        roots: RootSet(roots),
    })
}

/// Solve the periodic system for distinct quantum numbers of any sign.
pub fn solve_periodic(
    spec: &SystemSpec,
    n: &QuantumNumberSet,
    cfg: &SolverConfig,
) -> Result<SolveReport> {
    validate_spec(spec, n)?;
    let mut sorted: Vec<i64> = n.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidSpec {
            violations: vec!["periodic quantum numbers must be distinct".to_string()],
        });
    }
    let labels_j = periodic_labels(&sorted);
    let outcome = newton_minimize(
        &PeriodicSystem {
            labels_j: labels_j.clone(),
            spec,
        },
        cfg,
    )?;
    let mut roots = outcome.k;
    let ordering_ok = roots.windows(2).all(|w| w[0] < w[1]);
    roots.sort_by(f64::total_cmp);
    let smooth_norm = inf_norm(&residual_periodic_smooth(&roots, &labels_j, spec));
    let raw_residual_norm = residual_periodic(&roots, &sorted, spec)
        .ok()
        .map(|r| inf_norm(&r));
    Ok(SolveReport {
        signed_roots_input_order: roots.clone(),
        equivalence_class_size: 1,
        coincident_magnitudes: coincident_magnitudes(&roots),
        physically_excluded: false,
        b_value: outcome.b_value,
        iterations: outcome.iterations,
        final_grad_norm: outcome.final_grad_norm,
        residual_transformed_norm: smooth_norm,
        raw_residual_norm,
        hessian_pd: outcome.hessian_pd,
        minor_chain_ok: None,
        ordering_ok,
        canonicalization: None,
        roots: RootSet(roots),
    })
}

/// Newton run with the per-iterate trace, for descent diagnostics.
pub fn solve_with_trace(
    spec: &SystemSpec,
    n: &QuantumNumberSet,
    cfg: &SolverConfig,
) -> Result<(SolveReport, NewtonTrace)> {
    validate_spec(spec, n)?;
    let canon = canonicalize(n);
    if canon.zero_reduced {
        let labels = reduced_labels(&canon.canonical_n);
        let outcome = newton_minimize(&ReducedSystem { labels, spec }, cfg)?;
        let trace = outcome.trace.clone();
        let report = solve_canonical(spec, canon, cfg)?;
        Ok((report, trace))
    } else {
        let labels = momentum_labels(&canon.canonical_n)?;
        let outcome = newton_minimize(
            &FullSystem {
                labels: labels.0,
                spec,
            },
            cfg,
        )?;
        let trace = outcome.trace.clone();
        let report = solve_canonical(spec, canon, cfg)?;
        Ok((report, trace))
    }
}

/// Newton-free reference solver: under-relaxed Gauss-Seidel sweeps
/// `k_i <- k_i - omega r_i / L` with `omega = min(1, cL/(4N))`, then
/// per-coordinate bisection on the smooth residual (each row is strictly
/// increasing in its own coordinate with slope >= L).
pub fn oracle_solve(spec: &SystemSpec, n: &QuantumNumberSet) -> Result<RootSet> {
    validate_spec(spec, n)?;
    let canon = canonicalize(n);
    let dim = if canon.zero_reduced {
        spec.n_particles - 1
    } else {
        spec.n_particles
    };
    if dim > ORACLE_MAX_UNKNOWNS {
        return Err(Error::OracleTooLarge {
            n_unknowns: dim,
            limit: ORACLE_MAX_UNKNOWNS,
        });
    }
    if dim == 0 {
        return Ok(RootSet(vec![0.0]));
    }

    let reduced = canon.zero_reduced;
    let labels: Vec<i64> = if reduced {
        reduced_labels(&canon.canonical_n)
    } else {
        momentum_labels(&canon.canonical_n)?.0
    };
    let residual = |k: &[f64]| -> Vec<f64> {
        if reduced {
            residual_reduced_from_labels(k, &labels, spec)
        } else {
            residual_transformed(k, &labels, spec)
        }
    };

    let length = spec.length;
    let omega = (spec.coupling * length / (4.0 * dim as f64)).min(1.0);
    let mut k: Vec<f64> = labels
        .iter()
        .map(|&i| std::f64::consts::PI * i as f64 / length)
        .collect();

    let mut sweeps = 0;
    loop {
        // Gauss-Seidel: each coordinate update sees the ones already moved.
        for i in 0..dim {
            let r = residual(&k);
            k[i] -= omega * r[i] / length;
        }
        sweeps += 1;
        let rnorm = inf_norm(&residual(&k));
        if rnorm <= ORACLE_SWEEP_TOL {
            break;
        }
        if sweeps >= ORACLE_SWEEP_LIMIT {
            return Err(Error::OracleStall {
                sweeps,
                residual: rnorm,
            });
        }
    }

    // Bisection polish, one coordinate at a time. The root of row i in its
    // own coordinate lies within |r_i|/L of the current point.
    for _cycle in 0..3 {
        for i in 0..dim {
            let r = residual(&k);
            let margin = r[i].abs() / length + 1e-12 * k[i].abs().max(1.0);
            let mut lo = k[i] - margin;
            let mut hi = k[i] + margin;
            let row = |kk: &mut Vec<f64>, v: f64| {
                kk[i] = v;
                residual(kk)[i]
            };
            let mut scratch = k.clone();
            let mut flo = row(&mut scratch, lo);
            let mut tries = 0;
            while flo > 0.0 && tries < 60 {
                lo -= margin.max(1e-12);
                flo = row(&mut scratch, lo);
                tries += 1;
            }
            let mut fhi = row(&mut scratch, hi);
            tries = 0;
            while fhi < 0.0 && tries < 60 {
                hi += margin.max(1e-12);
                fhi = row(&mut scratch, hi);
                tries += 1;
            }
            if flo > 0.0 || fhi < 0.0 {
                continue;
            }
            for _ in 0..100 {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                if row(&mut scratch, mid) < 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            k[i] = 0.5 * (lo + hi);
        }
    }

    let mut roots = k;
    if reduced {
        roots.insert(0, 0.0);
    }
    roots.sort_by(f64::total_cmp);
    Ok(RootSet(roots))
}

/// Outcome of one multistart run.
#[derive(Debug, Clone, Serialize)]
pub struct StartOutcome {
    pub start_index: usize,
    pub converged: bool,
    pub iterations: usize,
    pub cluster: Option<usize>,
    pub error: Option<String>,
}

/// Evidence for (or against) uniqueness: distinct physical solutions found
/// from scattered starting points.
#[derive(Debug, Clone, Serialize)]
pub struct MultistartReport {
    pub starts: usize,
    pub box_half_width: f64,
    pub seed: u64,
    pub cluster_tol: f64,
    pub clusters: usize,
    pub cluster_representatives: Vec<Vec<f64>>,
    pub failures: usize,
    pub per_start: Vec<StartOutcome>,
}

/// Run `solve` from `starts` points drawn uniformly from the box
/// `[-box_half_width, box_half_width]^N` (deterministic in `seed`) and
/// cluster the converged root sets up to sign and permutation.
pub fn multistart_probe(
    spec: &SystemSpec,
    n: &QuantumNumberSet,
    starts: usize,
    box_half_width: f64,
    seed: u64,
    cfg: &SolverConfig,
) -> Result<MultistartReport> {
    if starts < 2 {
        return Err(Error::InvalidSpec {
            violations: vec!["multistart requires starts >= 2".to_string()],
        });
    }
    validate_spec(spec, n)?;
    const CLUSTER_TOL: f64 = 1e-8;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = spec.n_particles;
    let start_points: Vec<Vec<f64>> = (0..starts)
        .map(|_| {
            (0..dim)
                .map(|_| rng.gen_range(-box_half_width..=box_half_width))
                .collect()
        })
        .collect();

    let mut representatives: Vec<Vec<f64>> = Vec::new();
    let mut per_start = Vec::with_capacity(starts);
    let mut failures = 0;
    for (idx, point) in start_points.into_iter().enumerate() {
        let mut start_cfg = cfg.clone();
        start_cfg.init_mode = InitMode::UserSupplied(point);
        match solve(spec, n, &start_cfg) {
            Ok(report) => {
                let roots = report.roots.0;
                let cluster = representatives.iter().position(|rep| {
                    same_physical_solution(rep, &roots, CLUSTER_TOL).unwrap_or(false)
                });
                let cluster = match cluster {
                    Some(c) => c,
                    None => {
                        representatives.push(roots);
                        representatives.len() - 1
                    }
                };
                per_start.push(StartOutcome {
                    start_index: idx,
                    converged: true,
                    iterations: report.iterations,
                    cluster: Some(cluster),
                    error: None,
                });
            }
            Err(e) => {
                failures += 1;
                per_start.push(StartOutcome {
                    start_index: idx,
                    converged: false,
                    iterations: cfg.max_iters,
                    cluster: None,
                    error: Some(e.to_string()),
                });
            }
        }
    }

    // Present clusters sorted by their first root, independent of the order
    // starts happened to land in them.
    let mut order: Vec<usize> = (0..representatives.len()).collect();
    order.sort_by(|&a, &b| {
        representatives[a]
            .iter()
            .zip(&representatives[b])
            .find_map(|(x, y)| {
                let c = x.total_cmp(y);
                (c != std::cmp::Ordering::Equal).then_some(c)
            })
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let remap: Vec<usize> = {
        let mut r = vec![0usize; order.len()];
        for (new_id, &old_id) in order.iter().enumerate() {
            r[old_id] = new_id;
        }
        r
    };
    for s in &mut per_start {
        if let Some(c) = s.cluster {
            s.cluster = Some(remap[c]);
        }
    }
    let cluster_representatives: Vec<Vec<f64>> = order
        .into_iter()
        .map(|i| representatives[i].clone())
        .collect();

    Ok(MultistartReport {
        starts,
        box_half_width,
        seed,
        cluster_tol: CLUSTER_TOL,
        clusters: cluster_representatives.len(),
        cluster_representatives,
        failures,
        per_start,
    })
}
