use thiserror::Error;

/// Errors reported by the solver library.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// One or more physical parameters violate their domain.
    #[error("invalid system specification: {}", violations.join("; "))]
    InvalidSpec { violations: Vec<String> },

    /// Two sequences that must have equal length do not.
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    /// A quantum-number sequence is not in canonical form (sorted, entries >= 1).
    #[error("quantum numbers are not canonical: {0}")]
    NotCanonical(String),

    /// The arctangent reflection identity has no value at alpha = 0.
    #[error("arctan reflection identity is undefined at alpha = 0")]
    UndefinedAtZero,

    /// The raw equations are undefined when k_i - k_j = 0 or k_i + k_j = 0.
    #[error("degenerate configuration: k_{i} {sign} k_{j} = 0", sign = if *plus { "+" } else { "-" })]
    DegenerateConfiguration { i: usize, j: usize, plus: bool },

    /// Newton minimization did not reach the gradient tolerance.
    #[error("no convergence after {max_iters} iterations (grad norm {final_grad_norm:.3e})")]
    NoConvergence {
        max_iters: usize,
        final_grad_norm: f64,
    },

    /// The fixed-point oracle failed to contract.
    #[error("oracle stalled after {sweeps} sweeps (residual {residual:.3e})")]
    OracleStall { sweeps: usize, residual: f64 },

    /// The fixed-point oracle is a desk-scale instrument.
    #[error("oracle supports at most {limit} unknowns, got {n_unknowns}")]
    OracleTooLarge { n_unknowns: usize, limit: usize },

    /// A symmetric factorization hit a nonpositive pivot.
    #[error("matrix is not positive definite: pivot {pivot_index} is {pivot:.3e}")]
    NotPositiveDefinite {
        pivot_index: usize,
        pivot: f64,
        /// Leading-minor logs accumulated before the failing pivot.
        partial_log_minors: Vec<f64>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
