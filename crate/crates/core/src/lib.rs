//! Solver for the Gaudin equations of a one-dimensional gas of spinless
//! point bosons with zero boundary conditions.
//!
//! The transcendental system fixing the quasimomenta {k_i} is recast as the
//! gradient of a strictly convex potential, so its unique real solution is
//! found by damped Newton descent with the analytic Hessian. Alongside the
//! solver, the crate ships the instruments used to check the construction
//! numerically: an independent fixed-point oracle, seeded multistart
//! uniqueness probes, dominant-minor chains of the Hessian in log space,
//! ordering diagnostics, asymptotic-limit checks, and the comparison
//! against periodic boundary conditions.

pub mod analysis;
pub mod equations;
pub mod error;
pub mod linalg;
pub mod model;
pub mod solver;

pub use error::{Error, Result};
pub use linalg::DenseSymMatrix;
pub use model::{CanonicalForm, MomentumLabels, QuantumNumberSet, RootSet, SystemSpec};
pub use solver::{MultistartReport, SolveReport, SolverConfig};
