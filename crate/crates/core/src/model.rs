//! Domain types and quantum-number canonicalization.
//!
//! Quantum numbers select a state of the Bose gas. Negative entries are
//! equivalent to positive ones with the corresponding quasimomentum negated,
//! and a zero entry pins one quasimomentum at zero, so every input reduces to
//! a canonical sorted set with recorded sign flips and an optional pinned
//! zero root.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Physical parameters of the gas: `N` point bosons with contact repulsion
/// `c > 0` on a segment of length `L > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SystemSpec {
    pub n_particles: usize,
    pub length: f64,
    pub coupling: f64,
}

impl SystemSpec {
    pub fn new(n_particles: usize, length: f64, coupling: f64) -> Self {
        Self {
            n_particles,
            length,
            coupling,
        }
    }
}

/// Integer quantum numbers, one per particle. Any sign on input.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuantumNumberSet(pub Vec<i64>);

impl QuantumNumberSet {
    pub fn new(n: Vec<i64>) -> Self {
        Self(n)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }
}

impl std::ops::Deref for QuantumNumberSet {
    type Target = [i64];
    fn deref(&self) -> &[i64] {
        &self.0
    }
}

impl From<Vec<i64>> for QuantumNumberSet {
    fn from(v: Vec<i64>) -> Self {
        Self(v)
    }
}

/// Result of normalizing a quantum-number set.
///
/// `canonical_n` is sorted nondecreasing. When `zero_reduced` is true one
/// root is pinned at zero and `canonical_n` holds the remaining `N - 1`
/// quantum numbers (a second zero entry stays in the reduced set: the pinned
/// root absorbs only one zero, and the solution still contains exactly one
/// zero quasimomentum). Such states are flagged `physically_excluded`
/// because the wavefunction vanishes identically when any quasimomentum is
/// zero; the solver still solves them so the consistency of the reduction
/// can be checked.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CanonicalForm {
    pub canonical_n: QuantumNumberSet,
    /// -1 exactly where the input entry was negative.
    pub sign_map: Vec<i8>,
    pub zero_reduced: bool,
    pub physically_excluded: bool,
    /// `permutation[i]` is the slot of input entry `i` in the canonical root
    /// vector (slot 0 is the pinned zero when `zero_reduced`).
    pub permutation: Vec<usize>,
}

impl CanonicalForm {
    /// Number of roots of the full problem this form describes.
    pub fn n_total(&self) -> usize {
        self.permutation.len()
    }

    /// Map canonical-order roots (pinned zero first when present) back to
    /// input order with the recorded signs.
    pub fn signed_roots_input_order(&self, canonical_roots: &[f64]) -> Vec<f64> {
        self.permutation
            .iter()
            .zip(&self.sign_map)
            .map(|(&slot, &s)| f64::from(s) * canonical_roots[slot])
            .collect()
    }
}

/// Shifted integers `I_i = n_i + i - 1` that drive the smooth form of the
/// equations; strictly increasing for any nondecreasing canonical input.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MomentumLabels(pub Vec<i64>);

impl std::ops::Deref for MomentumLabels {
    type Target = [i64];
    fn deref(&self) -> &[i64] {
        &self.0
    }
}

/// Real quasimomenta, in units of inverse length.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootSet(pub Vec<f64>);

impl RootSet {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }
}

impl std::ops::Deref for RootSet {
    type Target = [f64];
    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl From<Vec<f64>> for RootSet {
    fn from(v: Vec<f64>) -> Self {
        Self(v)
    }
}

/// Check the physical bounds N >= 1, L > 0, c > 0 and that `n` has one
/// entry per particle. All violations are reported at once.
pub fn validate_spec(spec: &SystemSpec, n: &QuantumNumberSet) -> Result<()> {
    let mut violations = Vec::new();
    if spec.n_particles < 1 {
        violations.push("n_particles must be >= 1".to_string());
    }
    if spec.length <= 0.0 || !spec.length.is_finite() {
        violations.push(format!("length must be > 0 (got {})", spec.length));
    }
    if spec.coupling <= 0.0 || !spec.coupling.is_finite() {
        violations.push(format!("coupling must be > 0 (got {})", spec.coupling));
    }
    if n.len() != spec.n_particles {
        violations.push(format!(
            "quantum numbers: expected {} entries, got {}",
            spec.n_particles,
            n.len()
        ));
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(Error::InvalidSpec { violations })
    }
}

/// Normalize a quantum-number set: flip negative entries to positive
/// (recording the sign), sort nondecreasing (recording the permutation),
/// and when zeros are present pin one root at zero and drop that entry.
pub fn canonicalize(n: &QuantumNumberSet) -> CanonicalForm {
    let sign_map: Vec<i8> = n.iter().map(|&v| if v < 0 { -1 } else { 1 }).collect();
    let flipped: Vec<i64> = n.iter().map(|&v| v.abs()).collect();

    // Stable argsort by magnitude; zeros land first.
    let mut order: Vec<usize> = (0..flipped.len()).collect();
    order.sort_by_key(|&i| flipped[i]);
    let mut permutation = vec![0usize; flipped.len()];
    for (slot, &i) in order.iter().enumerate() {
        permutation[i] = slot;
    }

    let sorted: Vec<i64> = order.iter().map(|&i| flipped[i]).collect();
    let zero_reduced = sorted.first().is_some_and(|&v| v == 0);
    let canonical_n = if zero_reduced {
        sorted[1..].to_vec()
    } else {
        sorted
    };

    CanonicalForm {
        canonical_n: QuantumNumberSet(canonical_n),
        sign_map,
        zero_reduced,
        physically_excluded: zero_reduced,
        permutation,
    }
}

/// `I_i = n_i + i - 1` for a canonical (sorted, entries >= 1) set.
pub fn momentum_labels(canonical_n: &QuantumNumberSet) -> Result<MomentumLabels> {
    for w in canonical_n.windows(2) {
        if w[1] < w[0] {
            return Err(Error::NotCanonical(format!(
                "entries not nondecreasing ({} after {})",
                w[1], w[0]
            )));
        }
    }
    if let Some(&v) = canonical_n.iter().find(|&&v| v < 1) {
        return Err(Error::NotCanonical(format!("entry {v} is < 1")));
    }
    Ok(MomentumLabels(
        canonical_n
            .iter()
            .enumerate()
            .map(|(i, &v)| v + i as i64)
            .collect(),
    ))
}

/// Number of physically equivalent root permutations: the product of p!
/// over groups of p identical quantum numbers (saturating).
pub fn equivalence_class_size(sorted_n: &[i64]) -> u64 {
    let mut size: u64 = 1;
    let mut run = 1u64;
    for w in sorted_n.windows(2) {
        if w[0] == w[1] {
            run += 1;
            size = size.saturating_mul(run);
        } else {
            run = 1;
        }
    }
    size
}

/// Two root sets describe the same wavefunction iff their quasimomentum
/// magnitudes agree as multisets (sign flips and permutations are gauge).
pub fn same_physical_solution(a: &[f64], b: &[f64], tol: f64) -> Result<bool> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            expected: a.len(),
            got: b.len(),
        });
    }
    let mut ma: Vec<f64> = a.iter().map(|v| v.abs()).collect();
    let mut mb: Vec<f64> = b.iter().map(|v| v.abs()).collect();
    ma.sort_by(f64::total_cmp);
    mb.sort_by(f64::total_cmp);
    Ok(ma.iter().zip(&mb).all(|(x, y)| (x - y).abs() <= tol))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qn(v: &[i64]) -> QuantumNumberSet {
        QuantumNumberSet(v.to_vec())
    }

    #[test]
    fn validate_accepts_good_spec() {
        let spec = SystemSpec::new(3, 1.0, 1.0);
        assert!(validate_spec(&spec, &qn(&[1, 2, 3])).is_ok());
    }

    #[test]
    fn validate_rejects_zero_coupling() {
        let spec = SystemSpec::new(2, 1.0, 0.0);
        let err = validate_spec(&spec, &qn(&[1, 2])).unwrap_err();
        assert!(matches!(err, Error::InvalidSpec { .. }));
        assert!(err.to_string().contains("coupling"));
    }

    #[test]
    fn validate_rejects_length_mismatch() {
        let spec = SystemSpec::new(2, 1.0, 1.0);
        let err = validate_spec(&spec, &qn(&[1])).unwrap_err();
        assert!(err.to_string().contains("expected 2 entries"));
    }

    #[test]
    fn validate_collects_all_violations() {
        let spec = SystemSpec::new(0, -1.0, 0.0);
        match validate_spec(&spec, &qn(&[1])) {
            Err(Error::InvalidSpec { violations }) => assert_eq!(violations.len(), 4),
            other => panic!("expected InvalidSpec, got {other:?}"),
        }
    }

    #[test]
    fn canonicalize_identity_case() {
        let c = canonicalize(&qn(&[1, 2, 3]));
        assert_eq!(c.canonical_n.as_slice(), &[1, 2, 3]);
        assert_eq!(c.sign_map, vec![1, 1, 1]);
        assert!(!c.zero_reduced);
        assert_eq!(c.permutation, vec![0, 1, 2]);
    }

    #[test]
    fn canonicalize_flips_negative() {
        let c = canonicalize(&qn(&[-2, 3]));
        assert_eq!(c.canonical_n.as_slice(), &[2, 3]);
        assert_eq!(c.sign_map, vec![-1, 1]);
        assert!(!c.zero_reduced);
    }

    #[test]
    fn canonicalize_pins_zero() {
        let c = canonicalize(&qn(&[0, 2]));
        assert_eq!(c.canonical_n.as_slice(), &[2]);
        assert!(c.zero_reduced);
        assert!(c.physically_excluded);
        assert_eq!(c.n_total(), 2);
    }

    #[test]
    fn canonicalize_keeps_second_zero_in_reduced_set() {
        // Only one root can sit at zero; the other zero quantum number stays
        // in the reduced problem.
        let c = canonicalize(&qn(&[0, 0, 2]));
        assert_eq!(c.canonical_n.as_slice(), &[0, 2]);
        assert!(c.zero_reduced);
        assert_eq!(c.n_total(), 3);
    }

    #[test]
    fn canonicalize_sorts_and_records_permutation() {
        let c = canonicalize(&qn(&[3, -1, 2]));
        assert_eq!(c.canonical_n.as_slice(), &[1, 2, 3]);
        assert_eq!(c.permutation, vec![2, 0, 1]);
        let signed = c.signed_roots_input_order(&[10.0, 20.0, 30.0]);
        assert_eq!(signed, vec![30.0, -10.0, 20.0]);
    }

    #[test]
    fn canonicalize_is_idempotent() {
        let first = canonicalize(&qn(&[4, -2, 7]));
        let again = canonicalize(&first.canonical_n);
        assert_eq!(again.canonical_n, first.canonical_n);
        assert_eq!(again.sign_map, vec![1, 1, 1]);
        assert_eq!(again.permutation, vec![0, 1, 2]);
        assert!(!again.zero_reduced);
    }

    #[test]
    fn labels_basic() {
        assert_eq!(momentum_labels(&qn(&[1, 2, 3])).unwrap().0, vec![1, 3, 5]);
    }

    #[test]
    fn labels_separate_duplicates() {
        assert_eq!(momentum_labels(&qn(&[1, 1, 1])).unwrap().0, vec![1, 2, 3]);
    }

    #[test]
    fn labels_single() {
        assert_eq!(momentum_labels(&qn(&[5])).unwrap().0, vec![5]);
    }

    #[test]
    fn labels_reject_unsorted() {
        assert!(matches!(
            momentum_labels(&qn(&[2, 1])),
            Err(Error::NotCanonical(_))
        ));
        assert!(matches!(
            momentum_labels(&qn(&[0, 1])),
            Err(Error::NotCanonical(_))
        ));
    }

    #[test]
    fn equivalence_size_counts_factorials() {
        assert_eq!(equivalence_class_size(&[1, 2, 3]), 1);
        assert_eq!(equivalence_class_size(&[2, 2]), 2);
        assert_eq!(equivalence_class_size(&[1, 1, 1, 4, 4]), 12);
    }

    #[test]
    fn same_solution_under_permutation_and_sign() {
        assert!(same_physical_solution(&[1.0, 2.0], &[2.0, 1.0], 1e-12).unwrap());
        assert!(same_physical_solution(&[1.0, 2.0], &[-1.0, 2.0], 1e-12).unwrap());
        assert!(!same_physical_solution(&[1.0, 2.0], &[1.0, 2.1], 1e-6).unwrap());
    }

    #[test]
    fn same_solution_rejects_length_mismatch() {
        assert!(matches!(
            same_physical_solution(&[1.0], &[1.0, 2.0], 1e-9),
            Err(Error::LengthMismatch { .. })
        ));
    }
}
