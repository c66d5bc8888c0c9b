//! Cross-module checks that pit the solver against independent routes:
//! bisection oracles, brute-force grid minimization, and the raw equations.

use std::f64::consts::PI;

use gaudin::analysis::{check_ordering, energy};
use gaudin::equations::{
    inf_norm, potential_b, residual_raw, residual_reduced, residual_transformed,
};
use gaudin::model::{momentum_labels, QuantumNumberSet};
use gaudin::solver::{oracle_solve, solve, solve_reduced, InitMode, SolverConfig};
use gaudin::SystemSpec;

fn qn(v: &[i64]) -> QuantumNumberSet {
    QuantumNumberSet(v.to_vec())
}

#[test]
fn raw_residual_vanishes_at_oracle_root() {
    let spec = SystemSpec::new(2, 1.0, 1.0);
    let roots = oracle_solve(&spec, &qn(&[1, 2])).unwrap();
    let r = residual_raw(&roots, &[1, 2], &spec).unwrap();
    assert!(inf_norm(&r) <= 1e-10, "raw residual {}", inf_norm(&r));
}

#[test]
fn exponential_form_holds_at_solutions() {
    // The arctan system is the branch-resolved log of the product form
    //   e^{2 i k_j L} = prod_{l != j} [(k_j + ic)^2 - k_l^2] / [(k_j - ic)^2 - k_l^2],
    // so the product must close at any solved root set. Each factor splits
    // into unit-modulus ratios (x + ic)/(x - ic) with x = k_j -+ k_l.
    let mul = |(ar, ai): (f64, f64), (br, bi): (f64, f64)| (ar * br - ai * bi, ar * bi + ai * br);
    let unit_ratio = |x: f64, c: f64| {
        let norm = x * x + c * c;
        // (x + ic)^2 / |x + ic|^2
        ((x * x - c * c) / norm, 2.0 * x * c / norm)
    };
    for (n, c) in [(vec![1i64, 2], 1.0), (vec![1, 3, 7], 10.0), (vec![2, 4, 5], 0.3)] {
        let spec = SystemSpec::new(n.len(), 1.0, c);
        let report = solve(&spec, &qn(&n), &SolverConfig::default()).unwrap();
        let k = report.roots.as_slice();
        for j in 0..k.len() {
            let mut prod = (1.0, 0.0);
            for l in 0..k.len() {
                if l != j {
                    prod = mul(prod, unit_ratio(k[j] - k[l], c));
                    prod = mul(prod, unit_ratio(k[j] + k[l], c));
                }
            }
            let phase = 2.0 * k[j] * spec.length;
            let lhs = (phase.cos(), phase.sin());
            assert!(
                (lhs.0 - prod.0).abs() <= 1e-9 && (lhs.1 - prod.1).abs() <= 1e-9,
                "row {j}: e^(2ikL) = ({}, {}) vs product ({}, {})",
                lhs.0,
                lhs.1,
                prod.0,
                prod.1
            );
        }
    }
}

#[test]
fn grid_minimization_agrees_with_solver() {
    // Brute force: scan B on a grid over [0, pi (I_max + 1) / L]^2 and
    // compare the best cell against the Newton minimizer.
    let spec = SystemSpec::new(2, 1.0, 1.0);
    let n = qn(&[1, 2]);
    let labels = momentum_labels(&n).unwrap();
    let hi = PI * (3.0 + 1.0);
    let cells = 400;
    let h = hi / cells as f64;
    let mut best = (f64::INFINITY, 0.0, 0.0);
    for i in 0..=cells {
        for j in 0..=cells {
            let k = [i as f64 * h, j as f64 * h];
            let b = potential_b(&k, &labels, &spec).0;
            if b < best.0 {
                best = (b, k[0], k[1]);
            }
        }
    }
    let report = solve(&spec, &n, &SolverConfig::default()).unwrap();
    assert!((best.1 - report.roots[0]).abs() <= 2.0 * h);
    assert!((best.2 - report.roots[1]).abs() <= 2.0 * h);
    assert!(best.0 >= report.b_value);
}

#[test]
fn solution_is_global_minimum_against_random_probes() {
    use rand::{Rng, SeedableRng};
    let spec = SystemSpec::new(4, 1.0, 1.0);
    let n = qn(&[1, 2, 3, 5]);
    let labels = momentum_labels(&n).unwrap();
    let report = solve(&spec, &n, &SolverConfig::default()).unwrap();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
    for _ in 0..500 {
        let k: Vec<f64> = (0..4).map(|_| rng.gen_range(-30.0..30.0)).collect();
        let b = potential_b(&k, &labels, &spec).0;
        assert!(b >= report.b_value, "{b} < {}", report.b_value);
    }
}

#[test]
fn reduced_single_unknown_matches_bisection() {
    // Scalar oracle on L k = 3 pi - 2 atan(k/c), the one-unknown reduced row.
    let spec = SystemSpec::new(2, 1.0, 1.0);
    let f = |k: f64| k - 3.0 * PI + 2.0 * k.atan();
    let (mut lo, mut hi) = (1e-9, 60.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let want = 0.5 * (lo + hi);
    let report = solve_reduced(&spec, &qn(&[2]), &SolverConfig::default()).unwrap();
    assert!((report.roots[1] - want).abs() <= 1e-10);
    let r = residual_reduced(&report.roots[1..], &[2], &spec);
    assert!(inf_norm(&r) <= 1e-10);
}

#[test]
fn pinned_zero_solution_satisfies_raw_rows() {
    // The combined set (0, k_2, ..., k_N) satisfies the full raw system in
    // every row past the pinned one.
    for n_rest in [vec![2], vec![1, 3], vec![2, 2, 5]] {
        let n_full: Vec<i64> = std::iter::once(0).chain(n_rest.iter().copied()).collect();
        let spec = SystemSpec::new(n_full.len(), 1.0, 1.0);
        let report = solve(&spec, &qn(&n_full), &SolverConfig::default()).unwrap();
        assert_eq!(report.roots[0], 0.0);
        let raw = residual_raw(&report.roots, &n_full, &spec).unwrap();
        for (i, r) in raw.iter().enumerate().skip(1) {
            assert!(r.abs() <= 1e-9, "row {i}: {r}");
        }
        // Row one is identically satisfied at k = 0.
        assert!(raw[0].abs() <= 1e-12);
    }
}

#[test]
fn transformed_residual_is_gradient_at_random_points() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
    let spec = SystemSpec::new(3, 1.0, 1.0);
    let labels = [1, 3, 5];
    for _ in 0..50 {
        let k: Vec<f64> = (0..3).map(|_| rng.gen_range(-8.0..8.0)).collect();
        let r = residual_transformed(&k, &labels, &spec);
        for i in 0..3 {
            let h = 1e-5 * k[i].abs().max(1.0);
            let mut kp = k.clone();
            kp[i] += h;
            let mut km = k.clone();
            km[i] -= h;
            let fd = (potential_b(&kp, &labels, &spec).0 - potential_b(&km, &labels, &spec).0)
                / (2.0 * h);
            assert!((fd - r[i]).abs() <= 1e-6 * inf_norm(&r).max(1.0));
        }
    }
}

#[test]
fn converges_for_extreme_couplings_at_order_one_hundred() {
    let n: Vec<i64> = (1..=100).collect();
    for c in [1e-6, 1.0, 1e8] {
        let spec = SystemSpec::new(100, 1.0, c);
        let report = solve(&spec, &qn(&n), &SolverConfig::default()).unwrap();
        assert!(report.ordering_ok, "c = {c}");
        assert!(report.iterations <= 200);
        let ord = check_ordering(&report.roots, &n, &spec);
        assert!(ord.roots_strictly_increasing_positive);
    }
}

#[test]
fn energy_consistent_with_roots() {
    let spec = SystemSpec::new(2, 1.0, 1.0);
    let report = solve(&spec, &qn(&[1, 2]), &SolverConfig::default()).unwrap();
    let e = energy(&report.roots);
    assert!((e - report.roots.iter().map(|k| k * k).sum::<f64>()).abs() < 1e-12);
    assert!(e > 0.0);
}

#[test]
fn random_starts_reach_the_same_roots() {
    let spec = SystemSpec::new(3, 1.0, 10.0);
    let n = qn(&[1, 4, 6]);
    let base = solve(&spec, &n, &SolverConfig::default()).unwrap();
    for seed in 0..5 {
        let cfg = SolverConfig {
            init_mode: InitMode::RandomBox {
                half_width: 40.0,
                seed,
            },
            ..SolverConfig::default()
        };
        let probe = solve(&spec, &n, &cfg).unwrap();
        for (a, b) in base.roots.iter().zip(probe.roots.iter()) {
            assert!((a - b).abs() <= 1e-8);
        }
    }
}
