//! Residual, potential, Hessian, and identity kernels for the three
//! transcendental systems describing the gas:
//!
//! * zero boundary conditions (full), raw form
//!   `L k_i = pi n_i + sum_{j != i} [atan(c/(k_i - k_j)) + atan(c/(k_i + k_j))]`
//!   and its smooth equivalent over labels `I_i = n_i + i - 1`
//!   `L k_i = pi I_i - sum_{j != i} [atan((k_i - k_j)/c) + atan((k_i + k_j)/c)]`;
//! * the reduced system with one root pinned at zero (an extra
//!   `2 atan(k_i/c)` per row);
//! * periodic boundary conditions
//!   `L k_i = 2 pi n_i + 2 sum_{j != i} atan(c/(k_i - k_j))`.
//!
//! The smooth forms are gradients of strictly convex potentials built from
//! `F(x) = integral_0^x atan(t/c) dt`, which is what makes the solution
//! unique and lets the solver run plain Newton descent.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::linalg::DenseSymMatrix;
use crate::model::SystemSpec;

/// Scalar potential value B{k}.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct PotentialValue(pub f64);

/// Reflection identity `atan(a) = (pi/2) sgn(a) - atan(1/a)`, defined for
/// nonzero `a`. Exists to test the equivalence of the raw and smooth forms;
/// production formulas use the smooth side directly.
pub fn arctan_reflect(alpha: f64) -> Result<f64> {
    if alpha == 0.0 {
        return Err(Error::UndefinedAtZero);
    }
    Ok((PI / 2.0).copysign(alpha) - (1.0 / alpha).atan())
}

/// `F(x) = x atan(x/c) - (c/2) ln(1 + (x/c)^2)`, the antiderivative of
/// `atan(t/c)` vanishing at 0. Even in `x`.
pub fn antiderivative_f(x: f64, c: f64) -> f64 {
    let t = x / c;
    if t.abs() > 1e150 {
        // t^2 would overflow; ln(1 + t^2) = 2 ln|t| + ln(1 + 1/t^2)
        return x * t.atan() - c * (t.abs().ln() + 0.5 * (1.0 / (t * t)).ln_1p());
    }
    x * t.atan() - 0.5 * c * (t * t).ln_1p()
}

fn check_same_len(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::LengthMismatch {
            expected: a,
            got: b,
        });
    }
    Ok(())
}

/// Raw zero-BC residual r_i = L k_i - pi n_i - sum_{j != i} [atan(c/(k_i - k_j)) + atan(c/(k_i + k_j))].
///
/// Undefined (jump discontinuity) where k_i - k_j = 0 or k_i + k_j = 0.
pub fn residual_raw(k: &[f64], n: &[i64], spec: &SystemSpec) -> Result<Vec<f64>> {
    check_same_len(k.len(), n.len())?;
    let c = spec.coupling;
    for i in 0..k.len() {
        for j in i + 1..k.len() {
            if k[i] - k[j] == 0.0 {
                return Err(Error::DegenerateConfiguration { i, j, plus: false });
            }
            if k[i] + k[j] == 0.0 {
                return Err(Error::DegenerateConfiguration { i, j, plus: true });
            }
        }
    }
    Ok((0..k.len())
        .map(|i| {
            let mut s = 0.0;
            for j in 0..k.len() {
                if j != i {
                    s += (c / (k[i] - k[j])).atan() + (c / (k[i] + k[j])).atan();
                }
            }
            spec.length * k[i] - PI * n[i] as f64 - s
        })
        .collect())
}

/// Smooth zero-BC residual over labels I, the gradient of `potential_b`.
/// Finite and continuous everywhere.
pub fn residual_transformed(k: &[f64], labels: &[i64], spec: &SystemSpec) -> Vec<f64> {
    let c = spec.coupling;
    (0..k.len())
        .map(|i| {
            let mut s = 0.0;
            for j in 0..k.len() {
                if j != i {
                    s += ((k[i] - k[j]) / c).atan() + ((k[i] + k[j]) / c).atan();
                }
            }
            spec.length * k[i] - PI * labels[i] as f64 + s
        })
        .collect()
}

/// Convex potential whose gradient is `residual_transformed`:
/// B = sum_j [L k_j^2/2 - pi I_j k_j] + (1/2) sum_{j != l} [F(k_j - k_l) + F(k_j + k_l)].
pub fn potential_b(k: &[f64], labels: &[i64], spec: &SystemSpec) -> PotentialValue {
    let c = spec.coupling;
    let mut b = 0.0;
    for (j, &kj) in k.iter().enumerate() {
        b += 0.5 * spec.length * kj * kj - PI * labels[j] as f64 * kj;
    }
    for j in 0..k.len() {
        for l in j + 1..k.len() {
            b += antiderivative_f(k[j] - k[l], c) + antiderivative_f(k[j] + k[l], c);
        }
    }
    PotentialValue(b)
}

/// Exact second-derivative matrix of `potential_b`; independent of the labels.
pub fn hessian_b(k: &[f64], spec: &SystemSpec) -> DenseSymMatrix {
    let c = spec.coupling;
    DenseSymMatrix::from_lower_fn(k.len(), |i, j| {
        if i == j {
            let mut d = spec.length;
            for (l, &kl) in k.iter().enumerate() {
                if l != i {
                    d += pair_weight(c, k[i] - kl) + pair_weight(c, k[i] + kl);
                }
            }
            d
        } else {
            pair_weight(c, k[i] + k[j]) - pair_weight(c, k[i] - k[j])
        }
    })
}

#[inline]
fn pair_weight(c: f64, x: f64) -> f64 {
    c / (c * c + x * x)
}

/// Both sides of the positive-definiteness identity
/// u^T B u = L sum u_j^2 + sum_{j<l} [c (u_j - u_l)^2 / (c^2 + (k_j - k_l)^2)
///                                  + c (u_j + u_l)^2 / (c^2 + (k_j + k_l)^2)].
/// The left side goes through the assembled Hessian, the right side through
/// the pair formula, so agreement checks both routes.
pub fn quadratic_form_parts(k: &[f64], u: &[f64], spec: &SystemSpec) -> Result<(f64, f64)> {
    check_same_len(k.len(), u.len())?;
    let lhs = hessian_b(k, spec).quadratic_form(u);
    let rhs = pair_form_rhs(k, u, spec, 0.0);
    Ok((lhs, rhs))
}

fn pair_form_rhs(k: &[f64], u: &[f64], spec: &SystemSpec, extra_diag_weight: f64) -> f64 {
    let c = spec.coupling;
    let mut rhs = 0.0;
    for (j, &uj) in u.iter().enumerate() {
        let mut d = spec.length;
        if extra_diag_weight != 0.0 {
            d += extra_diag_weight * pair_weight(c, k[j]);
        }
        rhs += uj * uj * d;
    }
    for j in 0..k.len() {
        for l in j + 1..k.len() {
            let dm = u[j] - u[l];
            let dp = u[j] + u[l];
            rhs += pair_weight(c, k[j] - k[l]) * dm * dm + pair_weight(c, k[j] + k[l]) * dp * dp;
        }
    }
    rhs
}

/// Labels for the reduced system: with the pinned zero occupying the first
/// slot of the full problem, entry m of the reduced set sits at full-system
/// position m + 2 (1-based), so I = n_m + m.
pub fn reduced_labels(n: &[i64]) -> Vec<i64> {
    n.iter()
        .enumerate()
        .map(|(m, &v)| v + m as i64 + 1)
        .collect()
}

/// Smooth reduced residual: the full-system rows plus `2 atan(k_i/c)` from
/// the root pinned at zero. `n` are the N-1 remaining quantum numbers.
pub fn residual_reduced(k: &[f64], n: &[i64], spec: &SystemSpec) -> Vec<f64> {
    residual_reduced_from_labels(k, &reduced_labels(n), spec)
}

pub fn residual_reduced_from_labels(k: &[f64], labels: &[i64], spec: &SystemSpec) -> Vec<f64> {
    let c = spec.coupling;
    let mut r = residual_transformed(k, labels, spec);
    for (ri, &ki) in r.iter_mut().zip(k) {
        *ri += 2.0 * (ki / c).atan();
    }
    r
}

/// Raw reduced residual r_i = L k_i - pi n_i - 2 atan(c/k_i) - sum_{j != i} [...].
/// Undefined at k_i = 0 and at coinciding k_i +- k_j.
pub fn residual_reduced_raw(k: &[f64], n: &[i64], spec: &SystemSpec) -> Result<Vec<f64>> {
    let c = spec.coupling;
    if let Some(i) = k.iter().position(|&v| v == 0.0) {
        return Err(Error::DegenerateConfiguration {
            i,
            j: i,
            plus: false,
        });
    }
    let mut r = residual_raw(k, n, spec)?;
    for (ri, &ki) in r.iter_mut().zip(k) {
        *ri -= 2.0 * (c / ki).atan();
    }
    Ok(r)
}

/// Reduced potential: adds `2 F(k_j)` per unknown to the full structure.
pub fn potential_b_reduced(k: &[f64], labels: &[i64], spec: &SystemSpec) -> PotentialValue {
    let c = spec.coupling;
    let mut b = potential_b(k, labels, spec).0;
    for &kj in k {
        b += 2.0 * antiderivative_f(kj, c);
    }
    PotentialValue(b)
}

/// Reduced Hessian: the full Hessian with `2c/(c^2 + k_i^2)` added on the
/// diagonal.
pub fn hessian_b_reduced(k: &[f64], spec: &SystemSpec) -> DenseSymMatrix {
    let c = spec.coupling;
    let mut h = hessian_b(k, spec);
    for (i, &ki) in k.iter().enumerate() {
        let v = h.get(i, i) + 2.0 * pair_weight(c, ki);
        h.set(i, i, v);
    }
    h
}

/// Identity for the reduced Hessian; the right side carries the
/// strengthened diagonal `L + 2c/(k_j^2 + c^2)`.
pub fn quadratic_form_parts_reduced(k: &[f64], u: &[f64], spec: &SystemSpec) -> Result<(f64, f64)> {
    check_same_len(k.len(), u.len())?;
    let lhs = hessian_b_reduced(k, spec).quadratic_form(u);
    let rhs = pair_form_rhs(k, u, spec, 2.0);
    Ok((lhs, rhs))
}

/// Raw periodic residual r_i = L k_i - 2 pi n_i - 2 sum_{j != i} atan(c/(k_i - k_j)).
pub fn residual_periodic(k: &[f64], n: &[i64], spec: &SystemSpec) -> Result<Vec<f64>> {
    check_same_len(k.len(), n.len())?;
    let c = spec.coupling;
    for i in 0..k.len() {
        for j in i + 1..k.len() {
            if k[i] - k[j] == 0.0 {
                return Err(Error::DegenerateConfiguration { i, j, plus: false });
            }
        }
    }
    Ok((0..k.len())
        .map(|i| {
            let mut s = 0.0;
            for j in 0..k.len() {
                if j != i {
                    s += (c / (k[i] - k[j])).atan();
                }
            }
            spec.length * k[i] - 2.0 * PI * n[i] as f64 - 2.0 * s
        })
        .collect())
}

/// Half-integer labels J_i = n_i + i - (N+1)/2 for ascending periodic
/// quantum numbers; the smooth periodic system reads
/// `L k_i = 2 pi J_i - 2 sum_{j != i} atan((k_i - k_j)/c)`.
pub fn periodic_labels(n_sorted: &[i64]) -> Vec<f64> {
    let n_len = n_sorted.len() as f64;
    n_sorted
        .iter()
        .enumerate()
        .map(|(i, &v)| v as f64 + (i + 1) as f64 - 0.5 * (n_len + 1.0))
        .collect()
}

/// Smooth periodic residual, the gradient of `potential_periodic`.
pub fn residual_periodic_smooth(k: &[f64], labels_j: &[f64], spec: &SystemSpec) -> Vec<f64> {
    let c = spec.coupling;
    (0..k.len())
        .map(|i| {
            let mut s = 0.0;
            for j in 0..k.len() {
                if j != i {
                    s += ((k[i] - k[j]) / c).atan();
                }
            }
            spec.length * k[i] - 2.0 * PI * labels_j[i] + 2.0 * s
        })
        .collect()
}

/// Convex potential for the periodic system (difference pair terms only).
pub fn potential_periodic(k: &[f64], labels_j: &[f64], spec: &SystemSpec) -> PotentialValue {
    let c = spec.coupling;
    let mut b = 0.0;
    for (j, &kj) in k.iter().enumerate() {
        b += 0.5 * spec.length * kj * kj - 2.0 * PI * labels_j[j] * kj;
    }
    for j in 0..k.len() {
        for l in j + 1..k.len() {
            b += 2.0 * antiderivative_f(k[j] - k[l], c);
        }
    }
    PotentialValue(b)
}

pub fn hessian_periodic(k: &[f64], spec: &SystemSpec) -> DenseSymMatrix {
    let c = spec.coupling;
    DenseSymMatrix::from_lower_fn(k.len(), |i, j| {
        if i == j {
            let mut d = spec.length;
            for (l, &kl) in k.iter().enumerate() {
                if l != i {
                    d += 2.0 * pair_weight(c, k[i] - kl);
                }
            }
            d
        } else {
            -2.0 * pair_weight(c, k[i] - k[j])
        }
    })
}

pub fn inf_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, &x| m.max(x.abs()))
}
