//! Dense symmetric matrices with a Cholesky factorization that exposes its
//! pivots, so leading principal minors can be accumulated in log space.

use serde::Serialize;

use crate::error::{Error, Result};

/// Symmetric matrix stored as the packed lower triangle (row-major), so
/// `get(i, j) == get(j, i)` holds by construction.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DenseSymMatrix {
    order: usize,
    data: Vec<f64>,
}

#[inline]
fn tri(i: usize, j: usize) -> usize {
    debug_assert!(j <= i);
    i * (i + 1) / 2 + j
}

impl DenseSymMatrix {
    pub fn zeros(order: usize) -> Self {
        Self {
            order,
            data: vec![0.0; order * (order + 1) / 2],
        }
    }

    /// Build from a function evaluated only on the lower triangle (j <= i).
    pub fn from_lower_fn(order: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(order * (order + 1) / 2);
        for i in 0..order {
            for j in 0..=i {
                data.push(f(i, j));
            }
        }
        Self { order, data }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        if j <= i {
            self.data[tri(i, j)]
        } else {
            self.data[tri(j, i)]
        }
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        let idx = if j <= i { tri(i, j) } else { tri(j, i) };
        self.data[idx] = v;
    }

    /// y = M x
    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        let n = self.order;
        let mut y = vec![0.0; n];
        for i in 0..n {
            let row = &self.data[tri(i, 0)..=tri(i, i)];
            let mut acc = 0.0;
            for (j, &m) in row.iter().enumerate() {
                acc += m * x[j];
                if j < i {
                    y[j] += m * x[i];
                }
            }
            y[i] += acc;
        }
        y
    }

    /// x^T M x
    pub fn quadratic_form(&self, x: &[f64]) -> f64 {
        self.mul_vec(x).iter().zip(x).map(|(a, b)| a * b).sum()
    }

    /// Cholesky factorization M = L L^T. Fails with the pivot index and the
    /// minor logs accumulated so far if a pivot is not strictly positive.
    pub fn cholesky(&self) -> Result<CholeskyFactor> {
        let n = self.order;
        let mut l = self.data.clone();
        let mut log_pivots: Vec<f64> = Vec::with_capacity(n);
        for i in 0..n {
            for j in 0..i {
                let (head, tail) = l.split_at_mut(tri(i, 0));
                let row_j = &head[tri(j, 0)..tri(j, 0) + j];
                let row_i = &mut tail[..=i];
                let dot: f64 = row_i[..j].iter().zip(row_j).map(|(a, b)| a * b).sum();
                row_i[j] = (row_i[j] - dot) / head[tri(j, 0) + j];
            }
            let dot: f64 = l[tri(i, 0)..tri(i, i)].iter().map(|a| a * a).sum();
            let pivot = l[tri(i, i)] - dot;
            if pivot <= 0.0 || pivot.is_nan() {
                return Err(Error::NotPositiveDefinite {
                    pivot_index: i,
                    pivot,
                    partial_log_minors: log_pivots
                        .iter()
                        .scan(0.0, |acc, &p| {
                            *acc += p;
                            Some(*acc)
                        })
                        .collect(),
                });
            }
            log_pivots.push(pivot.ln());
            l[tri(i, i)] = pivot.sqrt();
        }
        Ok(CholeskyFactor {
            order: n,
            l,
            log_pivots,
        })
    }
}

/// Lower-triangular Cholesky factor with the log of each pivot d_i = L_ii^2.
#[derive(Debug, Clone)]
pub struct CholeskyFactor {
    order: usize,
    l: Vec<f64>,
    log_pivots: Vec<f64>,
}

impl CholeskyFactor {
    /// Solve M x = b via the two triangular systems.
    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.order;
        let mut x = b.to_vec();
        for i in 0..n {
            let row = &self.l[tri(i, 0)..tri(i, i)];
            let dot: f64 = row.iter().zip(&x).map(|(a, b)| a * b).sum();
            x[i] = (x[i] - dot) / self.l[tri(i, i)];
        }
        for i in (0..n).rev() {
            let mut v = x[i];
            // column i of L is strided across the packed rows
            #[allow(clippy::needless_range_loop)]
            for j in i + 1..n {
                v -= self.l[tri(j, i)] * x[j];
            }
            x[i] = v / self.l[tri(i, i)];
        }
        x
    }

    /// Natural logs of the leading principal minors: log G_j = sum_{i<=j} log d_i.
    pub fn log_minors(&self) -> Vec<f64> {
        self.log_pivots
            .iter()
            .scan(0.0, |acc, &p| {
                *acc += p;
                Some(*acc)
            })
            .collect()
    }

    pub fn log_pivots(&self) -> &[f64] {
        &self.log_pivots
    }
}
