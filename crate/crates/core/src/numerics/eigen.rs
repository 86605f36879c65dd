//! Lowest eigenpairs of the assembled pencil (K, M) via the symmetric matrix
//! M^{−1/2} K M^{−1/2}: Sturm-count bisection for eigenvalues, inverse
//! iteration for eigenvectors.

use serde::{Deserialize, Serialize};

use super::grid::Grid1D;
use super::problem::{assemble, SturmLiouvilleProblem};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenResult {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Computational unknowns χ at the grid nodes, normalized Σ ŵ χ² h = 1.
    pub eigenvectors: Vec<Vec<f64>>,
    /// ‖Ty − Ey‖₂ for the unit eigenvector y of the symmetrized matrix.
    pub residual_norms: Vec<f64>,
    pub grid: Grid1D,
    /// Physical coordinate of every node.
    pub coordinates: Vec<f64>,
    /// Envelope f at every node; ψ = f·χ.
    pub envelope: Vec<f64>,
}

impl EigenResult {
    /// ψ at the nodes for mode `j`.
    pub fn physical_eigenvector(&self, j: usize) -> Vec<f64> {
        self.eigenvectors[j]
            .iter()
            .zip(&self.envelope)
            .map(|(v, f)| v * f)
            .collect()
    }

    /// Sign changes of mode `j`, ignoring components below 1e−12 of the peak.
    pub fn node_count(&self, j: usize) -> usize {
        count_sign_changes(&self.eigenvectors[j])
    }
}

pub(crate) fn count_sign_changes(v: &[f64]) -> usize {
    let peak = v.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    let mut changes = 0;
    let mut last = 0.0;
    for &x in v {
        if x.abs() <= 1e-12 * peak {
            continue;
        }
        if last != 0.0 && x * last < 0.0 {
            changes += 1;
        }
        last = x;
    }
    changes
}

/// Symmetric tridiagonal matrix: diagonal `a`, off-diagonal `b`.
struct Tridiagonal {
    a: Vec<f64>,
    b: Vec<f64>,
    b2: Vec<f64>,
    pivmin: f64,
}

impl Tridiagonal {
    fn new(a: Vec<f64>, b: Vec<f64>) -> Self {
        let b2: Vec<f64> = b.iter().map(|x| x * x).collect();
        let max_b2 = b2.iter().fold(1.0_f64, |m, &x| m.max(x));
        Self {
            a,
            b,
            b2,
            pivmin: f64::MIN_POSITIVE * max_b2,
        }
    }

    /// Number of eigenvalues strictly below σ.
    fn count_below(&self, sigma: f64) -> usize {
        let mut count = 0;
        let mut d = self.a[0] - sigma;
        for i in 0..self.a.len() {
            if i > 0 {
                d = self.a[i] - sigma - self.b2[i - 1] / d;
            }
            if d.abs() < self.pivmin {
                d = -self.pivmin;
            }
            if d < 0.0 {
                count += 1;
            }
        }
        count
    }

    fn gershgorin(&self) -> (f64, f64) {
        let n = self.a.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 { self.b[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < n { self.b[i].abs() } else { 0.0 };
            lo = lo.min(self.a[i] - left - right);
            hi = hi.max(self.a[i] + left + right);
        }
        let pad = 2.0 * f64::EPSILON * lo.abs().max(hi.abs()) + self.pivmin;
        (lo - pad, hi + pad)
    }

    /// Eigenvalue with zero-based index `j`.
    fn eigenvalue(&self, j: usize, bounds: (f64, f64)) -> f64 {
        let (mut lo, mut hi) = bounds;
        for _ in 0..400 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if hi - lo <= 2.0 * f64::EPSILON * (lo.abs() + hi.abs()) + self.pivmin {
                break;
            }
            if self.count_below(mid) > j {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    fn apply(&self, y: &[f64]) -> Vec<f64> {
        let n = y.len();
        (0..n)
            .map(|i| {
                let mut s = self.a[i] * y[i];
                if i > 0 {
                    s += self.b[i - 1] * y[i - 1];
                }
                if i + 1 < n {
                    s += self.b[i] * y[i + 1];
                }
                s
            })
            .collect()
    }

    /// Unit eigenvector for eigenvalue `e` by inverse iteration with a
    /// partially pivoted LU of T − eI.
    fn eigenvector(&self, e: f64) -> Vec<f64> {
        let n = self.a.len();
        let scale = self.a.iter().chain(&self.b).fold(0.0_f64, |m, x| m.max(x.abs()));
        let tiny = f64::EPSILON * scale.max(f64::MIN_POSITIVE);
        let mut d: Vec<f64> = self.a.iter().map(|x| x - e).collect();
        let mut dl = self.b.clone();
        let mut du = self.b.clone();
        let mut du2 = vec![0.0; n.saturating_sub(2)];
        let mut swapped = vec![false; n.saturating_sub(1)];
        for i in 0..n - 1 {
            if d[i].abs() >= dl[i].abs() {
                if d[i] == 0.0 {
                    d[i] = tiny;
                }
                let fact = dl[i] / d[i];
                dl[i] = fact;
                d[i + 1] -= fact * du[i];
            } else {
                let fact = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = fact;
                let temp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = temp - fact * d[i + 1];
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] = -fact * du[i + 1];
                }
                swapped[i] = true;
            }
        }
        if d[n - 1] == 0.0 {
            d[n - 1] = tiny;
        }
        let solve = |rhs: &mut Vec<f64>| {
            for i in 0..n - 1 {
                if swapped[i] {
                    let temp = rhs[i];
                    rhs[i] = rhs[i + 1];
                    rhs[i + 1] = temp - dl[i] * rhs[i];
                } else {
                    rhs[i + 1] -= dl[i] * rhs[i];
                }
            }
            rhs[n - 1] /= d[n - 1];
            if n > 1 {
                rhs[n - 2] = (rhs[n - 2] - du[n - 2] * rhs[n - 1]) / d[n - 2];
            }
            for i in (0..n.saturating_sub(2)).rev() {
                rhs[i] = (rhs[i] - du[i] * rhs[i + 1] - du2[i] * rhs[i + 2]) / d[i];
            }
        };
        let mut y: Vec<f64> = (0..n).map(|i| 1.0 + 0.5 * (0.7 * i as f64).sin()).collect();
        for _ in 0..4 {
            solve(&mut y);
            let norm = y.iter().map(|x| x * x).sum::<f64>().sqrt();
            y.iter_mut().for_each(|x| *x /= norm);
        }
        y
    }
}

/// The `k` smallest eigenpairs, `k ≤ n/4`.
pub fn lowest_eigenvalues(problem: &SturmLiouvilleProblem, k: usize) -> Result<EigenResult> {
    let grid = problem.grid;
    if k == 0 || k > grid.n / 4 {
        return Err(Error::InvalidGrid(format!(
            "requested {k} modes from {} points; at most n/4 are resolved",
            grid.n
        )));
    }
    let assembled = assemble(problem)?;
    let s: Vec<f64> = assembled.mass.iter().map(|w| 1.0 / w.sqrt()).collect();
    let a: Vec<f64> = assembled.diag.iter().zip(&s).map(|(d, si)| d * si * si).collect();
    let b: Vec<f64> = assembled
        .off
        .iter()
        .enumerate()
        .map(|(i, e)| e * s[i] * s[i + 1])
        .collect();
    let t = Tridiagonal::new(a, b);
    let bounds = t.gershgorin();
    let bottom = t.eigenvalue(0, bounds);
    let edge = t.eigenvalue(grid.n - 1, bounds);

    let mut eigenvalues = Vec::with_capacity(k);
    let mut eigenvectors = Vec::with_capacity(k);
    let mut residual_norms = Vec::with_capacity(k);
    for j in 0..k {
        let e = if j == 0 { bottom } else { t.eigenvalue(j, bounds) };
        if e - bottom > 0.95 * (edge - bottom) {
            return Err(Error::Unresolved { index: j, value: e, edge });
        }
        let y = t.eigenvector(e);
        let ty = t.apply(&y);
        let residual = ty
            .iter()
            .zip(&y)
            .map(|(a, b)| (a - e * b).powi(2))
            .sum::<f64>()
            .sqrt();
        let inv_sqrt_h = 1.0 / grid.h.sqrt();
        let mut v: Vec<f64> = y.iter().zip(&s).map(|(yi, si)| yi * si * inv_sqrt_h).collect();
        let peak = v.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
        if let Some(first) = v.iter().find(|x| x.abs() > 1e-12 * peak) {
            if *first < 0.0 {
                v.iter_mut().for_each(|x| *x = -*x);
            }
        }
        eigenvalues.push(e);
        eigenvectors.push(v);
        residual_norms.push(residual);
    }
    let nodes = grid.nodes();
    let coordinates: Vec<f64> = nodes.iter().map(|&t| problem.coordinate.to_physical(t)).collect();
    let envelope = coordinates.iter().map(|&x| problem.envelope.value(x)).collect();
    Ok(EigenResult {
        eigenvalues,
        eigenvectors,
        residual_norms,
        grid,
        coordinates,
        envelope,
    })
}
