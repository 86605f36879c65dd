use serde::{Deserialize, Serialize};

use super::derivative::derivatives;
use super::eigen::{lowest_eigenvalues, EigenResult};
use super::grid::Grid1D;
use super::problem::{SlForm, SturmLiouvilleProblem};
use crate::error::{Error, Result};

/// max_i |p2ψ″ + p1ψ′ + (p0+V)ψ − Eψ| / (|E||ψ| + ε) over the grid nodes,
/// skipping nodes where |ψ| < 1e−10·max|ψ|.
pub fn residual_norm<P2, P1, P0, Psi>(
    p2: P2,
    p1: P1,
    p0_plus_v: P0,
    psi: Psi,
    energy: f64,
    grid: &Grid1D,
) -> f64
where
    P2: Fn(f64) -> f64,
    P1: Fn(f64) -> f64,
    P0: Fn(f64) -> f64,
    Psi: Fn(f64) -> f64,
{
    residual_norm_at(p2, p1, p0_plus_v, psi, energy, &grid.nodes())
}

/// [`residual_norm`] over arbitrary sample points.
pub fn residual_norm_at<P2, P1, P0, Psi>(
    p2: P2,
    p1: P1,
    p0_plus_v: P0,
    psi: Psi,
    energy: f64,
    points: &[f64],
) -> f64
where
    P2: Fn(f64) -> f64,
    P1: Fn(f64) -> f64,
    P0: Fn(f64) -> f64,
    Psi: Fn(f64) -> f64,
{
    let values: Vec<f64> = points.iter().map(|&x| psi(x)).collect();
    let peak = values.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    let mut worst = 0.0_f64;
    for (&x, &value) in points.iter().zip(&values) {
        if value.abs() < 1e-10 * peak {
            continue;
        }
        let d = derivatives(&psi, x);
        let lhs = p2(x) * d.second + p1(x) * d.first + p0_plus_v(x) * d.value;
        let rel = (lhs - energy * d.value).abs() / (energy.abs() * d.value.abs() + 1e-300);
        worst = worst.max(rel);
    }
    worst
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RayleighEstimate {
    /// Weighted mean of the pointwise energy.
    pub energy: f64,
    /// Weighted standard deviation over |mean|.
    pub constancy: f64,
    /// Largest |e(x) − mean|/|mean|.
    pub max_deviation: f64,
}

/// Pointwise energy e(x) = [−(pψ′)′ + qψ]/(wψ) of the physical form at the
/// given points, summarized with weights wψ²·Δx.
pub fn rayleigh_quotient_at<F: Fn(f64) -> f64>(form: &SlForm, psi: F, points: &[f64]) -> Result<RayleighEstimate> {
    if points.len() < 2 {
        return Err(Error::InvalidGrid("need at least two sample points".into()));
    }
    let mut energies = Vec::with_capacity(points.len());
    let mut weights = Vec::with_capacity(points.len());
    let mut sign = 0.0;
    for (i, &x) in points.iter().enumerate() {
        let d = derivatives(&psi, x);
        if d.value == 0.0 || (sign != 0.0 && d.value * sign < 0.0) {
            return Err(Error::NodeDetected(x));
        }
        sign = d.value.signum();
        energies.push(form.local_energy(x, d.value, d.first, d.second));
        let lo = points[i.saturating_sub(1)];
        let hi = points[(i + 1).min(points.len() - 1)];
        weights.push((form.w)(x) * d.value * d.value * 0.5 * (hi - lo).abs());
    }
    let total: f64 = weights.iter().sum();
    let mean = energies.iter().zip(&weights).map(|(e, w)| e * w).sum::<f64>() / total;
    let var = energies
        .iter()
        .zip(&weights)
        .map(|(e, w)| w * (e - mean).powi(2))
        .sum::<f64>()
        / total;
    let max_dev = energies.iter().map(|e| (e - mean).abs()).fold(0.0, f64::max);
    Ok(RayleighEstimate {
        energy: mean,
        constancy: var.sqrt() / mean.abs(),
        max_deviation: max_dev / mean.abs(),
    })
}

/// [`rayleigh_quotient_at`] on the problem's nodes, dropping ten nodes next to
/// each end and thinning to at most about 400 points.
pub fn rayleigh_quotient<F: Fn(f64) -> f64>(problem: &SturmLiouvilleProblem, psi: F) -> Result<RayleighEstimate> {
    let nodes = problem.grid.nodes();
    let n = nodes.len();
    if n < 24 {
        return Err(Error::InvalidGrid("too few nodes for a Rayleigh scan".into()));
    }
    let stride = ((n - 20) / 400).max(1);
    let points: Vec<f64> = nodes[10..n - 10]
        .iter()
        .step_by(stride)
        .map(|&t| problem.coordinate.to_physical(t))
        .collect();
    rayleigh_quotient_at(&problem.form, psi, &points)
}

/// Scale samples so that Σ w ψ² h = 1.
pub fn normalize(psi: &[f64], w: &[f64], h: f64) -> Result<Vec<f64>> {
    let norm2: f64 = psi.iter().zip(w).map(|(p, wi)| wi * p * p).sum::<f64>() * h;
    if !(norm2 > 0.0 && norm2.is_finite()) {
        return Err(Error::ZeroNorm);
    }
    let inv = 1.0 / norm2.sqrt();
    Ok(psi.iter().map(|p| p * inv).collect())
}

/// Two-grid extrapolation for an O(h²) quantity.
pub fn richardson(e_coarse: f64, h_coarse: f64, e_fine: f64, h_fine: f64) -> f64 {
    let (a, b) = (h_coarse * h_coarse, h_fine * h_fine);
    (e_fine * a - e_coarse * b) / (a - b)
}

/// log2 of successive error ratios from three grids halving h each time.
pub fn observed_order(e_h: f64, e_h2: f64, e_h4: f64) -> f64 {
    ((e_h - e_h2) / (e_h2 - e_h4)).abs().log2()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RefinedSpectrum {
    pub coarse: Vec<f64>,
    pub fine: Vec<f64>,
    pub extrapolated: Vec<f64>,
    pub h_coarse: f64,
    pub h_fine: f64,
}

/// Solve on n and 2n points and extrapolate each of the lowest `k` levels.
pub fn solve_refined<B>(build: B, n: usize, k: usize) -> Result<(RefinedSpectrum, EigenResult)>
where
    B: Fn(usize) -> Result<SturmLiouvilleProblem> + Sync,
{
    let (coarse, fine) = rayon::join(
        || build(n).and_then(|p| lowest_eigenvalues(&p, k)),
        || build(2 * n).and_then(|p| lowest_eigenvalues(&p, k)),
    );
    let (coarse, fine) = (coarse?, fine?);
    let (h1, h2) = (coarse.grid.h, fine.grid.h);
    let extrapolated = coarse
        .eigenvalues
        .iter()
        .zip(&fine.eigenvalues)
        .map(|(&a, &b)| richardson(a, h1, b, h2))
        .collect();
    Ok((
        RefinedSpectrum {
            coarse: coarse.eigenvalues.clone(),
            fine: fine.eigenvalues.clone(),
            extrapolated,
            h_coarse: h1,
            h_fine: h2,
        },
        fine,
    ))
}
