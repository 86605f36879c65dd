//! Sturm–Liouville forms of the two model operators and the problem layouts
//! used to solve them.
//!
//! Radial Higgs operator: w = r, p = (ħ²/2m)·r(1+λr²)², because with
//! P = (1+λr²)² and Q = (1+λr²)(1+5λr²)/r one has (Q − P′)/P = 1/r.
//! CRS operator: w = (1+λx²)^{−1/2}, p = (ħ²/2m)(1+λx²)^{1/2}, because
//! (w𝒦)′/w = λx.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::grid::{BoundaryConditions, Grid1D};
use super::indicial::{end_exponent, IndicialExponent, Side};
use super::problem::{Coordinate, FrobeniusEnvelope, ScalarFn, SlForm, SturmLiouvilleProblem};
use crate::error::{Error, Result};
use crate::params::PhysParams;

/// Relative distance from a singular end used to read off its power law.
const PROBE_DISTANCE: f64 = 1e-5;

pub fn higgs_form(mprime: i32, params: &PhysParams, potential: ScalarFn) -> SlForm {
    let c0 = params.kinetic_scale();
    let lam = params.lambda;
    let m2 = f64::from(mprime).powi(2);
    SlForm::new(
        move |r| {
            let k = 1.0 + lam * r * r;
            c0 * r * k * k
        },
        move |r| {
            let lr2 = lam * r * r;
            c0 * (1.0 + lr2) * (1.0 + 5.0 * lr2)
        },
        move |r| {
            let p0 = -c0 * (3.0 * lam - lam * m2 + 3.75 * lam * lam * r * r - m2 / (r * r));
            r * (p0 + potential(r))
        },
        |r| r,
    )
}

pub fn crs_form(params: &PhysParams, potential: ScalarFn) -> SlForm {
    let c0 = params.kinetic_scale();
    let lam = params.lambda;
    SlForm::new(
        move |x| c0 * (1.0 + lam * x * x).sqrt(),
        move |x| c0 * lam * x / (1.0 + lam * x * x).sqrt(),
        move |x| potential(x) / (1.0 + lam * x * x).sqrt(),
        move |x| 1.0 / (1.0 + lam * x * x).sqrt(),
    )
}

/// Treatment of one end of a finite interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum EndKind {
    Dirichlet,
    /// Singular end where p vanishes like d^α: the local power law is
    /// factored out and a zero-flux condition imposed.
    Regular { alpha: f64 },
}

/// Power laws found at the ends of a laid-out problem.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct EndAnalysis {
    pub left: Option<IndicialExponent>,
    pub right: Option<IndicialExponent>,
}

impl EndAnalysis {
    /// True when some end admits no real power law.
    pub fn falls_to_centre(&self) -> bool {
        [self.left, self.right]
            .iter()
            .flatten()
            .any(|e| e.exponent.is_none())
    }
}

fn used_exponent(e: &IndicialExponent, alpha: f64) -> f64 {
    // with no real root, keep the common real part of the complex pair
    e.exponent.unwrap_or(0.5 * (1.0 - alpha))
}

/// [a, b] with the given end treatments.
pub fn interval_problem(
    form: SlForm,
    a: f64,
    b: f64,
    left: EndKind,
    right: EndKind,
    n: usize,
) -> Result<(SturmLiouvilleProblem, EndAnalysis)> {
    let bc = match (left, right) {
        (EndKind::Dirichlet, EndKind::Dirichlet) => BoundaryConditions::DirichletBoth,
        (EndKind::Regular { .. }, EndKind::Dirichlet) => BoundaryConditions::RegularLeftDirichletRight,
        (EndKind::Regular { .. }, EndKind::Regular { .. }) => BoundaryConditions::RegularBoth,
        (EndKind::Dirichlet, EndKind::Regular { .. }) => {
            return Err(Error::InvalidGrid("a regular right end needs a regular left end".into()))
        }
    };
    let grid = Grid1D::new(a, b, n, bc)?;
    let d = PROBE_DISTANCE * (b - a);
    let mut analysis = EndAnalysis::default();
    let mut envelope = FrobeniusEnvelope::none();
    if let EndKind::Regular { alpha } = left {
        let e = end_exponent(&form, a, Side::Left, alpha, d);
        envelope.left = Some((a, used_exponent(&e, alpha)));
        analysis.left = Some(e);
    }
    if let EndKind::Regular { alpha } = right {
        let e = end_exponent(&form, b, Side::Right, alpha, d);
        envelope.right = Some((b, used_exponent(&e, alpha)));
        analysis.right = Some(e);
    }
    Ok((SturmLiouvilleProblem::new(form, grid).with_envelope(envelope), analysis))
}

/// [origin, ∞) compactified by x = origin + scale·t/(1−t), regular at the
/// origin (p vanishing like d^α there) and Dirichlet at infinity.
pub fn half_line_problem(
    form: SlForm,
    origin: f64,
    alpha: f64,
    scale: f64,
    n: usize,
) -> Result<(SturmLiouvilleProblem, EndAnalysis)> {
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(Error::InvalidGrid(format!("stretch scale must be positive, got {scale}")));
    }
    let grid = Grid1D::new(0.0, 1.0, n, BoundaryConditions::RegularLeftDirichletRight)?;
    let e = end_exponent(&form, origin, Side::Left, alpha, PROBE_DISTANCE * scale);
    let envelope = FrobeniusEnvelope {
        left: Some((origin, used_exponent(&e, alpha))),
        right: None,
    };
    let problem = SturmLiouvilleProblem::new(form, grid)
        .with_envelope(envelope)
        .with_coordinate(Coordinate::HalfLine { origin, scale });
    Ok((
        problem,
        EndAnalysis {
            left: Some(e),
            right: None,
        },
    ))
}

/// Natural length of the radial problem: 1/√λ on the sphere, the oscillator
/// length √(ħ/mω) in the flat limit.
pub fn radial_scale(params: &PhysParams) -> f64 {
    if params.lambda > 0.0 {
        1.0 / params.lambda.sqrt()
    } else {
        (params.hbar / (params.mass * params.omega)).sqrt()
    }
}

/// Radial Higgs channel m' on the whole half-line.
pub fn higgs_channel_problem(
    mprime: i32,
    params: &PhysParams,
    potential: ScalarFn,
    n: usize,
) -> Result<(SturmLiouvilleProblem, EndAnalysis)> {
    half_line_problem(higgs_form(mprime, params, potential), 0.0, 1.0, radial_scale(params), n)
}

/// The harmonic potential ½mω²r² as a shareable closure.
pub fn oscillator_potential(params: &PhysParams) -> ScalarFn {
    let k = 0.5 * params.mass * params.omega * params.omega;
    Arc::new(move |r| k * r * r)
}
