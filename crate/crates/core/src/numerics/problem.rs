use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::grid::{Boundary, Grid1D};
use crate::error::{Error, Result};

pub type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Sturm–Liouville coefficients of −(pψ′)′ + qψ = E·wψ in the physical
/// coordinate. `dp` is p′, needed to move the local power law into the
/// coefficients and to evaluate pointwise energies.
#[derive(Clone)]
pub struct SlForm {
    pub p: ScalarFn,
    pub dp: ScalarFn,
    pub q: ScalarFn,
    pub w: ScalarFn,
}

impl SlForm {
    pub fn new<P, D, Q, W>(p: P, dp: D, q: Q, w: W) -> Self
    where
        P: Fn(f64) -> f64 + Send + Sync + 'static,
        D: Fn(f64) -> f64 + Send + Sync + 'static,
        Q: Fn(f64) -> f64 + Send + Sync + 'static,
        W: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self {
            p: Arc::new(p),
            dp: Arc::new(dp),
            q: Arc::new(q),
            w: Arc::new(w),
        }
    }

    /// [−(pψ′)′ + qψ]/(wψ) from ψ, ψ′, ψ″ at x.
    pub fn local_energy(&self, x: f64, value: f64, first: f64, second: f64) -> f64 {
        let p = (self.p)(x);
        let dp = (self.dp)(x);
        (-p * second - dp * first + (self.q)(x) * value) / ((self.w)(x) * value)
    }
}

impl fmt::Debug for SlForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("SlForm { .. }")
    }
}

/// f(x) = (x − a)^ν (b − x)^μ, the local power laws at singular ends.
/// The unknown becomes χ = ψ/f, which is smooth at both ends.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct FrobeniusEnvelope {
    pub left: Option<(f64, f64)>,
    pub right: Option<(f64, f64)>,
}

impl FrobeniusEnvelope {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn value(&self, x: f64) -> f64 {
        let mut f = 1.0;
        if let Some((a, nu)) = self.left {
            f *= (x - a).powf(nu);
        }
        if let Some((b, mu)) = self.right {
            f *= (b - x).powf(mu);
        }
        f
    }

    /// (f′/f, f″/f).
    fn log_derivatives(&self, x: f64) -> (f64, f64) {
        let mut first = 0.0;
        let mut curvature = 0.0;
        if let Some((a, nu)) = self.left {
            first += nu / (x - a);
            curvature -= nu / ((x - a) * (x - a));
        }
        if let Some((b, mu)) = self.right {
            first -= mu / (b - x);
            curvature -= mu / ((b - x) * (b - x));
        }
        (first, first * first + curvature)
    }
}

/// Map from the computational variable t to the physical coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Coordinate {
    Identity,
    /// x = origin + scale·t/(1 − t), compactifying [origin, ∞) onto [0, 1).
    HalfLine { origin: f64, scale: f64 },
}

impl Coordinate {
    pub fn to_physical(&self, t: f64) -> f64 {
        match *self {
            Coordinate::Identity => t,
            Coordinate::HalfLine { origin, scale } => origin + scale * t / (1.0 - t),
        }
    }

    pub fn jacobian(&self, t: f64) -> f64 {
        match *self {
            Coordinate::Identity => 1.0,
            Coordinate::HalfLine { scale, .. } => scale / ((1.0 - t) * (1.0 - t)),
        }
    }
}

/// A Sturm–Liouville eigenproblem: physical coefficients, an optional power-law
/// envelope, a coordinate map and the computational grid.
#[derive(Debug, Clone)]
pub struct SturmLiouvilleProblem {
    pub form: SlForm,
    pub envelope: FrobeniusEnvelope,
    pub coordinate: Coordinate,
    pub grid: Grid1D,
}

impl SturmLiouvilleProblem {
    pub fn new(form: SlForm, grid: Grid1D) -> Self {
        Self {
            form,
            envelope: FrobeniusEnvelope::none(),
            coordinate: Coordinate::Identity,
            grid,
        }
    }

    pub fn with_envelope(mut self, envelope: FrobeniusEnvelope) -> Self {
        self.envelope = envelope;
        self
    }

    pub fn with_coordinate(mut self, coordinate: Coordinate) -> Self {
        self.coordinate = coordinate;
        self
    }

    /// Coefficients (p̂, q̂, ŵ) acting on χ(t) = ψ(x(t))/f(x(t)).
    pub fn computational_coefficients(&self, t: f64) -> (f64, f64, f64) {
        let x = self.coordinate.to_physical(t);
        let jac = self.coordinate.jacobian(t);
        let f = self.envelope.value(x);
        let f2 = f * f;
        let p = (self.form.p)(x);
        let (l1, l2) = self.envelope.log_derivatives(x);
        let q = (self.form.q)(x) - (self.form.dp)(x) * l1 - p * l2;
        (p * f2 / jac, q * f2 * jac, (self.form.w)(x) * f2 * jac)
    }

    fn face_flux(&self, t: f64) -> f64 {
        self.computational_coefficients(t).0
    }
}

/// Symmetric tridiagonal stiffness matrix K and diagonal mass matrix M.
#[derive(Debug, Clone, PartialEq)]
pub struct Assembled {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
    pub mass: Vec<f64>,
}

/// K_ii = (p_{i−½} + p_{i+½})/h² + q_i, K_{i,i+1} = −p_{i+½}/h², M_ii = w_i.
/// Natural ends drop the outer face flux.
pub fn assemble(problem: &SturmLiouvilleProblem) -> Result<Assembled> {
    let grid = &problem.grid;
    let n = grid.n;
    let h = grid.h;
    let h2 = h * h;
    let nodes = grid.nodes();
    let mut faces = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let natural = (i == 0 && grid.bc.left() == Boundary::Natural)
            || (i == n && grid.bc.right() == Boundary::Natural);
        if natural {
            faces.push(0.0);
            continue;
        }
        let t = grid.a + (grid.bc.left().offset() + i as f64 - 0.5) * h;
        let p = problem.face_flux(t);
        if !p.is_finite() {
            return Err(Error::NonFiniteCoefficient {
                index: i.min(n - 1),
                x: t,
            });
        }
        if p <= 0.0 {
            return Err(Error::NonpositiveWeight {
                index: i.min(n - 1),
                x: t,
            });
        }
        faces.push(p);
    }
    let mut diag = Vec::with_capacity(n);
    let mut mass = Vec::with_capacity(n);
    for (i, &t) in nodes.iter().enumerate() {
        let (_, q, w) = problem.computational_coefficients(t);
        if !(q.is_finite() && w.is_finite()) {
            return Err(Error::NonFiniteCoefficient { index: i, x: t });
        }
        if w <= 0.0 {
            return Err(Error::NonpositiveWeight { index: i, x: t });
        }
        diag.push((faces[i] + faces[i + 1]) / h2 + q);
        mass.push(w);
    }
    let off = (1..n).map(|i| -faces[i] / h2).collect();
    Ok(Assembled { diag, off, mass })
}
