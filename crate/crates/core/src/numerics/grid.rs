use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Treatment of one end of the interval.
///
/// `Dirichlet` pins the (envelope-divided) solution to zero at the endpoint.
/// `Natural` imposes zero flux through the endpoint; it is the right choice at
/// a singular end once the solution's local power law has been factored out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Boundary {
    Dirichlet,
    Natural,
}

impl Boundary {
    /// Distance, in units of h, from the endpoint to the nearest node.
    pub(crate) fn offset(self) -> f64 {
        match self {
            Boundary::Dirichlet => 1.0,
            Boundary::Natural => 0.5,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundaryConditions {
    DirichletBoth,
    RegularLeftDirichletRight,
    RegularBoth,
}

impl BoundaryConditions {
    pub fn left(self) -> Boundary {
        match self {
            BoundaryConditions::DirichletBoth => Boundary::Dirichlet,
            _ => Boundary::Natural,
        }
    }

    pub fn right(self) -> Boundary {
        match self {
            BoundaryConditions::RegularBoth => Boundary::Natural,
            _ => Boundary::Dirichlet,
        }
    }
}

/// Uniform grid of `n` unknowns on [a, b].
///
/// Dirichlet ends sit one spacing outside the first/last node, natural ends
/// half a spacing, so h = (b − a)/(n − 1 + o_L + o_R).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid1D {
    pub a: f64,
    pub b: f64,
    pub n: usize,
    pub h: f64,
    pub bc: BoundaryConditions,
}

impl Grid1D {
    pub fn new(a: f64, b: f64, n: usize, bc: BoundaryConditions) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::InvalidGrid(format!("need finite a < b, got [{a}, {b}]")));
        }
        if n < 3 {
            return Err(Error::InvalidGrid(format!("need at least 3 points, got {n}")));
        }
        let span = n as f64 - 1.0 + bc.left().offset() + bc.right().offset();
        Ok(Self {
            a,
            b,
            n,
            h: (b - a) / span,
            bc,
        })
    }

    pub fn node(&self, i: usize) -> f64 {
        self.a + (self.bc.left().offset() + i as f64) * self.h
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.node(i)).collect()
    }
}
