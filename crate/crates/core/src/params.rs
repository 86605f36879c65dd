//! Physical context shared by every model: mass, reduced Planck constant,
//! oscillator frequency and curvature.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysParams {
    pub mass: f64,
    pub hbar: f64,
    pub omega: f64,
    pub lambda: f64,
}

impl PhysParams {
    pub fn new(mass: f64, hbar: f64, omega: f64, lambda: f64) -> Result<Self> {
        for (name, v) in [("mass", mass), ("hbar", hbar), ("omega", omega)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::invalid(name, format!("must be finite and positive, got {v}")));
            }
        }
        if !lambda.is_finite() {
            return Err(Error::invalid("lambda", "must be finite"));
        }
        Ok(Self {
            mass,
            hbar,
            omega,
            lambda,
        })
    }

    /// Natural units ħ = m = 1.
    pub fn natural(omega: f64, lambda: f64) -> Result<Self> {
        Self::new(1.0, 1.0, omega, lambda)
    }

    /// ħ²/2m, the prefactor of every kinetic term.
    pub fn kinetic_scale(&self) -> f64 {
        self.hbar * self.hbar / (2.0 * self.mass)
    }

    /// √λ, rejecting flat or hyperbolic geometry.
    pub fn sqrt_lambda(&self) -> Result<f64> {
        if self.lambda > 0.0 {
            Ok(self.lambda.sqrt())
        } else {
            Err(Error::NonpositiveCurvature(self.lambda))
        }
    }

    /// ω' = √(ω² + ħ²λ²/4m²).
    pub fn omega_prime(&self) -> f64 {
        let shift = self.hbar * self.lambda / (2.0 * self.mass);
        self.omega.hypot(shift)
    }

    /// δ = √(1 + 4m²ω²/(λ²ħ²)).
    pub fn delta(&self) -> Result<f64> {
        self.sqrt_lambda()?;
        let ratio = 2.0 * self.mass * self.omega / (self.lambda * self.hbar);
        Ok(1.0_f64.hypot(ratio))
    }

    /// Exponent mω'/(ħλ) that appears in both wavefunctions and in the
    /// second hypergeometric parameter.
    pub(crate) fn frequency_ratio(&self) -> Result<f64> {
        self.sqrt_lambda()?;
        Ok(self.mass * self.omega_prime() / (self.hbar * self.lambda))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuantumNumbers {
    /// Radial excitation number N.
    pub n: u32,
    /// Angular number m' of the e^{im'θ} separation.
    pub mprime: i32,
}

impl QuantumNumbers {
    pub fn new(n: u32, mprime: i32) -> Self {
        Self { n, mprime }
    }

    /// 2N + |m'| + 1, the only combination the closed-form spectrum sees.
    pub fn principal(&self) -> f64 {
        principal_number(self.n, f64::from(self.mprime))
    }
}

pub(crate) fn principal_number(n: u32, mprime: f64) -> f64 {
    2.0 * f64::from(n) + mprime.abs() + 1.0
}
