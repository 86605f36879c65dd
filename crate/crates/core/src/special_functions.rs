//! Scalar special functions and the intrinsic coordinates Θ(x), Υ(r).

use crate::error::{Error, Result};

/// Terminating Gauss series ₂F₁(−N, b; c; z), a polynomial of degree N.
///
/// Terms follow the ratio recurrence
/// t_{k+1} = t_k · (k − N)(b + k) / ((c + k)(k + 1)) · z, summed left to right.
pub fn hyp2f1_terminating(n: u32, b: f64, c: f64, z: f64) -> Result<f64> {
    for k in 0..n {
        if c + f64::from(k) == 0.0 {
            return Err(Error::PoleInSeries { c, k: k + 1 });
        }
    }
    let mut term = 1.0;
    let mut sum = 1.0;
    let neg_n = -f64::from(n);
    for k in 0..n {
        let kf = f64::from(k);
        term *= (neg_n + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * z;
        sum += term;
    }
    Ok(sum)
}

/// gd(x) = 2·arctan(eˣ) − π/2, evaluated as arctan(sinh x) to keep full
/// relative precision near 0.
pub fn gudermannian(x: f64) -> f64 {
    x.sinh().atan()
}

/// Inverse hyperbolic sine via ln(x + √(x²+1)), with a series below 1e−4.
pub fn arcsinh(x: f64) -> f64 {
    let ax = x.abs();
    let magnitude = if ax < 1e-4 {
        let x2 = ax * ax;
        ax * (1.0 - x2 / 6.0 + 3.0 * x2 * x2 / 40.0)
    } else if ax > 1e150 {
        std::f64::consts::LN_2 + ax.ln()
    } else {
        (ax + ax.hypot(1.0)).ln()
    };
    magnitude.copysign(x)
}

/// Θ(x) = arcsinh(√λ x).
pub fn theta_of_x(x: f64, lambda: f64) -> Result<f64> {
    if lambda <= 0.0 {
        return Err(Error::NonpositiveCurvature(lambda));
    }
    Ok(arcsinh(lambda.sqrt() * x))
}

/// Υ(r) = arctan(√λ r) ∈ [0, π/2).
pub fn upsilon_of_r(r: f64, lambda: f64) -> Result<f64> {
    if lambda <= 0.0 {
        return Err(Error::NonpositiveCurvature(lambda));
    }
    if r < 0.0 {
        return Err(Error::NegativeRadius(r));
    }
    Ok((lambda.sqrt() * r).atan())
}
