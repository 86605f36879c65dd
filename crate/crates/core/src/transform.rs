//! Maps between the CRS line and the radial Higgs half-line:
//! x(r) = sinh(Υ(r))/√λ, ψ(r) = g(r)·φ(x(r)), and the potential relation.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::PhysParams;
use crate::special_functions::{theta_of_x, upsilon_of_r};

/// Shared curvature and the CRS parameter m'_Q. The caller is responsible for
/// pairing this with the Higgs channel m' = m'_Q; nothing here inspects a
/// channel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MapContext {
    params: PhysParams,
    mprime_q: f64,
}

impl MapContext {
    pub fn new(params: PhysParams, mprime_q: f64) -> Result<Self> {
        params.sqrt_lambda()?;
        if !mprime_q.is_finite() {
            return Err(Error::invalid("mprime_q", "must be finite"));
        }
        Ok(Self { params, mprime_q })
    }

    pub fn params(&self) -> &PhysParams {
        &self.params
    }

    pub fn mprime_q(&self) -> f64 {
        self.mprime_q
    }

    /// sinh(π/2)/√λ, the supremum of x(r).
    pub fn x_supremum(&self) -> f64 {
        x_supremum(self.params.lambda)
    }
}

pub fn x_supremum(lambda: f64) -> f64 {
    FRAC_PI_2.sinh() / lambda.sqrt()
}

pub fn x_of_r(ctx: &MapContext, r: f64) -> Result<f64> {
    let lambda = ctx.params.lambda;
    let ups = upsilon_of_r(r, lambda)?;
    Ok(ups.sinh() / lambda.sqrt())
}

pub fn r_of_x(ctx: &MapContext, x: f64) -> Result<f64> {
    let lambda = ctx.params.lambda;
    let sup = ctx.x_supremum();
    if !(0.0..sup).contains(&x) {
        return Err(Error::OutOfImage { x, sup });
    }
    let theta = theta_of_x(x, lambda)?;
    if theta >= FRAC_PI_2 {
        return Err(Error::OutOfImage { x, sup });
    }
    Ok(theta.tan() / lambda.sqrt())
}

/// g(r) = −2(1−i)(λr²)^{−1/4}(1+λr²)^{−1/2}.
pub fn g_factor(ctx: &MapContext, r: f64) -> Result<Complex64> {
    if r < 0.0 {
        return Err(Error::NegativeRadius(r));
    }
    if r == 0.0 {
        return Err(Error::SingularPoint {
            coordinate: "r",
            value: r,
        });
    }
    let lr2 = ctx.params.lambda * r * r;
    let modulus = lr2.powf(-0.25) / (1.0 + lr2).sqrt();
    Ok(Complex64::new(-2.0, 2.0) * modulus)
}

/// The additive term (λħ²/8m)[1 + (1 − 4m'_Q²)(1 + 1/(λr²))] that turns a
/// CRS potential into the radial Higgs one.
pub fn potential_shift(ctx: &MapContext, r: f64) -> Result<f64> {
    let p = &ctx.params;
    let centrifugal = 1.0 - 4.0 * ctx.mprime_q * ctx.mprime_q;
    if r < 0.0 {
        return Err(Error::NegativeRadius(r));
    }
    if r == 0.0 && centrifugal != 0.0 {
        return Err(Error::SingularPoint {
            coordinate: "r",
            value: r,
        });
    }
    let scale = p.lambda * p.hbar * p.hbar / (8.0 * p.mass);
    let tail = if centrifugal == 0.0 {
        0.0
    } else {
        centrifugal * (1.0 + 1.0 / (p.lambda * r * r))
    };
    Ok(scale * (1.0 + tail))
}

/// 𝒱(r) = V(x(r)) + (λħ²/8m)[1 + (1 − 4m'_Q²)(1 + 1/(λr²))].
pub fn map_potential<F>(ctx: &MapContext, vq: F, r: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let shift = potential_shift(ctx, r)?;
    Ok(vq(x_of_r(ctx, r)?)? + shift)
}

/// ψ(r) = g(r)·φ(x(r)).
pub fn map_wavefunction<F>(ctx: &MapContext, phi: F, r: f64) -> Result<Complex64>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let g = g_factor(ctx, r)?;
    Ok(g * phi(x_of_r(ctx, r)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crs::{crs_energy, crs_potential_special, crs_wavefunction_special, ArgumentConvention};
    use crate::higgs::{higgs_energy, higgs_wavefunction};
    use crate::params::QuantumNumbers;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn ctx(lambda: f64, mq: f64) -> MapContext {
        MapContext::new(PhysParams::natural(1.0, lambda).unwrap(), mq).unwrap()
    }

    #[test]
    fn rejects_flat_geometry() {
        let flat = PhysParams::natural(1.0, 0.0).unwrap();
        assert!(MapContext::new(flat, 0.0).is_err());
    }

    #[test]
    fn coordinate_map_basics() {
        let c = ctx(1.0, 0.0);
        assert_eq!(x_of_r(&c, 0.0).unwrap(), 0.0);
        assert_eq!(r_of_x(&c, 0.0).unwrap(), 0.0);
        assert_eq!(x_of_r(&c, -1.0), Err(Error::NegativeRadius(-1.0)));
        assert!(matches!(r_of_x(&c, 2.31), Err(Error::OutOfImage { .. })));
        // sinh(arctan u) through exponentials: (e^t − e^{−t})/2 with t = arctan u
        for &r in &[0.1_f64, 1.0, 10.0, 1e4] {
            let t = r.atan();
            assert_relative_eq!(x_of_r(&c, r).unwrap(), 0.5 * (t.exp() - (-t).exp()), max_relative = 1e-14);
            assert_relative_eq!(r_of_x(&c, x_of_r(&c, r).unwrap()).unwrap(), r, max_relative = 1e-12);
        }
        assert!(x_of_r(&c, 1e8).unwrap() < c.x_supremum());
        assert_relative_eq!(c.x_supremum(), 2.301298902307295, max_relative = 1e-15);
    }

    #[test]
    fn inverse_against_log_form() {
        // tan(arcsinh u) with arcsinh u = ln(u + √(u²+1))
        let c = ctx(2.0, 0.0);
        for &x in &[0.05, 0.7, 1.5] {
            let u = 2f64.sqrt() * x;
            let expected = (u + (u * u + 1.0).sqrt()).ln().tan() / 2f64.sqrt();
            assert_relative_eq!(r_of_x(&c, x).unwrap(), expected, max_relative = 1e-14);
        }
    }

    #[test]
    fn g_factor_values() {
        let c = ctx(1.0, 0.0);
        assert_relative_eq!(g_factor(&c, 1.0).unwrap().norm(), 2.0, max_relative = 1e-15);
        let phase = g_factor(&c, 0.3).unwrap().arg();
        for &r in &[0.01, 1.0, 50.0] {
            assert_relative_eq!(g_factor(&c, r).unwrap().arg(), phase, epsilon = 1e-15);
        }
        assert!(matches!(g_factor(&c, 0.0), Err(Error::SingularPoint { .. })));
    }

    #[test]
    fn curvature_only_shift() {
        let c = ctx(0.6, 0.5);
        for &r in &[0.0, 0.2, 3.0] {
            assert_relative_eq!(map_potential(&c, |_| Ok(0.0), r).unwrap(), 0.6 / 8.0, max_relative = 1e-15);
        }
        assert!(matches!(
            map_potential(&ctx(1.0, 1.0), |_| Ok(0.0), 0.0),
            Err(Error::SingularPoint { .. })
        ));
    }

    #[test]
    fn special_potential_maps_to_oscillator() {
        for &lam in &[0.1, 1.0, 10.0] {
            for &mq in &[0.0, 1.0, -1.0, 2.0, -2.0, 0.5] {
                let c = ctx(lam, mq);
                let p = *c.params();
                for i in 0..100 {
                    let r = 0.5 * 100f64.powf(f64::from(i) / 99.0);
                    let v = map_potential(&c, |x| crs_potential_special(x, mq, &p), r).unwrap();
                    let target = 0.5 * r * r;
                    assert!((v - target).abs() <= 1e-12 * target, "lambda {lam}, m'_Q {mq}, r {r}");
                }
            }
        }
    }

    #[test]
    fn wavefunction_map_identity_and_linearity() {
        let c = ctx(1.0, 0.0);
        assert_eq!(map_wavefunction(&c, |_| Ok(Complex64::new(1.0, 0.0)), 0.7).unwrap(), g_factor(&c, 0.7).unwrap());
        let f1 = |x: f64| Complex64::new(x.cos(), x);
        let f2 = |x: f64| Complex64::new(x * x, -1.0);
        let (a, b) = (Complex64::new(0.3, -2.0), Complex64::new(1.5, 0.25));
        let lhs = map_wavefunction(&c, |x| Ok(a * f1(x) + b * f2(x)), 1.3).unwrap();
        let rhs = a * map_wavefunction(&c, |x| Ok(f1(x)), 1.3).unwrap()
            + b * map_wavefunction(&c, |x| Ok(f2(x)), 1.3).unwrap();
        assert!((lhs - rhs).norm() < 1e-14);
    }

    #[test]
    fn mapped_ground_state_is_proportional() {
        for &mq in &[0.0, 1.0, 2.0] {
            let c = ctx(1.0, mq);
            let p = *c.params();
            let ratios: Vec<Complex64> = (1..60)
                .map(|i| {
                    let r = 0.1 * f64::from(i);
                    let target = higgs_wavefunction(QuantumNumbers::new(0, mq as i32), &p, r).unwrap();
                    let mapped = map_wavefunction(
                        &c,
                        |x| crs_wavefunction_special(0, mq, &p, x, ArgumentConvention::Squared),
                        r,
                    )
                    .unwrap();
                    target / mapped
                })
                .collect();
            let first = ratios[0];
            for q in &ratios {
                assert!((q - first).norm() <= 1e-10 * first.norm());
            }
        }
    }

    #[test]
    fn spectra_coincide_bitwise() {
        for &lam in &[0.1, 1.0, 7.5] {
            let p = PhysParams::new(1.3, 0.8, 2.0, lam).unwrap();
            for n in 0..5u32 {
                for m in -3..=3 {
                    let e_crs = crs_energy(n, f64::from(m), &p).unwrap();
                    let e_higgs = higgs_energy(QuantumNumbers::new(n, m), &p);
                    assert_eq!(e_crs.to_bits(), e_higgs.to_bits());
                }
            }
        }
    }

    proptest! {
        #[test]
        fn x_of_r_increasing_bijection(r in 0.0..100.0f64, dr in 1e-3..10.0f64, lam in 0.05..10.0f64) {
            let c = ctx(lam, 0.0);
            let x1 = x_of_r(&c, r).unwrap();
            let x2 = x_of_r(&c, r + dr).unwrap();
            prop_assert!(x2 > x1);
            prop_assert!(x2 < c.x_supremum());
            let back = r_of_x(&c, x1).unwrap();
            prop_assert!((back - r).abs() <= 1e-12 * r.max(1e-300) + 1e-15);
            let theta = theta_of_x(x1, lam).unwrap();
            let ups = upsilon_of_r(r, lam).unwrap();
            prop_assert!((theta - ups).abs() <= 1e-12 * ups.max(1e-300) + 1e-16);
        }
    }
}
