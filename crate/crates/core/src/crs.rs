//! The generalized CRS model: the X(x) family, the factorization potential,
//! the special (oscillator-equivalent) potential, its wavefunctions and
//! spectrum.
//!
//! Everything here lives on the curved line with metric factor
//! 𝒦(x) = 1 + λx².

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::derivative::derivatives;
use crate::params::{principal_number, PhysParams};
use crate::special_functions::{hyp2f1_terminating, theta_of_x};

/// Parameter bundle of a solvable CRS model: the constraint data (A, B),
/// the X(x) integration constants (C1, C2), the potential constants
/// (β, γ, C), and the derived m'_Q and δ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QesSpec {
    a: f64,
    b: f64,
    c1: Complex64,
    c2: Complex64,
    beta: f64,
    gamma: f64,
    c_shift: f64,
    mprime_q: f64,
    delta: f64,
}

impl QesSpec {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        a: f64,
        b: f64,
        c1: Complex64,
        c2: Complex64,
        beta: f64,
        gamma: f64,
        c_shift: f64,
        params: &PhysParams,
    ) -> Result<Self> {
        let lambda = params.lambda;
        let delta = params.delta()?;
        Ok(Self {
            a,
            b,
            c1,
            c2,
            beta,
            gamma,
            c_shift,
            mprime_q: (beta + gamma) / (4.0 * lambda) - 0.5,
            delta,
        })
    }

    /// A spec whose β, γ and C obey the relations the transformation needs:
    /// β = 2λ(m'_Q+1) + λδ, γ = 2λm'_Q − λδ, C = (ħ²/2m)(λ(m'_Q²−1) + m'_Q λδ).
    pub fn with_transform_relations(
        a: f64,
        b: f64,
        c1: Complex64,
        c2: Complex64,
        mprime_q: f64,
        params: &PhysParams,
    ) -> Result<Self> {
        let lambda = params.lambda;
        let delta = params.delta()?;
        let beta = 2.0 * lambda * (mprime_q + 1.0) + lambda * delta;
        let gamma = 2.0 * lambda * mprime_q - lambda * delta;
        let c_shift = params.kinetic_scale()
            * (lambda * (mprime_q * mprime_q - 1.0) + mprime_q * lambda * delta);
        Self::new(a, b, c1, c2, beta, gamma, c_shift, params)
    }

    pub fn a(&self) -> f64 {
        self.a
    }
    pub fn b(&self) -> f64 {
        self.b
    }
    pub fn c1(&self) -> Complex64 {
        self.c1
    }
    pub fn c2(&self) -> Complex64 {
        self.c2
    }
    pub fn beta(&self) -> f64 {
        self.beta
    }
    pub fn gamma(&self) -> f64 {
        self.gamma
    }
    pub fn c_shift(&self) -> f64 {
        self.c_shift
    }
    pub fn mprime_q(&self) -> f64 {
        self.mprime_q
    }
    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// True when β and γ satisfy the transformation relations to `tol`
    /// (relative to λ).
    pub fn is_special(&self, params: &PhysParams, tol: f64) -> bool {
        let lambda = params.lambda;
        let m = self.mprime_q;
        let beta = 2.0 * lambda * (m + 1.0) + lambda * self.delta;
        let gamma = 2.0 * lambda * m - lambda * self.delta;
        (self.beta - beta).abs() <= tol * lambda && (self.gamma - gamma).abs() <= tol * lambda
    }
}

/// Parameters of the oscillator-equivalent CRS model with X = cos 2Θ.
pub fn special_params(mprime_q: f64, params: &PhysParams) -> Result<QesSpec> {
    let lambda = params.lambda;
    if lambda <= 0.0 {
        return Err(Error::NonpositiveCurvature(lambda));
    }
    let root = (lambda * lambda
        + 4.0 * params.mass * params.mass * params.omega * params.omega / (params.hbar * params.hbar))
        .sqrt();
    let beta = 2.0 * lambda * (mprime_q + 1.0) + root;
    let gamma = 2.0 * lambda * mprime_q - root;
    let c_shift = params.kinetic_scale() * (lambda * (mprime_q * mprime_q - 1.0) + mprime_q * root);
    QesSpec::new(
        -4.0 * lambda,
        0.0,
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, 0.0),
        beta,
        gamma,
        c_shift,
        params,
    )
}

/// X(x) = −B/A + C1·cosh(√(A/λ)Θ) + i·C2·sinh(√(A/λ)Θ), evaluated with the
/// principal complex square root so A < 0 turns into the trigonometric form.
pub fn x_general_complex(spec: &QesSpec, params: &PhysParams, x: f64) -> Result<Complex64> {
    if spec.a == 0.0 {
        return Err(Error::ZeroA);
    }
    let theta = theta_of_x(x, params.lambda)?;
    let rate = Complex64::new(spec.a / params.lambda, 0.0).sqrt();
    let arg = rate * theta;
    let i = Complex64::new(0.0, 1.0);
    Ok(Complex64::new(-spec.b / spec.a, 0.0) + spec.c1 * arg.cosh() + i * spec.c2 * arg.sinh())
}

/// Real-valued X(x); fails with [`Error::ComplexResult`] when the imaginary
/// part survives.
pub fn x_general(spec: &QesSpec, params: &PhysParams, x: f64) -> Result<f64> {
    let value = x_general_complex(spec, params, x)?;
    if value.im.abs() > 1e-12 * (1.0 + value.re.abs()) {
        return Err(Error::ComplexResult {
            re: value.re,
            im: value.im,
        });
    }
    Ok(value.re)
}

/// 𝒦X″ + λxX′ − AX − B with numerically differentiated X.
pub fn x_constraint_residual<F: Fn(f64) -> f64>(
    x_fn: F,
    a: f64,
    b: f64,
    params: &PhysParams,
    x: f64,
) -> f64 {
    let d = derivatives(&x_fn, x);
    let k = 1.0 + params.lambda * x * x;
    k * d.second + params.lambda * x * d.first - a * d.value - b
}

/// V(x) = (ħ²/2m)·[(βX+γ)² + (βX+γ)(AX+B)] / [𝒦 X′²] + C.
pub fn potential_general<F, G>(
    spec: &QesSpec,
    x_fn: F,
    x_prime: G,
    params: &PhysParams,
    x: f64,
) -> Result<f64>
where
    F: Fn(f64) -> f64,
    G: Fn(f64) -> f64,
{
    params.sqrt_lambda()?;
    let xp = x_prime(x);
    if !(xp.abs() >= 1e-14) {
        return Err(Error::DegenerateDerivative(xp));
    }
    let xv = x_fn(x);
    let k = 1.0 + params.lambda * x * x;
    let lin = spec.beta * xv + spec.gamma;
    let numerator = lin * lin + lin * (spec.a * xv + spec.b);
    Ok(params.kinetic_scale() * numerator / (k * xp * xp) + spec.c_shift)
}

/// X = cos(lΘ) and its derivative −l·sin(lΘ)·√λ/√𝒦.
pub fn x_cos_multiple(l: f64, lambda: f64) -> (impl Fn(f64) -> f64, impl Fn(f64) -> f64) {
    let sl = lambda.sqrt();
    let x_fn = move |x: f64| (l * crate::special_functions::arcsinh(sl * x)).cos();
    let x_prime = move |x: f64| {
        let theta = crate::special_functions::arcsinh(sl * x);
        -l * (l * theta).sin() * sl / (1.0 + lambda * x * x).sqrt()
    };
    (x_fn, x_prime)
}

/// X = √λ·x and its constant derivative.
pub fn x_linear(lambda: f64) -> (impl Fn(f64) -> f64, impl Fn(f64) -> f64) {
    let sl = lambda.sqrt();
    (move |x: f64| sl * x, move |_: f64| sl)
}

/// V(x) = ½mω²(tanΘ/√λ)² − (λħ²/8m)(1 + (1 − 4m'_Q²)csc²Θ).
pub fn crs_potential_special(x: f64, mprime_q: f64, params: &PhysParams) -> Result<f64> {
    let sl = params.sqrt_lambda()?;
    let theta = theta_of_x(x, params.lambda)?;
    let centrifugal = 1.0 - 4.0 * mprime_q * mprime_q;
    if x == 0.0 && centrifugal != 0.0 {
        return Err(Error::SingularPoint {
            coordinate: "x",
            value: x,
        });
    }
    let t = theta.tan() / sl;
    let oscillator = 0.5 * params.mass * params.omega * params.omega * t * t;
    let curvature = params.lambda * params.hbar * params.hbar / (8.0 * params.mass);
    let csc_term = if centrifugal == 0.0 {
        0.0
    } else {
        let s = theta.sin();
        centrifugal / (s * s)
    };
    Ok(oscillator - curvature * (1.0 + csc_term))
}

/// How the special wavefunction is evaluated.
///
/// `AsPrinted` takes the closed form literally: hypergeometric argument sinΘ
/// and base cosΘ. `Squared` replaces both by their squares, sin²Θ and cos²Θ.
/// Only `Squared` solves the CRS eigen-equation and maps onto the Higgs radial
/// wavefunction under x(r); `AsPrinted` is kept so the discrepancy stays
/// measurable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum ArgumentConvention {
    AsPrinted,
    #[default]
    Squared,
}

/// Real amplitude of the special wavefunction, i.e. the wavefunction with the
/// constant phase of [−sin²2Θ]^{−3/4} removed.
pub fn crs_wavefunction_amplitude(
    n: u32,
    mprime_q: f64,
    params: &PhysParams,
    x: f64,
    convention: ArgumentConvention,
) -> Result<f64> {
    let sl = params.sqrt_lambda()?;
    if x <= 0.0 {
        return Err(Error::SingularPoint {
            coordinate: "x",
            value: x,
        });
    }
    let theta = theta_of_x(x, params.lambda)?;
    if theta >= FRAC_PI_2 {
        return Err(Error::OutOfImage {
            x,
            sup: FRAC_PI_2.sinh() / sl,
        });
    }
    let m = mprime_q.abs();
    let k = params.frequency_ratio()?;
    let (s, c) = theta.sin_cos();
    let sin2 = (2.0 * theta).sin();
    let prefactor = (sin2 * sin2).powf(-0.75) * s * s * (theta.tan() / sl).powf(m);
    let exponent = 1.0 + 0.5 * m + 0.5 * k;
    let (base, arg) = match convention {
        ArgumentConvention::AsPrinted => (c, s),
        ArgumentConvention::Squared => (c * c, s * s),
    };
    let series = hyp2f1_terminating(n, f64::from(n) + m + 1.0 + k, m + 1.0, arg)?;
    Ok(prefactor * base.powf(exponent) * series)
}

/// The special wavefunction φ(x) with the principal branch of
/// [−sin²2Θ]^{−3/4}.
pub fn crs_wavefunction_special(
    n: u32,
    mprime_q: f64,
    params: &PhysParams,
    x: f64,
    convention: ArgumentConvention,
) -> Result<Complex64> {
    let amplitude = crs_wavefunction_amplitude(n, mprime_q, params, x, convention)?;
    Ok(principal_phase() * amplitude)
}

/// (−1)^{−3/4} on the principal branch.
pub(crate) fn principal_phase() -> Complex64 {
    Complex64::new(-1.0, 0.0).powf(-0.75)
}

/// ħω'(2N+|m|+1) + (λħ²/2m)(2N+|m|+1)², shared by both models.
pub(crate) fn closed_form_energy(principal: f64, params: &PhysParams) -> f64 {
    params.hbar * params.omega_prime() * principal
        + params.lambda * params.kinetic_scale() * principal * principal
}

pub fn crs_energy(n: u32, mprime_q: f64, params: &PhysParams) -> Result<f64> {
    params.sqrt_lambda()?;
    Ok(closed_form_energy(principal_number(n, mprime_q), params))
}

/// Second- and first-derivative coefficients of the CRS kinetic operator,
/// (−(ħ²/2m)𝒦, −(ħ²/2m)λx).
pub fn crs_operator_coefficients(params: &PhysParams, x: f64) -> (f64, f64) {
    let scale = params.kinetic_scale();
    (-scale * (1.0 + params.lambda * x * x), -scale * params.lambda * x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn unit() -> PhysParams {
        PhysParams::natural(1.0, 1.0).unwrap()
    }

    #[test]
    fn special_params_unit_case() {
        let spec = special_params(0.0, &unit()).unwrap();
        let s5 = 5f64.sqrt();
        assert_relative_eq!(spec.delta(), s5, max_relative = 1e-15);
        assert_relative_eq!(spec.beta(), 2.0 + s5, max_relative = 1e-15);
        assert_relative_eq!(spec.gamma(), -s5, max_relative = 1e-15);
        assert_relative_eq!(spec.mprime_q(), 0.0, epsilon = 1e-15);
        assert_eq!(spec.a(), -4.0);
        assert!(spec.is_special(&unit(), 1e-13));
    }

    #[test]
    fn special_params_round_trip_and_gap() {
        for &(m, lam, w) in &[(0.0, 1.0, 1.0), (1.0, 0.1, 2.0), (-2.0, 10.0, 0.3), (0.5, 3.0, 1.0)] {
            let p = PhysParams::natural(w, lam).unwrap();
            let spec = special_params(m, &p).unwrap();
            assert_relative_eq!(spec.mprime_q(), m, epsilon = 1e-12);
            let gap = spec.beta() - spec.gamma();
            assert_relative_eq!(gap, 2.0 * lam + 2.0 * lam * spec.delta(), max_relative = 1e-13);
            let alt = QesSpec::with_transform_relations(-4.0 * lam, 0.0, 1.0.into(), 0.0.into(), m, &p).unwrap();
            assert_relative_eq!(alt.beta(), spec.beta(), max_relative = 1e-13);
            assert_relative_eq!(alt.gamma(), spec.gamma(), max_relative = 1e-13, epsilon = 1e-13);
            assert_relative_eq!(alt.c_shift(), spec.c_shift(), max_relative = 1e-13, epsilon = 1e-13);
        }
    }

    #[test]
    fn special_params_rejects_flat() {
        let flat = PhysParams::natural(1.0, 0.0).unwrap();
        assert_eq!(special_params(0.0, &flat), Err(Error::NonpositiveCurvature(0.0)));
    }

    #[test]
    fn x_general_examples() {
        let p = unit();
        let spec = special_params(0.0, &p).unwrap();
        for &x in &[0.0, 0.3, 1.2, 4.0] {
            let expected = (2.0 * theta_of_x(x, 1.0).unwrap()).cos();
            assert_relative_eq!(x_general(&spec, &p, x).unwrap(), expected, epsilon = 1e-14);
        }
        let lin = QesSpec::new(1.0, 0.0, 0.0.into(), Complex64::new(0.0, -1.0), 1.0, 1.0, 0.0, &p).unwrap();
        for &x in &[0.0, 0.5, 2.0] {
            assert_relative_eq!(x_general(&lin, &p, x).unwrap(), x, epsilon = 1e-13);
        }
        let cosine = QesSpec::new(-1.0, 0.0, 1.0.into(), 0.0.into(), 1.0, 1.0, 0.0, &p).unwrap();
        assert_eq!(x_general(&cosine, &p, 0.0).unwrap(), 1.0);
    }

    #[test]
    fn x_general_errors() {
        let p = unit();
        let zero = QesSpec::new(0.0, 1.0, 1.0.into(), 0.0.into(), 1.0, 1.0, 0.0, &p).unwrap();
        assert_eq!(x_general(&zero, &p, 0.5), Err(Error::ZeroA));
        let complex = QesSpec::new(1.0, 0.0, 1.0.into(), 1.0.into(), 1.0, 1.0, 0.0, &p).unwrap();
        assert!(matches!(x_general(&complex, &p, 0.5), Err(Error::ComplexResult { .. })));
        assert!(x_general_complex(&complex, &p, 0.5).is_ok());
    }

    #[test]
    fn constraint_residuals() {
        let p = PhysParams::natural(1.0, 0.7).unwrap();
        let (x_fn, _) = x_cos_multiple(2.0, p.lambda);
        let (lin, _) = x_linear(p.lambda);
        for i in 0..50 {
            let x = 0.1 + 4.9 * f64::from(i) / 49.0;
            assert!(x_constraint_residual(&x_fn, -4.0 * p.lambda, 0.0, &p, x).abs() < 1e-6);
            assert!(x_constraint_residual(&lin, p.lambda, 0.0, &p, x).abs() < 1e-6);
            // deliberately wrong X = x²: residual 2𝒦 + 2λx²
            let wrong = x_constraint_residual(|t| t * t, 0.0, 0.0, &p, x);
            let expected = 2.0 * (1.0 + p.lambda * x * x) + 2.0 * p.lambda * x * x;
            assert_relative_eq!(wrong, expected, max_relative = 1e-8);
        }
    }

    #[test]
    fn general_potential_reduces_to_special() {
        for &(m, lam) in &[(0.0, 1.0), (1.0, 1.0), (2.0, 0.1), (-1.0, 10.0), (0.5, 1.0)] {
            let p = PhysParams::natural(1.3, lam).unwrap();
            let spec = special_params(m, &p).unwrap();
            let (x_fn, x_prime) = x_cos_multiple(2.0, lam);
            let sup = FRAC_PI_2.sinh() / lam.sqrt();
            for i in 1..40 {
                let x = sup * f64::from(i) / 40.0;
                let general = potential_general(&spec, &x_fn, &x_prime, &p, x).unwrap();
                let special = crs_potential_special(x, m, &p).unwrap();
                assert!(
                    (general - special).abs() <= 1e-9 * special.abs().max(1.0),
                    "m = {m}, lambda = {lam}, x = {x}: {general} vs {special}"
                );
            }
        }
    }

    #[test]
    fn general_potential_constant_without_beta_gamma() {
        let p = unit();
        let spec = QesSpec::new(-4.0, 0.0, 1.0.into(), 0.0.into(), 0.0, 0.0, 0.37, &p).unwrap();
        let (x_fn, x_prime) = x_cos_multiple(2.0, 1.0);
        for &x in &[0.2, 0.9, 1.7] {
            assert_eq!(potential_general(&spec, &x_fn, &x_prime, &p, x).unwrap(), 0.37);
        }
        assert!(matches!(
            potential_general(&spec, &x_fn, |_| 0.0, &p, 0.5),
            Err(Error::DegenerateDerivative(_))
        ));
    }

    #[test]
    fn special_potential_edge_cases() {
        let p = unit();
        assert!(matches!(crs_potential_special(0.0, 0.0, &p), Err(Error::SingularPoint { .. })));
        // m'_Q = ±1/2 removes the csc² term entirely
        for &m in &[0.5, -0.5] {
            assert_relative_eq!(crs_potential_special(0.0, m, &p).unwrap(), -0.125);
            let x: f64 = 0.8;
            let t = theta_of_x(x, 1.0).unwrap().tan();
            assert_relative_eq!(crs_potential_special(x, m, &p).unwrap(), 0.5 * t * t - 0.125, max_relative = 1e-14);
        }
    }

    #[test]
    fn special_potential_rises_toward_the_wall() {
        let p = unit();
        let sup = FRAC_PI_2.sinh();
        let mut prev = f64::NEG_INFINITY;
        for i in 0..200 {
            let x = 0.6 + (sup - 0.61) * f64::from(i) / 199.0;
            let v = crs_potential_special(x, 0.0, &p).unwrap();
            assert!(v > prev, "not increasing at x = {x}");
            prev = v;
        }
    }

    #[test]
    fn energy_examples() {
        let p = unit();
        let s5 = 5f64.sqrt();
        assert_relative_eq!(crs_energy(0, 0.0, &p).unwrap(), 0.5 * s5 + 0.5, max_relative = 1e-15);
        for &m in &[0.0, 1.0, 2.5] {
            for n in 1..6u32 {
                let gap = crs_energy(n, m, &p).unwrap() - crs_energy(n - 1, m, &p).unwrap();
                let closed = 2.0 * p.hbar * p.omega_prime()
                    + p.lambda * p.kinetic_scale() * (8.0 * f64::from(n) + 4.0 * m);
                assert!(gap > 0.0);
                assert_relative_eq!(gap, closed, max_relative = 1e-13);
            }
        }
        let flat = PhysParams::natural(1.0, 0.0).unwrap();
        assert!(crs_energy(0, 0.0, &flat).is_err());
    }

    #[test]
    fn operator_coefficients() {
        let p = PhysParams::new(2.0, 1.5, 1.0, 0.4).unwrap();
        let (p2, p1) = crs_operator_coefficients(&p, 0.0);
        assert_eq!((p2, p1), (-p.kinetic_scale(), 0.0));
        let flat = PhysParams::new(2.0, 1.5, 1.0, 0.0).unwrap();
        assert_eq!(crs_operator_coefficients(&flat, 3.0), (-flat.kinetic_scale(), 0.0));
        // weight w = 𝒦^{-1/2} symmetrizes: (w𝒦)'/w = λx
        for &x in &[0.0, 0.5, 2.0, 7.0] {
            let wk = |t: f64| (1.0 + p.lambda * t * t).sqrt();
            let w = 1.0 / wk(x);
            let d = derivatives(wk, x);
            assert_relative_eq!(d.first / w, p.lambda * x, epsilon = 1e-11);
        }
    }

    #[test]
    fn wavefunction_ground_state_modulus() {
        let p = unit();
        let m: f64 = 1.0;
        let k = p.frequency_ratio().unwrap();
        for &x in &[0.2, 0.9, 1.8] {
            let th = theta_of_x(x, 1.0).unwrap();
            let s2 = (2.0 * th).sin().powi(2);
            let expected = s2.powf(-0.75) * th.sin().powi(2) * th.tan().powf(m) * th.cos().powf(1.0 + m / 2.0 + k / 2.0);
            let got = crs_wavefunction_special(0, m, &p, x, ArgumentConvention::AsPrinted).unwrap();
            assert_relative_eq!(got.norm(), expected, max_relative = 1e-13);
        }
    }

    #[test]
    fn wavefunction_domain() {
        let p = unit();
        assert!(matches!(
            crs_wavefunction_special(0, 0.0, &p, 0.0, ArgumentConvention::Squared),
            Err(Error::SingularPoint { .. })
        ));
        assert!(matches!(
            crs_wavefunction_special(0, 0.0, &p, 2.5, ArgumentConvention::Squared),
            Err(Error::OutOfImage { .. })
        ));
    }
}
