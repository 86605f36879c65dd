//! The radial Higgs oscillator on the sphere, its exact solution, and the two
//! quasi-exactly solvable potentials obtained from CRS models through the
//! coordinate map.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::crs::{closed_form_energy, potential_general, x_cos_multiple, x_linear, QesSpec};
use crate::error::{Error, Result};
use crate::params::{PhysParams, QuantumNumbers};
use crate::special_functions::{gudermannian, hyp2f1_terminating, upsilon_of_r};
use crate::transform::{map_potential, MapContext};

/// One angular channel e^{im'θ} of the 2D problem.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadialChannel {
    pub mprime: i32,
    pub params: PhysParams,
}

impl RadialChannel {
    pub fn new(mprime: i32, params: PhysParams) -> Self {
        Self { mprime, params }
    }
}

fn check_radius(r: f64) -> Result<()> {
    if r < 0.0 {
        Err(Error::NegativeRadius(r))
    } else if r == 0.0 {
        Err(Error::SingularPoint {
            coordinate: "r",
            value: r,
        })
    } else {
        Ok(())
    }
}

/// Coefficients (p2, p1, p0) of the radial kinetic operator, so that the
/// eigenproblem reads p2ψ″ + p1ψ′ + p0ψ + 𝒱ψ = Eψ.
pub fn higgs_radial_coefficients(ch: &RadialChannel, r: f64) -> Result<(f64, f64, f64)> {
    check_radius(r)?;
    let lam = ch.params.lambda;
    let m2 = f64::from(ch.mprime).powi(2);
    let scale = -ch.params.kinetic_scale();
    let lr2 = lam * r * r;
    let k = 1.0 + lr2;
    let p2 = scale * k * k;
    let p1 = scale * k * (1.0 + 5.0 * lr2) / r;
    let p0 = scale * (3.0 * lam - lam * m2 + 3.75 * lam * lr2 - m2 / (r * r));
    Ok((p2, p1, p0))
}

/// Unnormalized radial eigenfunction
/// r^{|m'|}(1+λr²)^{−(1+|m'|/2+mω'/(2ħλ))}·₂F₁(−N, N+|m'|+1+mω'/(ħλ); |m'|+1; λr²/(1+λr²)).
pub fn higgs_wavefunction(qn: QuantumNumbers, params: &PhysParams, r: f64) -> Result<f64> {
    if r < 0.0 {
        return Err(Error::NegativeRadius(r));
    }
    let k = params.frequency_ratio()?;
    let m = f64::from(qn.mprime.unsigned_abs());
    let lr2 = params.lambda * r * r;
    let z = lr2 / (1.0 + lr2);
    let envelope = r.powf(m) * (1.0 + lr2).powf(-(1.0 + 0.5 * m + 0.5 * k));
    Ok(envelope * hyp2f1_terminating(qn.n, f64::from(qn.n) + m + 1.0 + k, m + 1.0, z)?)
}

/// ħω'(2N+|m'|+1) + (λħ²/2m)(2N+|m'|+1)².
pub fn higgs_energy(qn: QuantumNumbers, params: &PhysParams) -> f64 {
    closed_form_energy(qn.principal(), params)
}

/// Example 1: X = cos(lΘ), i.e. A = −λl², B = 0, C1 = 1, C2 = 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QesExample1Params {
    l: f64,
    spec: QesSpec,
}

impl QesExample1Params {
    pub fn new(l: f64, mprime_q: f64, params: &PhysParams) -> Result<Self> {
        if !(l.is_finite() && l > 0.0) {
            return Err(Error::invalid("l", format!("must be positive, got {l}")));
        }
        let spec = QesSpec::with_transform_relations(
            -params.lambda * l * l,
            0.0,
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
            mprime_q,
            params,
        )?;
        Ok(Self { l, spec })
    }

    pub fn l(&self) -> f64 {
        self.l
    }

    pub fn spec(&self) -> &QesSpec {
        &self.spec
    }

    /// Right end of the principal branch lΥ(r) < π: tan(π/l)/√λ for l > 2,
    /// the whole half-line otherwise.
    pub fn branch_end(&self, lambda: f64) -> f64 {
        if self.l > 2.0 {
            (PI / self.l).tan() / lambda.sqrt()
        } else {
            f64::INFINITY
        }
    }
}

const SERIES_CUTOFF: f64 = 0.03;

/// csc²t − 1/t², smooth at t = 0.
fn csc2_regular(t: f64) -> f64 {
    if t.abs() < SERIES_CUTOFF {
        let t2 = t * t;
        1.0 / 3.0 + t2 * (1.0 / 15.0 + t2 * (2.0 / 189.0 + t2 / 675.0))
    } else {
        let s = t.sin();
        1.0 / (s * s) - 1.0 / (t * t)
    }
}

/// 1/arctan(u)² − 1/u², smooth at u = 0.
fn inv_atan2_regular(u: f64) -> f64 {
    if u.abs() < SERIES_CUTOFF {
        let u2 = u * u;
        2.0 / 3.0 + u2 * (-1.0 / 15.0 + u2 * (32.0 / 945.0 + u2 * (-304.0 / 14175.0 + u2 * 2368.0 / 155925.0)))
    } else {
        let a = u.atan();
        1.0 / (a * a) - 1.0 / (u * u)
    }
}

/// Example 1 potential 𝒱(r), the closed form in t = (l/2)Υ(r):
///
/// (ħ²/8mr²)[1 − 4m'_Q² + 2λr²(4m'_Q+3) + 4λr²(m'_Q+1)δ]
/// − (λħ²/4ml²)[10 + 8m'_Q(m'_Q+2) + 8(m'_Q+1)δ + (l²−4m'_Q−2)(2m'_Q+1)csc²t + (l²−4)(1+δ)sec²t]
/// + (2/l²)mω²(tan t/√λ)².
///
/// All 1/r² pieces are collected into one coefficient before evaluation, so
/// nothing cancels catastrophically near the origin.
pub fn qes_example1_potential(p: &QesExample1Params, params: &PhysParams, r: f64) -> Result<f64> {
    check_radius(r)?;
    let sl = params.sqrt_lambda()?;
    let (l, q, delta) = (p.l, p.spec.mprime_q(), p.spec.delta());
    let (mass, hbar, lam) = (params.mass, params.hbar, params.lambda);
    let u = sl * r;
    let t = 0.5 * l * u.atan();
    let (s, c) = t.sin_cos();
    if s.abs() < 1e-15 || c.abs() < 1e-15 {
        return Err(Error::SingularPoint {
            coordinate: "r",
            value: r,
        });
    }
    let h2 = hbar * hbar;
    let l2 = l * l;
    let csc_weight = (l2 - 4.0 * q - 2.0) * (2.0 * q + 1.0);
    // 1/r² strength: first bracket plus the leading part of csc²t = 4/(l²λr²) + …
    let singular = h2 * (1.0 - 4.0 * q * q) / (8.0 * mass) - h2 * csc_weight / (mass * l2 * l2);
    let first_regular = h2 * lam * (2.0 * (4.0 * q + 3.0) + 4.0 * (q + 1.0) * delta) / (8.0 * mass);
    let csc_regular = csc2_regular(t) + 4.0 * inv_atan2_regular(u) / l2;
    let bracket = 10.0 + 8.0 * q * (q + 2.0) + 8.0 * (q + 1.0) * delta
        + csc_weight * csc_regular
        + (l2 - 4.0) * (1.0 + delta) / (c * c);
    let tan_t = s / c / sl;
    Ok(singular / (r * r) + first_regular - lam * h2 / (4.0 * mass * l2) * bracket
        + 2.0 / l2 * mass * params.omega * params.omega * tan_t * tan_t)
}

/// Example 1 potential built as potential_general composed with the map.
pub fn qes_example1_potential_via_transform(
    p: &QesExample1Params,
    params: &PhysParams,
    r: f64,
) -> Result<f64> {
    let ctx = MapContext::new(*params, p.spec.mprime_q())?;
    let (x_fn, x_prime) = x_cos_multiple(p.l, params.lambda);
    map_potential(&ctx, |x| potential_general(&p.spec, &x_fn, &x_prime, params, x), r)
}

/// Which closed form of the Example 1 ground state to evaluate.
///
/// `AsPrinted` uses tan(t)^{γ/λl²}·sin(t)^{β/λl²} with t = (l/2)Υ.
/// `Factorized` replaces sin(t) by sin(2t) = sin(lΥ), the form obtained from
/// φ₀ = exp(−∫(βX+γ)/(𝒦X′)dx); only this one is an eigenfunction of the
/// Example 1 potential.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Example1Form {
    AsPrinted,
    #[default]
    Factorized,
}

/// Unnormalized Example 1 ground state on the principal branch lΥ(r) ∈ (0, π).
pub fn qes_example1_groundstate(
    p: &QesExample1Params,
    params: &PhysParams,
    r: f64,
    form: Example1Form,
) -> Result<f64> {
    check_radius(r)?;
    params.sqrt_lambda()?;
    let lam = params.lambda;
    let ups = upsilon_of_r(r, lam)?;
    let t = 0.5 * p.l * ups;
    if t >= 0.5 * PI {
        return Err(Error::SingularPoint {
            coordinate: "r",
            value: r,
        });
    }
    let lr2 = lam * r * r;
    let scale = lam * p.l * p.l;
    let sine = match form {
        Example1Form::AsPrinted => t.sin(),
        Example1Form::Factorized => (2.0 * t).sin(),
    };
    Ok(lr2.powf(-0.25) / (1.0 + lr2).sqrt()
        * t.tan().powf(p.spec.gamma() / scale)
        * sine.powf(p.spec.beta() / scale))
}

/// Example 2: X = √λ·x, i.e. A = λ, B = 0, C1 = 0, C2 = −i.
pub fn qes_example2_spec(mprime_q: f64, params: &PhysParams) -> Result<QesSpec> {
    QesSpec::with_transform_relations(
        params.lambda,
        0.0,
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, -1.0),
        mprime_q,
        params,
    )
}

/// Example 2 potential 𝒱(r) with s = sech Υ, τ = tanh Υ:
///
/// (2mω²/λ)(s − τ)² + (ħ²/8mr²)[1 + 2λr² − 4m'_Q²(1+λr²)]
/// + (λħ²/2m)[m'_Q(5m'_Q − 3δ)s² + (−2 + 2m'_Q(5+4m'_Q) − 5δ)sτ + (6 + 5m'_Q(2+m'_Q) + 5(1+m'_Q)δ)τ²].
pub fn qes_example2_potential(mprime_q: f64, params: &PhysParams, r: f64) -> Result<f64> {
    check_radius(r)?;
    let delta = params.delta()?;
    let (mass, hbar, lam, q) = (params.mass, params.hbar, params.lambda, mprime_q);
    let ups = upsilon_of_r(r, lam)?;
    let s = 1.0 / ups.cosh();
    let tau = ups.tanh();
    let h2 = hbar * hbar;
    let oscillator = 2.0 * mass * params.omega * params.omega / lam * (s - tau).powi(2);
    let centrifugal = h2 * (1.0 - 4.0 * q * q) / (8.0 * mass * r * r) + h2 * lam * (2.0 - 4.0 * q * q) / (8.0 * mass);
    let curvature = lam * h2 / (2.0 * mass)
        * (q * (5.0 * q - 3.0 * delta) * s * s
            + (-2.0 + 2.0 * q * (5.0 + 4.0 * q) - 5.0 * delta) * s * tau
            + (6.0 + 5.0 * q * (2.0 + q) + 5.0 * (1.0 + q) * delta) * tau * tau);
    Ok(oscillator + centrifugal + curvature)
}

/// Example 2 potential built as potential_general composed with the map.
pub fn qes_example2_potential_via_transform(mprime_q: f64, params: &PhysParams, r: f64) -> Result<f64> {
    let spec = qes_example2_spec(mprime_q, params)?;
    let ctx = MapContext::new(*params, mprime_q)?;
    let (x_fn, x_prime) = x_linear(params.lambda);
    map_potential(&ctx, |x| potential_general(&spec, &x_fn, &x_prime, params, x), r)
}

/// Unnormalized Example 2 ground state
/// (λr²)^{−1/4}(1+λr²)^{−1/2}·sech(Υ)^{β/λ}·exp(−(γ/λ)gd(Υ)).
pub fn qes_example2_groundstate(spec: &QesSpec, params: &PhysParams, r: f64) -> Result<f64> {
    check_radius(r)?;
    params.sqrt_lambda()?;
    let lam = params.lambda;
    let ups = upsilon_of_r(r, lam)?;
    let lr2 = lam * r * r;
    let gd_factor = if spec.gamma() == 0.0 {
        1.0
    } else {
        (-spec.gamma() / lam * gudermannian(ups)).exp()
    };
    Ok(lr2.powf(-0.25) / (1.0 + lr2).sqrt() * ups.cosh().powf(-spec.beta() / lam) * gd_factor)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::derivative::derivatives;
    use approx::assert_relative_eq;

    fn unit() -> PhysParams {
        PhysParams::natural(1.0, 1.0).unwrap()
    }

    /// Pointwise (Hψ)/ψ for the radial operator in channel m'.
    fn local_energy<F: Fn(f64) -> f64, V: Fn(f64) -> f64>(psi: F, v: V, mprime: i32, params: &PhysParams, r: f64) -> f64 {
        let ch = RadialChannel::new(mprime, *params);
        let (p2, p1, p0) = higgs_radial_coefficients(&ch, r).unwrap();
        let d = derivatives(&psi, r);
        (p2 * d.second + p1 * d.first + (p0 + v(r)) * d.value) / d.value
    }

    #[test]
    fn radial_coefficients_flat_and_sample() {
        let flat = PhysParams::natural(1.0, 0.0).unwrap();
        let (p2, p1, p0) = higgs_radial_coefficients(&RadialChannel::new(2, flat), 0.5).unwrap();
        assert_eq!((p2, p1, p0), (-0.5, -1.0, 8.0));
        let (_, _, p0) = higgs_radial_coefficients(&RadialChannel::new(0, unit()), 1.0).unwrap();
        assert_eq!(p0, -27.0 / 8.0);
        assert!(matches!(
            higgs_radial_coefficients(&RadialChannel::new(0, unit()), 0.0),
            Err(Error::SingularPoint { .. })
        ));
    }

    #[test]
    fn radial_coefficients_are_self_adjoint_with_weight_r() {
        let p = PhysParams::natural(1.0, 0.8).unwrap();
        let ch = RadialChannel::new(1, p);
        for &r in &[0.1, 0.7, 3.0] {
            let (p2, p1, _) = higgs_radial_coefficients(&ch, r).unwrap();
            // (w·P)'/w with w = r, P = −p2
            let d = derivatives(|s: f64| s * (-ch.params.kinetic_scale()) * (1.0 + p.lambda * s * s).powi(2), r);
            assert_relative_eq!(d.first / r, p1, max_relative = 1e-10);
            assert_relative_eq!(p2, -0.5 * (1.0 + 0.8 * r * r).powi(2), max_relative = 1e-15);
        }
    }

    #[test]
    fn ground_state_closed_form() {
        let p = unit();
        let k = p.frequency_ratio().unwrap();
        for &r in &[0.0, 0.5, 3.0] {
            let psi = higgs_wavefunction(QuantumNumbers::new(0, 0), &p, r).unwrap();
            assert_relative_eq!(psi, (1.0 + r * r).powf(-1.0 - 0.5 * k), max_relative = 1e-15);
        }
        assert_eq!(higgs_wavefunction(QuantumNumbers::new(2, 1), &p, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn node_count_matches_radial_number() {
        let p = unit();
        for n in 0..4u32 {
            for m in -2..=2 {
                let qn = QuantumNumbers::new(n, m);
                let mut nodes = 0;
                let mut prev = higgs_wavefunction(qn, &p, 1e-3).unwrap();
                for i in 1..4000 {
                    let r = 1e-3 + 30.0 * f64::from(i) / 4000.0;
                    let cur = higgs_wavefunction(qn, &p, r).unwrap();
                    if cur * prev < 0.0 {
                        nodes += 1;
                    }
                    prev = cur;
                }
                assert_eq!(nodes, n, "N = {n}, m' = {m}");
            }
        }
    }

    #[test]
    fn depends_on_mprime_through_modulus() {
        let p = PhysParams::natural(1.4, 0.3).unwrap();
        for m in 1..4 {
            for &r in &[0.2, 1.1, 5.0] {
                let a = higgs_wavefunction(QuantumNumbers::new(2, m), &p, r).unwrap();
                let b = higgs_wavefunction(QuantumNumbers::new(2, -m), &p, r).unwrap();
                assert_eq!(a, b);
            }
            assert_eq!(
                higgs_energy(QuantumNumbers::new(1, m), &p),
                higgs_energy(QuantumNumbers::new(1, -m), &p)
            );
        }
    }

    #[test]
    fn energy_examples() {
        let flat = PhysParams::new(1.0, 0.7, 2.0, 0.0).unwrap();
        assert_relative_eq!(higgs_energy(QuantumNumbers::new(0, 0), &flat), 0.7 * 2.0, max_relative = 1e-15);
        assert_relative_eq!(
            higgs_energy(QuantumNumbers::new(0, 0), &unit()),
            0.5 * 5f64.sqrt() + 0.5,
            max_relative = 1e-15
        );
        let p = unit();
        assert_eq!(
            higgs_energy(QuantumNumbers::new(1, 0), &p),
            higgs_energy(QuantumNumbers::new(0, 2), &p)
        );
    }

    #[test]
    fn eigen_residual_small() {
        let p = unit();
        for n in 0..3u32 {
            for m in 0..3 {
                let qn = QuantumNumbers::new(n, m);
                let e = higgs_energy(qn, &p);
                for i in 0..40 {
                    let r = 0.05 + 19.95 * f64::from(i) / 39.0;
                    let psi = |s: f64| higgs_wavefunction(qn, &p, s).unwrap();
                    if psi(r).abs() < 1e-10 {
                        continue;
                    }
                    let le = local_energy(psi, |s| 0.5 * s * s, m, &p, r);
                    assert!((le - e).abs() <= 1e-6 * e, "N={n} m'={m} r={r}: {le} vs {e}");
                }
            }
        }
    }

    #[test]
    fn example1_paths_agree() {
        for &(l, q, lam) in &[(3.0, 1.0, 1.0), (1.0, 0.0, 1.0), (2.0, 2.0, 0.1), (2.5, 0.5, 3.0), (3.0, 0.0, 0.5)] {
            let p = PhysParams::natural(1.0, lam).unwrap();
            let ex = QesExample1Params::new(l, q, &p).unwrap();
            let end = ex.branch_end(lam).min(10.0);
            for i in 1..50 {
                let r = end * f64::from(i) / 50.0;
                let direct = qes_example1_potential(&ex, &p, r).unwrap();
                let composed = qes_example1_potential_via_transform(&ex, &p, r).unwrap();
                assert!(
                    (direct - composed).abs() <= 1e-9 * direct.abs().max(1.0),
                    "l={l} m'_Q={q} lambda={lam} r={r}: {direct} vs {composed}"
                );
            }
        }
    }

    #[test]
    fn example1_small_r_is_stable() {
        // collected 1/r² form against the naive term-by-term transcription
        let p = unit();
        let ex = QesExample1Params::new(3.0, 1.0, &p).unwrap();
        let naive = |r: f64| {
            let (q, d, l) = (1.0, 5f64.sqrt(), 3.0);
            let t = 0.5 * l * r.atan();
            (1.0 - 4.0 * q * q + 2.0 * r * r * (4.0 * q + 3.0) + 4.0 * r * r * (q + 1.0) * d) / (8.0 * r * r)
                - (10.0 + 8.0 * q * (q + 2.0) + 8.0 * (q + 1.0) * d
                    + (l * l - 4.0 * q - 2.0) * (2.0 * q + 1.0) / t.sin().powi(2)
                    + (l * l - 4.0) * (1.0 + d) / t.cos().powi(2))
                    / (4.0 * l * l)
                + 2.0 / (l * l) * t.tan().powi(2)
        };
        for &r in &[0.5, 0.1, 0.02, 1e-3] {
            let v = qes_example1_potential(&ex, &p, r).unwrap();
            assert_relative_eq!(v, naive(r), max_relative = 1e-11);
        }
        // near the origin only the collected inverse-square strength survives
        let strength = (1.0 - 4.0) / 8.0 - (9.0 - 4.0 - 2.0) * 3.0 / 81.0;
        let r = 1e-7;
        assert_relative_eq!(qes_example1_potential(&ex, &p, r).unwrap() * r * r, strength, max_relative = 1e-9);
    }

    #[test]
    fn example1_l2_is_oscillator() {
        for &q in &[0.0, 1.0, 2.0, 0.5] {
            let p = PhysParams::natural(1.0, 0.7).unwrap();
            let ex = QesExample1Params::new(2.0, q, &p).unwrap();
            let base = qes_example1_potential(&ex, &p, 1.0).unwrap() - 0.5;
            for &r in &[1e-4, 0.01, 0.3, 2.0, 30.0] {
                let diff = qes_example1_potential(&ex, &p, r).unwrap() - 0.5 * r * r;
                assert!((diff - base).abs() <= 1e-9 * (1.0 + r * r), "m'_Q={q} r={r}");
            }
        }
    }

    #[test]
    fn example1_ground_state_forms() {
        let p = unit();
        let ex = QesExample1Params::new(3.0, 1.0, &p).unwrap();
        let end = ex.branch_end(1.0);
        assert_relative_eq!(end, 3f64.sqrt(), max_relative = 1e-15);
        let v = |r: f64| qes_example1_potential(&ex, &p, r).unwrap();
        let spread = |form| {
            let e: Vec<f64> = (0..30)
                .map(|i| {
                    let r = end * (0.1 + 0.8 * f64::from(i) / 29.0);
                    local_energy(|s| qes_example1_groundstate(&ex, &p, s, form).unwrap(), v, 1, &p, r)
                })
                .collect();
            let mean = e.iter().sum::<f64>() / e.len() as f64;
            let max_dev = e.iter().map(|x| (x - mean).abs()).fold(0.0, f64::max);
            (mean, max_dev / mean.abs())
        };
        let (mean, dev) = spread(Example1Form::Factorized);
        assert!(dev < 1e-7, "factorized spread {dev}");
        assert_relative_eq!(mean, higgs_energy(QuantumNumbers::new(0, 1), &p), max_relative = 1e-7);
        let (_, printed) = spread(Example1Form::AsPrinted);
        assert!(printed > 1e-2, "printed form spread {printed}");
        assert!(matches!(
            qes_example1_groundstate(&ex, &p, 1.8, Example1Form::Factorized),
            Err(Error::SingularPoint { .. })
        ));
        for i in 1..20 {
            let r = end * f64::from(i) / 20.0;
            assert!(qes_example1_groundstate(&ex, &p, r, Example1Form::Factorized).unwrap() > 0.0);
        }
    }

    #[test]
    fn example1_l2_ground_state_is_oscillator_state() {
        let p = unit();
        for &q in &[0.0, 1.0, 2.0] {
            let ex = QesExample1Params::new(2.0, q, &p).unwrap();
            let ratio = |r: f64| {
                qes_example1_groundstate(&ex, &p, r, Example1Form::Factorized).unwrap()
                    / higgs_wavefunction(QuantumNumbers::new(0, q as i32), &p, r).unwrap()
            };
            let first = ratio(0.1);
            for &r in &[0.3, 1.0, 4.0, 15.0] {
                assert_relative_eq!(ratio(r), first, max_relative = 1e-10);
            }
        }
    }

    #[test]
    fn example2_paths_agree() {
        for &(q, lam) in &[(0.0, 1.0), (1.0, 1.0), (2.0, 0.2), (0.5, 4.0)] {
            let p = PhysParams::natural(1.3, lam).unwrap();
            for i in 1..60 {
                let r = 0.05 * f64::from(i) * f64::from(i);
                let direct = qes_example2_potential(q, &p, r).unwrap();
                let composed = qes_example2_potential_via_transform(q, &p, r).unwrap();
                assert!(
                    (direct - composed).abs() <= 1e-9 * direct.abs().max(1.0),
                    "m'_Q={q} lambda={lam} r={r}: {direct} vs {composed}"
                );
            }
        }
    }

    #[test]
    fn example2_half_integer_is_regular_at_origin() {
        let p = unit();
        let v0 = qes_example2_potential(0.5, &p, 1e-8).unwrap();
        let v1 = qes_example2_potential(0.5, &p, 1e-4).unwrap();
        assert!(v0.is_finite());
        assert!((v0 - v1).abs() < 1e-3);
    }

    #[test]
    fn example2_large_r_limit() {
        let p = unit();
        let far = qes_example2_potential(1.0, &p, 1e7).unwrap();
        let farther = qes_example2_potential(1.0, &p, 1e8).unwrap();
        assert!((far - farther).abs() < 1e-6);
    }

    #[test]
    fn example2_ground_state() {
        let p = unit();
        for &q in &[0.0, 1.0] {
            let spec = qes_example2_spec(q, &p).unwrap();
            let v = |r: f64| qes_example2_potential(q, &p, r).unwrap();
            let mut energies = Vec::new();
            for i in 0..30 {
                let r = 0.1 * 50f64.powf(f64::from(i) / 29.0);
                let psi = |s: f64| qes_example2_groundstate(&spec, &p, s).unwrap();
                assert!(psi(r) > 0.0);
                energies.push(local_energy(psi, v, q as i32, &p, r));
            }
            let e0 = higgs_energy(QuantumNumbers::new(0, q as i32), &p);
            for e in energies {
                assert_relative_eq!(e, e0, max_relative = 1e-7);
            }
        }
    }

    #[test]
    fn example2_without_gamma_drops_gd_factor() {
        let p = unit();
        let spec = QesSpec::new(1.0, 0.0, 0.0.into(), Complex64::new(0.0, -1.0), 2.0, 0.0, 0.0, &p).unwrap();
        let r: f64 = 0.8;
        let ups = r.atan();
        let expected = r.powf(-0.5) / (1.0 + r * r).sqrt() * ups.cosh().powf(-2.0);
        assert_relative_eq!(qes_example2_groundstate(&spec, &p, r).unwrap(), expected, max_relative = 1e-15);
    }
}
