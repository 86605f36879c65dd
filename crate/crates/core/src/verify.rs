//! Registry of verification suites. Each suite measures quantities, compares
//! them with tolerances, and reports every number it looked at.

use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::crs::{
    crs_energy, crs_operator_coefficients, crs_potential_special, crs_wavefunction_amplitude, potential_general,
    special_params, x_constraint_residual, x_cos_multiple, x_general, ArgumentConvention,
};
use crate::error::Result;
use crate::higgs::{
    higgs_energy, higgs_radial_coefficients, higgs_wavefunction, qes_example1_groundstate, qes_example1_potential,
    qes_example1_potential_via_transform, qes_example2_groundstate, qes_example2_potential,
    qes_example2_potential_via_transform, qes_example2_spec, Example1Form, QesExample1Params, RadialChannel,
};
use crate::numerics::{
    crs_form, higgs_channel_problem, higgs_form, interval_problem, lowest_eigenvalues, observed_order,
    oscillator_potential, radial_scale, rayleigh_quotient_at, residual_norm_at, solve_refined, EigenResult, EndKind,
    ScalarFn,
};
use crate::params::{PhysParams, QuantumNumbers};
use crate::special_functions::{gudermannian, hyp2f1_terminating, theta_of_x, upsilon_of_r};
use crate::transform::{map_potential, map_wavefunction, r_of_x, x_of_r, x_supremum, MapContext};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Bound {
    /// Passes when measured < tolerance.
    Below,
    /// Passes when measured > tolerance.
    Above,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub label: String,
    pub measured: f64,
    pub tolerance: f64,
    pub bound: Bound,
    /// Informational checks are reported but never fail a suite.
    pub enforced: bool,
    pub passed: bool,
}

impl Check {
    pub fn below(label: impl Into<String>, measured: f64, tolerance: f64) -> Self {
        Self {
            label: label.into(),
            measured,
            tolerance,
            bound: Bound::Below,
            enforced: true,
            passed: measured < tolerance,
        }
    }

    pub fn above(label: impl Into<String>, measured: f64, tolerance: f64) -> Self {
        Self {
            label: label.into(),
            measured,
            tolerance,
            bound: Bound::Above,
            enforced: true,
            passed: measured > tolerance,
        }
    }

    pub fn informational(mut self) -> Self {
        self.enforced = false;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub id: String,
    pub title: String,
    pub passed: bool,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

impl SuiteReport {
    fn new(id: &str, title: &str) -> Self {
        Self {
            id: id.to_string(),
            title: title.to_string(),
            passed: true,
            checks: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    /// Record a failed computation as a failing check instead of aborting.
    fn error(&mut self, label: impl Into<String>, err: crate::Error) {
        let label = label.into();
        self.notes.push(format!("{label}: {err}"));
        self.checks.push(Check::below(label, f64::NAN, 0.0));
    }

    fn finish(mut self) -> Self {
        self.passed = self.checks.iter().all(|c| c.passed || !c.enforced);
        self
    }
}

pub struct Suite {
    pub id: &'static str,
    pub title: &'static str,
    run: fn() -> SuiteReport,
}

impl Suite {
    pub fn run(&self) -> SuiteReport {
        (self.run)()
    }
}

pub fn registry() -> Vec<Suite> {
    macro_rules! suite {
        ($id:expr, $title:expr, $f:ident) => {
            Suite {
                id: $id,
                title: $title,
                run: $f,
            }
        };
    }
    vec![
        suite!("criterion-01-higgs-spectrum", "Radial Higgs spectrum from the finite-difference oracle", criterion_01),
        suite!("criterion-02-crs-spectrum", "CRS spectrum from the finite-difference oracle", criterion_02),
        suite!("criterion-03-eigen-residual", "Closed-form Higgs eigenpairs satisfy the radial equation", criterion_03),
        suite!("criterion-04-transform-closure", "Mapped special CRS potential equals the oscillator", criterion_04),
        suite!("criterion-05-wavefunction-map", "Mapped CRS wavefunctions reproduce the Higgs ones", criterion_05),
        suite!("criterion-06-constraint-ode", "X(x) choices satisfy the constraint equation", criterion_06),
        suite!("criterion-07-example1", "Quasi-exact solvability of the trigonometric example", criterion_07_example1),
        suite!("criterion-07-example2", "Quasi-exact solvability of the linear example", criterion_07_example2),
        suite!("criterion-08-l2-reduction", "Trigonometric example at l = 2 against the oscillator", criterion_08),
        suite!("criterion-09-flat-limit", "Flat-space limit of the spectrum", criterion_09),
        suite!("criterion-10-determinism", "Repeated runs give identical reports", criterion_10),
        suite!("invariants-special-functions", "Special function invariants", invariants_special_functions),
        suite!("invariants-crs", "CRS model invariants", invariants_crs),
        suite!("invariants-higgs", "Higgs model invariants", invariants_higgs),
        suite!("invariants-transform", "Transformation invariants", invariants_transform),
        suite!("invariants-numerics", "Finite-difference oracle invariants", invariants_numerics),
    ]
}

pub fn suite_ids() -> Vec<&'static str> {
    registry().iter().map(|s| s.id).collect()
}

/// Run the selected suites (all when `ids` is empty) in parallel; reports
/// come back in registry order.
pub fn run_suites(ids: &[&str]) -> Vec<SuiteReport> {
    registry()
        .into_par_iter()
        .filter(|s| ids.is_empty() || ids.contains(&s.id))
        .map(|s| s.run())
        .collect()
}

fn unit_params(lambda: f64) -> PhysParams {
    PhysParams::natural(1.0, lambda).expect("unit parameters are valid")
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
}

fn logspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    let (la, lb) = (a.ln(), b.ln());
    (0..n).map(|i| (la + (lb - la) * i as f64 / (n - 1) as f64).exp()).collect()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

/// std/|mean| of complex samples.
fn ratio_spread(q: &[Complex64]) -> f64 {
    let n = q.len() as f64;
    let mean = q.iter().sum::<Complex64>() / n;
    let var = q.iter().map(|z| (z - mean).norm_sqr()).sum::<f64>() / n;
    var.sqrt() / mean.norm()
}

/// max|q − mean|/|mean| of real samples.
fn max_deviation(q: &[f64]) -> f64 {
    let mean = q.iter().sum::<f64>() / q.len() as f64;
    q.iter().map(|x| (x - mean).abs()).fold(0.0, f64::max) / mean.abs()
}

const GRID_N: usize = 2000;

fn criterion_01() -> SuiteReport {
    let mut rep = SuiteReport::new("criterion-01-higgs-spectrum", "Radial Higgs spectrum from the finite-difference oracle");
    let cases: Vec<(f64, i32)> = [0.1, 1.0].iter().flat_map(|&l| (0..3).map(move |m| (l, m))).collect();
    let results: Vec<_> = cases
        .par_iter()
        .map(|&(lam, m)| {
            let params = unit_params(lam);
            let v = oscillator_potential(&params);
            let solved = solve_refined(|n| higgs_channel_problem(m, &params, v.clone(), n).map(|x| x.0), GRID_N, 3);
            (lam, m, params, solved)
        })
        .collect();
    for (lam, m, params, solved) in results {
        match solved {
            Ok((spec, _)) => {
                for (n, e) in spec.extrapolated.iter().enumerate() {
                    let exact = higgs_energy(QuantumNumbers::new(n as u32, m), &params);
                    rep.push(Check::below(format!("lambda={lam} N={n} m'={m} relative error"), rel(*e, exact), 1e-5));
                }
            }
            Err(e) => rep.error(format!("lambda={lam} m'={m}"), e),
        }
    }
    rep.note("half-line compactified by r = t/(√λ(1−t)); regular power law r^|m'| factored out at the origin; Richardson over n = 2000, 4000");
    rep.finish()
}

/// Lowest CRS levels for one domain layout, compared with the closed form.
fn crs_domain_errors(
    lam: f64,
    mq: f64,
    a: f64,
    b: f64,
    left: EndKind,
    right: EndKind,
) -> Result<Vec<f64>> {
    let params = unit_params(lam);
    let v: ScalarFn = Arc::new(move |x| crs_potential_special(x, mq, &params).unwrap_or(f64::NAN));
    let (spec, _) = solve_refined(
        |n| interval_problem(crs_form(&params, v.clone()), a, b, left, right, n).map(|x| x.0),
        GRID_N,
        3,
    )?;
    (0..3)
        .map(|n| Ok(rel(spec.extrapolated[n], crs_energy(n as u32, mq, &params)?)))
        .collect()
}

fn criterion_02() -> SuiteReport {
    let mut rep = SuiteReport::new("criterion-02-crs-spectrum", "CRS spectrum from the finite-difference oracle");
    struct Layout {
        name: &'static str,
        enforced: bool,
        lambdas: &'static [f64],
    }
    let layouts = [
        Layout { name: "mapped-interval-regular-ends", enforced: true, lambdas: &[0.1, 1.0] },
        Layout { name: "mapped-interval-dirichlet", enforced: false, lambdas: &[0.1, 1.0] },
        Layout { name: "wide-dirichlet", enforced: false, lambdas: &[1.0] },
    ];
    let mut jobs = Vec::new();
    for (li, layout) in layouts.iter().enumerate() {
        for &lam in layout.lambdas {
            for mq in [0.0, 1.0, 2.0] {
                jobs.push((li, lam, mq));
            }
        }
    }
    let results: Vec<_> = jobs
        .par_iter()
        .map(|&(li, lam, mq)| {
            let sup = x_supremum(lam);
            let out = match li {
                0 => crs_domain_errors(lam, mq, 0.0, sup, EndKind::Regular { alpha: 0.0 }, EndKind::Regular { alpha: 0.0 }),
                1 => crs_domain_errors(lam, mq, 1e-4, sup - 1e-4, EndKind::Dirichlet, EndKind::Dirichlet),
                _ => crs_domain_errors(lam, mq, 1e-4, 10.0, EndKind::Dirichlet, EndKind::Dirichlet),
            };
            (li, lam, mq, out)
        })
        .collect();
    for (li, lam, mq, out) in results {
        let layout = &layouts[li];
        match out {
            Ok(errs) => {
                for (n, err) in errs.into_iter().enumerate() {
                    let c = Check::below(
                        format!("{} lambda={lam} N={n} m'_Q={mq} relative error", layout.name),
                        err,
                        1e-5,
                    );
                    rep.push(if layout.enforced { c } else { c.informational() });
                }
            }
            Err(e) => {
                let label = format!("{} lambda={lam} m'_Q={mq}", layout.name);
                if layout.enforced {
                    rep.error(label, e);
                } else {
                    rep.note(format!("{label}: {e}"));
                }
            }
        }
    }
    rep.note("mapped-interval-regular-ends: x in [0, sinh(pi/2)/sqrt(lambda)] with the local power laws factored out at both ends; this layout reproduces the closed-form spectrum");
    rep.note("mapped-interval-dirichlet: x in [1e-4, sinh(pi/2)/sqrt(lambda) - 1e-4] with Dirichlet ends");
    rep.note("wide-dirichlet: x in [1e-4, 10]; the potential has a non-integrable wall at sinh(pi/2)/sqrt(lambda) inside this domain");
    rep.finish()
}

fn criterion_03() -> SuiteReport {
    let mut rep = SuiteReport::new("criterion-03-eigen-residual", "Closed-form Higgs eigenpairs satisfy the radial equation");
    let points = linspace(0.05, 20.0, 400);
    for lam in [0.1, 1.0] {
        let params = unit_params(lam);
        let mut worst: f64 = 0.0;
        for n in 0..4u32 {
            for m in -2..=3 {
                let qn = QuantumNumbers::new(n, m);
                let ch = RadialChannel::new(m, params);
                let coef = |r: f64| higgs_radial_coefficients(&ch, r).unwrap_or((f64::NAN, f64::NAN, f64::NAN));
                let res = residual_norm_at(
                    |r| coef(r).0,
                    |r| coef(r).1,
                    |r| coef(r).2 + 0.5 * r * r,
                    |r| higgs_wavefunction(qn, &params, r).unwrap_or(f64::NAN),
                    higgs_energy(qn, &params),
                    &points,
                );
                worst = worst.max(res);
                rep.push(Check::below(format!("lambda={lam} N={n} m'={m} max relative residual"), res, 1e-6));
            }
        }
        rep.note(format!("lambda={lam}: worst residual {worst:.3e}"));
    }
    rep.note("derivatives: five-point stencils at h and h/2 combined by one Richardson step, h = 4e-3(1+r)");
    rep.finish()
}

fn criterion_04() -> SuiteReport {
    let mut rep = SuiteReport::new("criterion-04-transform-closure", "Mapped special CRS potential equals the oscillator");
    let closure_error = |lam: f64, mq: f64, radii: &[f64]| -> Result<f64> {
        let ctx = MapContext::new(unit_params(lam), mq)?;
        let p = *ctx.params();
        let mut worst: f64 = 0.0;
        for &r in radii {
            let v = map_potential(&ctx, |x| crs_potential_special(x, mq, &p), r)?;
            worst = worst.max(rel(v, 0.5 * r * r));
        }
        Ok(worst)
    };
    let radii = logspace(0.5, 50.0, 100);
    let wide = logspace(0.01, 100.0, 100);
    for lam in [0.1, 1.0, 10.0] {
        for mq in [0.0, 1.0, 2.0, 0.5] {
            match closure_error(lam, mq, &radii) {
                Ok(e) => rep.push(Check::below(format!("lambda={lam} m'_Q={mq} max relative difference, r in [0.5, 50]"), e, 1e-12)),
                Err(e) => rep.error(format!("lambda={lam} m'_Q={mq}"), e),
            }
            if let Ok(e) = closure_error(lam, mq, &wide) {
                rep.push(
                    Check::below(format!("lambda={lam} m'_Q={mq} max relative difference, r in [0.01, 100]"), e, 1e-12)
                        .informational(),
                );
            }
        }
    }
    rep.note("below r ~ 0.3 the 1/r^2 parts of the CRS potential and of the mapping shift cancel to leave r^2/2, so f64 rounding alone exceeds 1e-12 relative there");
    rep.finish()
}

/// max relative residual of the CRS eigen-equation for the special
/// wavefunction amplitude.
fn crs_residual(n: u32, mq: f64, params: &PhysParams, conv: ArgumentConvention) -> Result<f64> {
    let sup = x_supremum(params.lambda);
    let points = linspace(0.1, 0.9 * sup, 200);
    let energy = crs_energy(n, mq, params)?;
    Ok(residual_norm_at(
        |x| crs_operator_coefficients(params, x).0,
        |x| crs_operator_coefficients(params, x).1,
        |x| crs_potential_special(x, mq, params).unwrap_or(f64::NAN),
        |x| crs_wavefunction_amplitude(n, mq, params, x, conv).unwrap_or(f64::NAN),
        energy,
        &points,
    ))
}

fn criterion_05() -> SuiteReport {
    let mut rep = SuiteReport::new("criterion-05-wavefunction-map", "Mapped CRS wavefunctions reproduce the Higgs ones");
    let params = unit_params(1.0);
    let radii = linspace(0.05, 20.0, 400);
    for n in 0..3u32 {
        for m in 0..3 {
            let mq = f64::from(m);
            let spread = (|| -> Result<f64> {
                let ctx = MapContext::new(params, mq)?;
                let qn = QuantumNumbers::new(n, m);
                let target: Vec<f64> = radii.iter().map(|&r| higgs_wavefunction(qn, &params, r)).collect::<Result<_>>()?;
                let peak = target.iter().fold(0.0_f64, |a, b| a.max(b.abs()));
                let mut ratios = Vec::new();
                for (&r, &t) in radii.iter().zip(&target) {
                    if t.abs() < 1e-8 * peak {
                        continue;
                    }
                    let mapped = map_wavefunction(
                        &ctx,
                        |x| crate::crs::crs_wavefunction_special(n, mq, &params, x, ArgumentConvention::Squared),
                        r,
                    )?;
                    ratios.push(t / mapped);
                }
                Ok(ratio_spread(&ratios))
            })();
            match spread {
                Ok(s) => rep.push(Check::below(format!("N={n} m'_Q={m} ratio std/|mean| (squared convention)"), s, 1e-6)),
                Err(e) => rep.error(format!("N={n} m'_Q={m}"), e),
            }
            for (conv, name) in [(ArgumentConvention::Squared, "squared"), (ArgumentConvention::AsPrinted, "unsquared")] {
                match crs_residual(n, mq, &params, conv) {
                    Ok(r) => rep.push(match conv {
                        ArgumentConvention::Squared => {
                            Check::below(format!("N={n} m'_Q={m} CRS eigen-equation residual ({name})"), r, 1e-6)
                        }
                        ArgumentConvention::AsPrinted => {
                            Check::above(format!("N={n} m'_Q={m} CRS eigen-equation residual ({name})"), r, 1e-2)
                        }
                    }),
                    Err(e) => rep.error(format!("N={n} m'_Q={m} {name}"), e),
                }
            }
        }
    }
    rep.note("the unsquared form (argument sin Theta, base cos Theta) does not solve the CRS equation; squaring both gives an exact eigenfunction that maps onto the Higgs one");
    rep.finish()
}

fn criterion_06() -> SuiteReport {
    let mut rep = SuiteReport::new("criterion-06-constraint-ode", "X(x) choices satisfy the constraint equation");
    let points = linspace(0.0, 5.0, 50);
    for lam in [0.1, 1.0, 10.0] {
        let params = unit_params(lam);
        let mut cases: Vec<(String, f64, Box<dyn Fn(f64) -> f64>)> = Vec::new();
        if let Ok(spec) = special_params(0.0, &params) {
            cases.push((
                "cos 2Theta".into(),
                spec.a(),
                Box::new(move |x| x_general(&spec, &params, x).unwrap_or(f64::NAN)),
            ));
        }
        for l in [1.0, 2.0, 3.0] {
            if let Ok(ex) = QesExample1Params::new(l, 1.0, &params) {
                let spec = *ex.spec();
                cases.push((
                    format!("example 1 l={l}"),
                    spec.a(),
                    Box::new(move |x| x_general(&spec, &params, x).unwrap_or(f64::NAN)),
                ));
            }
        }
        if let Ok(spec) = qes_example2_spec(1.0, &params) {
            cases.push((
                "example 2".into(),
                spec.a(),
                Box::new(move |x| x_general(&spec, &params, x).unwrap_or(f64::NAN)),
            ));
        }
        for (name, a, x_fn) in cases {
            let worst = points
                .iter()
                .map(|&x| x_constraint_residual(&x_fn, a, 0.0, &params, x).abs())
                .fold(0.0, f64::max);
            rep.push(Check::below(format!("lambda={lam} {name} max residual"), worst, 1e-6));
        }
    }
    rep.finish()
}

/// Ground state of a channel plus the window of nodes where it is sizeable.
fn ratio_against(eig: &EigenResult, window: (f64, f64), candidate: impl Fn(f64) -> Result<f64>) -> Result<f64> {
    let psi = eig.physical_eigenvector(0);
    let peak = psi.iter().fold(0.0_f64, |a, b| a.max(b.abs()));
    let mut q = Vec::new();
    for (&r, &v) in eig.coordinates.iter().zip(&psi) {
        if r < window.0 || r > window.1 || v.abs() < 1e-3 * peak {
            continue;
        }
        q.push(v / candidate(r)?);
    }
    Ok(max_deviation(&q))
}

/// A channel that falls to the centre has no ground state: its lowest level
/// runs off with the grid, so no closed-form candidate can match it.
fn unbounded_check(m: i32, spec: &crate::numerics::RefinedSpectrum) -> Check {
    Check::above(
        format!("(c) channel m'={m}: no ground state, grid dependence |E(2n) - E(n)| / |E(n)|"),
        rel(spec.fine[0], spec.coarse[0]),
        1e-2,
    )
}

fn criterion_07_example1() -> SuiteReport {
    let mut rep = SuiteReport::new("criterion-07-example1", "Quasi-exact solvability of the trigonometric example");
    let params = unit_params(1.0);
    let (l, mq) = (3.0, 1_i32);
    let ex = match QesExample1Params::new(l, f64::from(mq), &params) {
        Ok(ex) => ex,
        Err(e) => {
            rep.error("setup", e);
            return rep.finish();
        }
    };
    let end = ex.branch_end(params.lambda);
    let v: ScalarFn = Arc::new(move |r| qes_example1_potential(&ex, &params, r).unwrap_or(f64::NAN));
    let sample = linspace(0.1 * end, 0.9 * end, 200);

    // (a) pointwise energy of the closed-form ground states
    let form = higgs_form(mq, &params, v.clone());
    let mut e0 = f64::NAN;
    match rayleigh_quotient_at(&form, |r| qes_example1_groundstate(&ex, &params, r, Example1Form::Factorized).unwrap_or(f64::NAN), &sample) {
        Ok(est) => {
            e0 = est.energy;
            rep.push(Check::below("(a) Rayleigh constancy, factorized ground state", est.constancy, 1e-6));
            rep.note(format!("(a) Rayleigh energy E0 = {:.12}", est.energy));
        }
        Err(e) => rep.error("(a) factorized ground state", e),
    }
    match rayleigh_quotient_at(&form, |r| qes_example1_groundstate(&ex, &params, r, Example1Form::AsPrinted).unwrap_or(f64::NAN), &sample) {
        Ok(est) => rep.push(Check::above("(a) Rayleigh constancy, half-angle form sin(l Upsilon / 2)", est.constancy, 1e-2)),
        Err(e) => rep.error("(a) half-angle ground state", e),
    }
    rep.push(
        Check::below(
            "(a) E0 against the oscillator level E(N=0, m'=m'_Q), relative",
            rel(e0, higgs_energy(QuantumNumbers::new(0, mq), &params)),
            1e-8,
        )
        .informational(),
    );

    // (b), (c) numerical ground states per channel on the principal branch
    let channels = [mq, mq - 1, mq + 1];
    let solved: Vec<_> = channels
        .par_iter()
        .map(|&m| {
            let build = |n: usize| {
                interval_problem(
                    higgs_form(m, &params, v.clone()),
                    0.0,
                    end,
                    EndKind::Regular { alpha: 1.0 },
                    EndKind::Regular { alpha: 0.0 },
                    n,
                )
            };
            let analysis = build(GRID_N).map(|x| x.1);
            (m, analysis, solve_refined(|n| build(n).map(|x| x.0), GRID_N, 1))
        })
        .collect();
    for (m, analysis, result) in solved {
        let (spec, eig) = match result {
            Ok(x) => x,
            Err(e) => {
                rep.error(format!("channel m'={m}"), e);
                continue;
            }
        };
        let falls = analysis.map(|a| a.falls_to_centre()).unwrap_or(false);
        let energy = spec.extrapolated[0];
        if m == mq {
            rep.push(Check::below("(b) channel m'=m'_Q ground eigenvalue vs Rayleigh E0, relative", rel(energy, e0), 1e-4));
        } else {
            rep.note(format!(
                "channel m'={m}: ground eigenvalue {energy:.9}{}",
                if falls { " (inverse-square attraction below the critical value: the channel falls to the centre and its levels depend on the grid)" } else { "" }
            ));
            if falls {
                rep.push(unbounded_check(m, &spec));
                continue;
            }
            let window = (0.05 * end, 0.95 * end);
            for (cand_mq, tag) in [(f64::from(mq), "m'_Q"), (f64::from(m), "channel m'")] {
                let dev = QesExample1Params::new(l, cand_mq, &params).and_then(|cand| {
                    ratio_against(&eig, window, |r| qes_example1_groundstate(&cand, &params, r, Example1Form::Factorized))
                });
                match dev {
                    Ok(d) => rep.push(Check::above(
                        format!("(c) channel m'={m}: deviation of numerical/closed-form ratio, candidate built with {tag}"),
                        d,
                        1e-2,
                    )),
                    Err(e) => rep.error(format!("(c) channel m'={m} candidate {tag}"), e),
                }
            }
        }
    }
    rep.note("l = 3, m'_Q = 1, hbar = m = omega = lambda = 1; principal branch 3 Upsilon(r) < pi, i.e. r < sqrt(3)");
    rep.note("the half-angle form is not an eigenfunction; with sin(l Upsilon) in place of sin(l Upsilon / 2) it is exact, and that form defines E0");
    rep.finish()
}

fn criterion_07_example2() -> SuiteReport {
    let mut rep = SuiteReport::new("criterion-07-example2", "Quasi-exact solvability of the linear example");
    let params = unit_params(1.0);
    let mq = 1_i32;
    let spec = match qes_example2_spec(f64::from(mq), &params) {
        Ok(s) => s,
        Err(e) => {
            rep.error("setup", e);
            return rep.finish();
        }
    };
    let v: ScalarFn = Arc::new(move |r| qes_example2_potential(f64::from(mq), &params, r).unwrap_or(f64::NAN));
    let sample = logspace(0.1, 20.0, 200);
    let form = higgs_form(mq, &params, v.clone());
    let mut e0 = f64::NAN;
    match rayleigh_quotient_at(&form, |r| qes_example2_groundstate(&spec, &params, r).unwrap_or(f64::NAN), &sample) {
        Ok(est) => {
            e0 = est.energy;
            rep.push(Check::below("(a) Rayleigh constancy of the ground state", est.constancy, 1e-6));
            rep.note(format!("(a) Rayleigh energy E0 = {:.12}", est.energy));
        }
        Err(e) => rep.error("(a) ground state", e),
    }

    let channels = [mq, mq - 1, mq + 1];
    let solved: Vec<_> = channels
        .par_iter()
        .map(|&m| {
            let build = |n: usize| higgs_channel_problem(m, &params, v.clone(), n);
            let analysis = build(GRID_N).map(|x| x.1);
            (m, analysis, solve_refined(|n| build(n).map(|x| x.0), GRID_N, 1))
        })
        .collect();
    for (m, analysis, result) in solved {
        let (refined, eig) = match result {
            Ok(x) => x,
            Err(e) => {
                rep.error(format!("channel m'={m}"), e);
                continue;
            }
        };
        let falls = analysis.map(|a| a.falls_to_centre()).unwrap_or(false);
        let energy = refined.extrapolated[0];
        if m == mq {
            rep.push(Check::below("(b) channel m'=m'_Q ground eigenvalue vs Rayleigh E0, relative", rel(energy, e0), 1e-4));
            rep.note(format!("(b) numerical ground eigenvalue {energy:.9}"));
        } else {
            rep.note(format!(
                "channel m'={m}: ground eigenvalue {energy:.9}{}",
                if falls { " (falls to the centre; grid dependent)" } else { "" }
            ));
            if falls {
                rep.push(unbounded_check(m, &refined));
                continue;
            }
            for (cand_mq, tag) in [(f64::from(mq), "m'_Q"), (f64::from(m), "channel m'")] {
                let dev = qes_example2_spec(cand_mq, &params)
                    .and_then(|cand| ratio_against(&eig, (0.05, 20.0), |r| qes_example2_groundstate(&cand, &params, r)));
                match dev {
                    Ok(d) => rep.push(Check::above(
                        format!("(c) channel m'={m}: deviation of numerical/closed-form ratio, candidate built with {tag}"),
                        d,
                        1e-2,
                    )),
                    Err(e) => rep.error(format!("(c) channel m'={m} candidate {tag}"), e),
                }
            }
        }
    }
    rep.note("m'_Q = 1, hbar = m = omega = lambda = 1");
    rep.note("the closed-form ground state behaves like r^(-1/2) at the origin, the non-regular Frobenius branch of the m'=1 channel (regular branch r^(3/2)), and its 2D kinetic energy diverges there; the self-adjoint radial operator therefore does not have it as an eigenfunction and the lowest numerical level lies well above the Rayleigh energy");
    rep.finish()
}

fn criterion_08() -> SuiteReport {
    let mut rep = SuiteReport::new("criterion-08-l2-reduction", "Trigonometric example at l = 2 against the oscillator");
    let params = unit_params(1.0);
    let radii = logspace(1e-3, 50.0, 200);
    let outer = logspace(0.5, 50.0, 200);
    let measure = |mq: f64, direct: bool| -> Result<f64> {
        let ex = QesExample1Params::new(2.0, mq, &params)?;
        let v = |r: f64| {
            if direct {
                qes_example1_potential(&ex, &params, r)
            } else {
                qes_example1_potential_via_transform(&ex, &params, r)
            }
        };
        let base = v(1.0)? - 0.5;
        let mut worst: f64 = 0.0;
        // the composed path cancels 1/r² terms, so keep it away from the origin
        for &r in if direct { &radii } else { &outer } {
            worst = worst.max((v(r)? - 0.5 * r * r - base).abs() / (1.0 + 0.5 * r * r));
        }
        Ok(worst)
    };
    let mut confirmed = true;
    for mq in [0.0, 1.0, 2.0, 0.5, -1.0] {
        match (measure(mq, true), measure(mq, true), measure(mq, false)) {
            (Ok(a), Ok(b), Ok(c)) => {
                rep.push(Check::below(format!("m'_Q={mq} reproducibility of the r-variation"), (a - b).abs(), 1e-10));
                rep.push(Check::below(format!("m'_Q={mq} r-variation of V - m omega^2 r^2 / 2"), a, 1e-9).informational());
                rep.push(Check::below(format!("m'_Q={mq} r-variation via the composed construction, r in [0.5, 50]"), c, 1e-9).informational());
                confirmed &= a < 1e-9;
                if let Ok(ex) = QesExample1Params::new(2.0, mq, &params) {
                    if let Ok(v1) = qes_example1_potential(&ex, &params, 1.0) {
                        rep.note(format!("m'_Q={mq}: constant offset {:.12}", v1 - 0.5));
                    }
                }
            }
            (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => rep.error(format!("m'_Q={mq}"), e),
        }
    }
    rep.note(if confirmed {
        "claim confirmed: at l = 2 the potential is m omega^2 r^2 / 2 plus an r-independent constant for every m'_Q tested"
    } else {
        "claim not confirmed: the l = 2 potential differs from the oscillator by an r-dependent amount"
    });
    rep.finish()
}

fn criterion_09() -> SuiteReport {
    let mut rep = SuiteReport::new("criterion-09-flat-limit", "Flat-space limit of the spectrum");
    let params = unit_params(1e-8);
    for n in 0..4u32 {
        for m in 0..4 {
            let e = higgs_energy(QuantumNumbers::new(n, m), &params);
            let flat = params.hbar * params.omega * (2.0 * f64::from(n) + f64::from(m) + 1.0);
            rep.push(Check::below(format!("N={n} m'={m} absolute difference"), (e - flat).abs(), 1e-6));
        }
    }
    rep.finish()
}

fn criterion_10() -> SuiteReport {
    let mut rep = SuiteReport::new("criterion-10-determinism", "Repeated runs give identical reports");
    let runs = [criterion_03 as fn() -> SuiteReport, criterion_04, criterion_06, criterion_08, criterion_09, invariants_numerics];
    for f in runs {
        let a = f();
        let b = f();
        let same = a == b
            && a.checks
                .iter()
                .zip(&b.checks)
                .all(|(x, y)| x.measured.to_bits() == y.measured.to_bits());
        rep.push(Check::below(format!("{}: differing reports", a.id), if same { 0.0 } else { 1.0 }, 0.5));
    }
    rep.note("in-process repetition of the deterministic suites; the command-line acceptance test also compares two full runs byte for byte");
    rep.finish()
}

fn invariants_special_functions() -> SuiteReport {
    let mut rep = SuiteReport::new("invariants-special-functions", "Special function invariants");
    let mut worst_origin: f64 = 0.0;
    for n in 0..20u32 {
        if let Ok(v) = hyp2f1_terminating(n, 1.5 + f64::from(n), 2.5, 0.0) {
            worst_origin = worst_origin.max((v - 1.0).abs());
        }
    }
    rep.push(Check::below("2F1(-N, b; c; 0) - 1", worst_origin, 1e-15));
    let odd = linspace(-30.0, 30.0, 121)
        .iter()
        .map(|&x| (gudermannian(x) + gudermannian(-x)).abs())
        .fold(0.0, f64::max);
    rep.push(Check::below("gd(x) + gd(-x)", odd, 1e-15));
    let mut worst: f64 = 0.0;
    for lam in [0.1, 1.0, 10.0] {
        for r in logspace(1e-3, 1e3, 61) {
            let ups = upsilon_of_r(r, lam).unwrap_or(f64::NAN);
            let theta = theta_of_x(ups.sinh() / lam.sqrt(), lam).unwrap_or(f64::NAN);
            worst = worst.max((theta - ups).abs() / ups);
        }
    }
    rep.push(Check::below("Theta(x(r)) vs Upsilon(r), relative", worst, 1e-12));
    rep.finish()
}

fn invariants_crs() -> SuiteReport {
    let mut rep = SuiteReport::new("invariants-crs", "CRS model invariants");
    for (mq, lam) in [(0.0, 1.0), (1.0, 0.1), (2.0, 10.0), (0.5, 1.0)] {
        let params = unit_params(lam);
        let Ok(spec) = special_params(mq, &params) else { continue };
        rep.push(Check::below(format!("lambda={lam} m'_Q={mq} recovered m'_Q"), (spec.mprime_q() - mq).abs(), 1e-12));
        let gap = spec.beta() - spec.gamma();
        rep.push(Check::below(
            format!("lambda={lam} m'_Q={mq} beta - gamma vs 2 lambda (1 + delta)"),
            rel(gap, 2.0 * lam * (1.0 + spec.delta())),
            1e-13,
        ));
        let (x_fn, x_prime) = x_cos_multiple(2.0, lam);
        let sup = x_supremum(lam);
        let mut worst: f64 = 0.0;
        for x in linspace(0.02 * sup, 0.98 * sup, 60) {
            let g = potential_general(&spec, &x_fn, &x_prime, &params, x).unwrap_or(f64::NAN);
            let s = crs_potential_special(x, mq, &params).unwrap_or(f64::NAN);
            worst = worst.max((g - s).abs() / s.abs().max(1.0));
        }
        rep.push(Check::below(format!("lambda={lam} m'_Q={mq} general vs special potential"), worst, 1e-9));
        let mut gap_err: f64 = 0.0;
        for n in 1..6u32 {
            let d = crs_energy(n, mq, &params).unwrap_or(f64::NAN) - crs_energy(n - 1, mq, &params).unwrap_or(f64::NAN);
            let closed = 2.0 * params.hbar * params.omega_prime()
                + lam * params.kinetic_scale() * (8.0 * f64::from(n) + 4.0 * mq.abs());
            gap_err = gap_err.max(rel(d, closed));
        }
        rep.push(Check::below(format!("lambda={lam} m'_Q={mq} level spacing"), gap_err, 1e-12));
    }
    rep.finish()
}

fn invariants_higgs() -> SuiteReport {
    let mut rep = SuiteReport::new("invariants-higgs", "Higgs model invariants");
    let params = unit_params(1.0);
    let radii = linspace(1e-3, 30.0, 4000);
    for n in 0..4u32 {
        for m in -2..=2 {
            let qn = QuantumNumbers::new(n, m);
            let values: Vec<f64> = radii.iter().map(|&r| higgs_wavefunction(qn, &params, r).unwrap_or(f64::NAN)).collect();
            let nodes = values.windows(2).filter(|w| w[0] * w[1] < 0.0).count();
            rep.push(Check::below(format!("N={n} m'={m} node count minus N"), (nodes as f64 - f64::from(n)).abs(), 0.5));
            let mirrored = radii
                .iter()
                .zip(&values)
                .map(|(&r, &v)| (v - higgs_wavefunction(QuantumNumbers::new(n, -m), &params, r).unwrap_or(f64::NAN)).abs())
                .fold(0.0, f64::max);
            rep.push(Check::below(format!("N={n} m'={m} parity in m'"), mirrored, 1e-300));
        }
    }
    for (l, mq, lam) in [(3.0, 1.0, 1.0), (1.0, 0.0, 1.0), (2.5, 0.5, 3.0)] {
        let p = unit_params(lam);
        let Ok(ex) = QesExample1Params::new(l, mq, &p) else { continue };
        let end = ex.branch_end(lam).min(10.0);
        let worst = linspace(0.02 * end, 0.98 * end, 50)
            .iter()
            .map(|&r| {
                let a = qes_example1_potential(&ex, &p, r).unwrap_or(f64::NAN);
                let b = qes_example1_potential_via_transform(&ex, &p, r).unwrap_or(f64::NAN);
                (a - b).abs() / a.abs().max(1.0)
            })
            .fold(0.0, f64::max);
        rep.push(Check::below(format!("example 1 l={l} m'_Q={mq} lambda={lam}: direct vs composed"), worst, 1e-9));
    }
    for (mq, lam) in [(0.0, 1.0), (1.0, 1.0), (2.0, 0.2)] {
        let p = unit_params(lam);
        let worst = logspace(0.01, 100.0, 60)
            .iter()
            .map(|&r| {
                let a = qes_example2_potential(mq, &p, r).unwrap_or(f64::NAN);
                let b = qes_example2_potential_via_transform(mq, &p, r).unwrap_or(f64::NAN);
                (a - b).abs() / a.abs().max(1.0)
            })
            .fold(0.0, f64::max);
        rep.push(Check::below(format!("example 2 m'_Q={mq} lambda={lam}: direct vs composed"), worst, 1e-9));
    }
    rep.finish()
}

fn invariants_transform() -> SuiteReport {
    let mut rep = SuiteReport::new("invariants-transform", "Transformation invariants");
    for lam in [0.1, 1.0, 10.0] {
        let Ok(ctx) = MapContext::new(unit_params(lam), 0.0) else { continue };
        let mut worst: f64 = 0.0;
        let mut increasing = true;
        let mut prev = -1.0;
        for r in logspace(1e-3, 1e2, 100) {
            let x = x_of_r(&ctx, r).unwrap_or(f64::NAN);
            increasing &= x > prev && x < ctx.x_supremum();
            prev = x;
            worst = worst.max(rel(r_of_x(&ctx, x).unwrap_or(f64::NAN), r));
        }
        rep.push(Check::below(format!("lambda={lam} round trip r(x(r)), relative"), worst, 1e-12));
        rep.push(Check::below(format!("lambda={lam} x(r) increasing and bounded (violations)"), if increasing { 0.0 } else { 1.0 }, 0.5));
    }
    let mut mismatches = 0.0;
    for lam in [0.1, 1.0, 7.5] {
        let p = unit_params(lam);
        for n in 0..5u32 {
            for m in -3..=3 {
                let a = crs_energy(n, f64::from(m), &p).map(f64::to_bits).unwrap_or(0);
                let b = higgs_energy(QuantumNumbers::new(n, m), &p).to_bits();
                if a != b {
                    mismatches += 1.0;
                }
            }
        }
    }
    rep.push(Check::below("CRS and Higgs spectra, bitwise mismatches", mismatches, 0.5));
    for lam in [0.1, 1.0, 10.0] {
        for mq in [-1.0, -2.0] {
            let Ok(ctx) = MapContext::new(unit_params(lam), mq) else { continue };
            let p = *ctx.params();
            let worst = logspace(0.5, 50.0, 100)
                .iter()
                .map(|&r| rel(map_potential(&ctx, |x| crs_potential_special(x, mq, &p), r).unwrap_or(f64::NAN), 0.5 * r * r))
                .fold(0.0, f64::max);
            rep.push(Check::below(format!("lambda={lam} m'_Q={mq} closure"), worst, 1e-12));
        }
    }
    rep.finish()
}

fn invariants_numerics() -> SuiteReport {
    let mut rep = SuiteReport::new("invariants-numerics", "Finite-difference oracle invariants");
    let params = unit_params(1.0);
    let v = oscillator_potential(&params);
    let levels: Vec<Result<EigenResult>> = [1000usize, 2000, 4000]
        .par_iter()
        .map(|&n| higgs_channel_problem(0, &params, v.clone(), n).and_then(|(p, _)| lowest_eigenvalues(&p, 3)))
        .collect();
    match (&levels[0], &levels[1], &levels[2]) {
        (Ok(a), Ok(b), Ok(c)) => {
            for j in 0..3 {
                let order = observed_order(a.eigenvalues[j], b.eigenvalues[j], c.eigenvalues[j]);
                rep.push(Check::below(format!("m'=0 level {j}: |observed order - 2|"), (order - 2.0).abs(), 0.2));
                rep.push(Check::below(format!("m'=0 level {j}: node count minus index"), (c.node_count(j) as f64 - j as f64).abs(), 0.5));
            }
        }
        _ => rep.push(Check::below("convergence study", f64::NAN, 0.0)),
    }
    // −ψ″ + x²ψ = Eψ on [−10, 10]: levels 2k+1
    let flat = crate::numerics::SlForm::new(|_| 1.0, |_| 0.0, |x| x * x, |_| 1.0);
    match interval_problem(flat, -10.0, 10.0, EndKind::Dirichlet, EndKind::Dirichlet, 2000)
        .and_then(|(p, _)| lowest_eigenvalues(&p, 1))
    {
        Ok(r) => rep.push(Check::below("flat oscillator ground level minus 1", (r.eigenvalues[0] - 1.0).abs(), 1e-5)),
        Err(e) => rep.error("flat oscillator", e),
    }
    let scale = radial_scale(&params);
    rep.push(Check::below("radial length scale vs 1/sqrt(lambda)", (scale - 1.0).abs(), 1e-15));
    let form = higgs_form(1, &params, Arc::new(|_| 0.0));
    let ch = RadialChannel::new(1, params);
    let mut worst: f64 = 0.0;
    for r in [0.1, 0.5, 2.0, 8.0] {
        let d = crate::numerics::derivatives(|s: f64| (0.4 * s).cos() + s, r);
        let (p2, p1, p0) = higgs_radial_coefficients(&ch, r).unwrap_or((f64::NAN, f64::NAN, f64::NAN));
        let raw = p2 * d.second + p1 * d.first + p0 * d.value;
        let sl = ((form.q)(r) * d.value - (form.p)(r) * d.second - (form.dp)(r) * d.first) / (form.w)(r);
        worst = worst.max((raw - sl).abs() / raw.abs().max(1.0));
    }
    rep.push(Check::below("Sturm-Liouville form reproduces the radial coefficients", worst, 1e-10));
    rep.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_ids_unique_and_ordered() {
        let ids = suite_ids();
        let mut sorted = ids.clone();
        sorted.dedup();
        assert_eq!(ids.len(), sorted.len());
        assert!(ids[0].starts_with("criterion-01"));
    }

    #[test]
    fn check_bounds() {
        assert!(Check::below("x", 1.0, 2.0).passed);
        assert!(!Check::below("x", f64::NAN, 2.0).passed);
        assert!(Check::above("x", 3.0, 2.0).passed);
        let mut r = SuiteReport::new("t", "t");
        r.push(Check::below("x", 5.0, 1.0).informational());
        assert!(r.finish().passed);
    }

    #[test]
    fn fast_suites_pass() {
        for rep in run_suites(&["criterion-04-transform-closure", "criterion-09-flat-limit", "invariants-special-functions"]) {
            assert!(rep.passed, "{rep:#?}");
        }
    }
}
