use std::sync::Arc;

use anyhow::{bail, ensure, Context, Result};
use log::{debug, info, warn};
use num_complex::Complex64;
use rayon::prelude::*;

use higgs_crs::crs::{crs_energy, crs_potential_special, crs_wavefunction_special, ArgumentConvention};
use higgs_crs::higgs::{
    higgs_energy, higgs_wavefunction, qes_example1_groundstate, qes_example1_potential,
    qes_example2_groundstate, qes_example2_potential, qes_example2_spec, Example1Form, QesExample1Params,
};
use higgs_crs::numerics::{
    crs_form, half_line_problem, higgs_channel_problem, higgs_form, interval_problem, oscillator_potential, radial_scale,
    solve_refined, EndKind, RefinedSpectrum, ScalarFn,
};
use higgs_crs::transform::{map_potential, x_supremum, MapContext};
use higgs_crs::verify::{run_suites, suite_ids, Bound};
use higgs_crs::{PhysParams, QuantumNumbers};

use crate::args::{Cli, Command, Convention, GroundForm, Model, PhysicsArgs, SampleArgs};
use crate::output::{Cell, Document, SuiteSummary};

/// What a run produced and whether its checks passed.
pub struct Outcome {
    pub document: Document,
    pub passed: bool,
}

impl Outcome {
    fn ok(document: Document) -> Self {
        Self { document, passed: true }
    }
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let phys = &cli.physics;
    if let Command::Verify { suite, list } = &cli.command {
        return verify(suite, *list);
    }
    let params = PhysParams::new(phys.mass, phys.hbar, phys.omega, phys.lambda).context("invalid physical parameters")?;
    let transform = matches!(cli.command, Command::TransformCheck { .. });
    validate_model_args(phys, transform)?;
    let mut doc = match &cli.command {
        Command::Spectrum { n_max, mprime_max, grid_n } => spectrum(phys, &params, *n_max, *mprime_max, *grid_n)?,
        Command::Potential { sample } => potential(phys, &params, sample)?,
        Command::Wavefunction {
            n,
            mprime,
            convention,
            ground_form,
            sample,
        } => wavefunction(phys, &params, *n, *mprime, *convention, *ground_form, sample)?,
        Command::TransformCheck { from, to, points } => transform_check(phys, &params, *from, *to, *points)?,
        Command::Verify { .. } => unreachable!(),
    };
    doc.model = Some(phys.model.name().to_string());
    doc.parameters = parameter_list(phys, transform);
    Ok(Outcome::ok(doc))
}

fn parameter_list(phys: &PhysicsArgs, transform: bool) -> Vec<(String, Cell)> {
    let mut out = vec![
        ("mass".to_string(), Cell::from(phys.mass)),
        ("hbar".to_string(), Cell::from(phys.hbar)),
        ("omega".to_string(), Cell::from(phys.omega)),
        ("lambda".to_string(), Cell::from(phys.lambda)),
    ];
    if phys.model != Model::Higgs || transform {
        out.push(("mprime_q".to_string(), Cell::from(mprime_q(phys))));
    }
    if let Some(l) = phys.l {
        out.push(("l".to_string(), Cell::from(l)));
    }
    out
}

fn mprime_q(phys: &PhysicsArgs) -> f64 {
    phys.mprime_q.unwrap_or(0.0)
}

/// `transform` marks commands that always need m'_Q whatever the model.
fn validate_model_args(phys: &PhysicsArgs, transform: bool) -> Result<()> {
    match phys.model {
        Model::Qes1 => ensure!(phys.l.is_some(), "--l is required for --model qes1"),
        _ => ensure!(phys.l.is_none(), "--l only applies to --model qes1"),
    }
    if phys.model == Model::Higgs && phys.mprime_q.is_some() && !transform {
        bail!("--mprime-q does not apply to --model higgs");
    }
    if let Some(q) = phys.mprime_q {
        ensure!(q.is_finite(), "--mprime-q must be finite");
    }
    if phys.model != Model::Higgs || transform {
        ensure!(phys.lambda > 0.0, "the CRS side of the map needs a positive --lambda");
    }
    Ok(())
}

/// The QES channel m' = m'_Q as an integer.
fn qes_channel(phys: &PhysicsArgs) -> Result<i32> {
    let q = phys
        .mprime_q
        .with_context(|| format!("--mprime-q is required for spectrum with --model {}", phys.model.name()))?;
    ensure!(
        q.fract() == 0.0 && q.abs() < 1e6,
        "--mprime-q must be an integer to name an angular channel, got {q}"
    );
    Ok(q as i32)
}

fn qes_potential(phys: &PhysicsArgs, params: &PhysParams) -> Result<ScalarFn> {
    let params = *params;
    let q = mprime_q(phys);
    Ok(match phys.model {
        Model::Qes1 => {
            let ex = QesExample1Params::new(phys.l.unwrap_or_default(), q, &params)?;
            Arc::new(move |r| qes_example1_potential(&ex, &params, r).unwrap_or(f64::NAN))
        }
        Model::Qes2 => {
            qes_example2_spec(q, &params)?;
            Arc::new(move |r| qes_example2_potential(q, &params, r).unwrap_or(f64::NAN))
        }
        _ => unreachable!(),
    })
}

fn spectrum_row(doc: &mut Document, n: usize, m: i64, analytic: Option<f64>, numeric: f64) {
    let err = analytic.map(|a| (numeric - a).abs() / a.abs());
    doc.push_row(vec![
        Cell::Int(n as i64),
        Cell::Int(m),
        Cell::from(analytic),
        Cell::from(numeric),
        Cell::from(err),
    ]);
}

fn spectrum(phys: &PhysicsArgs, params: &PhysParams, n_max: u32, mprime_max: u32, grid_n: usize) -> Result<Document> {
    let mut doc = Document::new(
        "spectrum",
        &["N", "mprime", "energy_analytic", "energy_numeric", "relative_error"],
    );
    let k = n_max as usize + 1;
    info!("solving on grids of {grid_n} and {} cells", 2 * grid_n);
    match phys.model {
        Model::Higgs | Model::Crs => {
            let channels: Vec<u32> = (0..=mprime_max).collect();
            let solved: Vec<higgs_crs::Result<RefinedSpectrum>> = channels
                .par_iter()
                .map(|&m| {
                    let built = match phys.model {
                        Model::Higgs => {
                            let v = oscillator_potential(params);
                            solve_refined(|n| higgs_channel_problem(m as i32, params, v.clone(), n).map(|x| x.0), grid_n, k)
                        }
                        _ => {
                            let p = *params;
                            let q = f64::from(m);
                            let v: ScalarFn = Arc::new(move |x| crs_potential_special(x, q, &p).unwrap_or(f64::NAN));
                            let sup = x_supremum(p.lambda);
                            let ends = EndKind::Regular { alpha: 0.0 };
                            solve_refined(
                                |n| interval_problem(crs_form(&p, v.clone()), 0.0, sup, ends, ends, n).map(|x| x.0),
                                grid_n,
                                k,
                            )
                        }
                    };
                    built.map(|x| x.0)
                })
                .collect();
            for (m, spec) in channels.into_iter().zip(solved) {
                let spec = spec.with_context(|| format!("numerical solve failed in channel {m}"))?;
                for (n, e) in spec.extrapolated.iter().enumerate() {
                    let exact = match phys.model {
                        Model::Higgs => higgs_energy(QuantumNumbers::new(n as u32, m as i32), params),
                        _ => crs_energy(n as u32, f64::from(m), params)?,
                    };
                    spectrum_row(&mut doc, n, i64::from(m), Some(exact), *e);
                }
            }
        }
        Model::Qes1 | Model::Qes2 => {
            let m = qes_channel(phys)?;
            debug!("quasi-exactly solvable channel m' = {m}; --mprime-max is ignored");
            let v = qes_potential(phys, params)?;
            let end = match phys.model {
                Model::Qes1 => QesExample1Params::new(phys.l.unwrap_or_default(), f64::from(m), params)?.branch_end(params.lambda),
                _ => f64::INFINITY,
            };
            let (spec, _) = if end.is_finite() {
                let build = |n| {
                    interval_problem(
                        higgs_form(m, params, v.clone()),
                        0.0,
                        end,
                        EndKind::Regular { alpha: 1.0 },
                        EndKind::Regular { alpha: 0.0 },
                        n,
                    )
                };
                if build(grid_n)?.1.falls_to_centre() {
                    warn!("channel {m} falls to the centre; its levels depend on the grid");
                }
                solve_refined(|n| build(n).map(|x| x.0), grid_n, k)?
            } else {
                let build = |n| half_line_problem(higgs_form(m, params, v.clone()), 0.0, 1.0, radial_scale(params), n);
                if build(grid_n)?.1.falls_to_centre() {
                    warn!("channel {m} falls to the centre; its levels depend on the grid");
                }
                solve_refined(|n| build(n).map(|x| x.0), grid_n, k)?
            };
            // only the ground level of the solvable channel has a closed form
            let e0 = higgs_energy(QuantumNumbers::new(0, m), params);
            for (n, e) in spec.extrapolated.iter().enumerate() {
                spectrum_row(&mut doc, n, i64::from(m), (n == 0).then_some(e0), *e);
            }
        }
    }
    Ok(doc)
}

fn sample_points(sample: &SampleArgs, default_from: f64, default_to: f64) -> Result<Vec<f64>> {
    let a = sample.from.unwrap_or(default_from);
    let b = sample.to.unwrap_or(default_to);
    ensure!(a.is_finite() && b.is_finite() && a < b, "sample range must satisfy from < to, got [{a}, {b}]");
    ensure!(sample.points >= 2, "--points must be at least 2");
    let n = sample.points;
    Ok((0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect())
}

fn coordinate_name(model: Model) -> &'static str {
    if model == Model::Crs {
        "x"
    } else {
        "r"
    }
}

fn default_range(model: Model, params: &PhysParams) -> (f64, f64) {
    match model {
        Model::Crs => (0.05, 0.95 * x_supremum(params.lambda)),
        _ => (0.05, 5.0),
    }
}

fn finite_or_warn(value: higgs_crs::Result<f64>, at: f64) -> f64 {
    value.unwrap_or_else(|e| {
        warn!("no value at {at}: {e}");
        f64::NAN
    })
}

fn potential(phys: &PhysicsArgs, params: &PhysParams, sample: &SampleArgs) -> Result<Document> {
    let (a, b) = default_range(phys.model, params);
    let points = sample_points(sample, a, b)?;
    let mut doc = Document::new("potential", &[coordinate_name(phys.model), "V"]);
    let q = mprime_q(phys);
    let ex1 = match phys.model {
        Model::Qes1 => Some(QesExample1Params::new(phys.l.unwrap_or_default(), q, params)?),
        _ => None,
    };
    if phys.model == Model::Qes2 {
        qes_example2_spec(q, params)?;
    }
    for s in points {
        let v = match phys.model {
            Model::Higgs => 0.5 * params.mass * params.omega * params.omega * s * s,
            Model::Crs => finite_or_warn(crs_potential_special(s, q, params), s),
            Model::Qes1 => finite_or_warn(qes_example1_potential(ex1.as_ref().unwrap(), params, s), s),
            Model::Qes2 => finite_or_warn(qes_example2_potential(q, params, s), s),
        };
        doc.push_row(vec![Cell::from(s), Cell::from(v)]);
    }
    Ok(doc)
}

#[allow(clippy::too_many_arguments)]
fn wavefunction(
    phys: &PhysicsArgs,
    params: &PhysParams,
    n: u32,
    mprime: i32,
    convention: Convention,
    ground_form: GroundForm,
    sample: &SampleArgs,
) -> Result<Document> {
    let (a, b) = default_range(phys.model, params);
    let points = sample_points(sample, a, b)?;
    if matches!(phys.model, Model::Qes1 | Model::Qes2) {
        ensure!(n == 0, "only the ground state (--n 0) of --model {} has a closed form", phys.model.name());
    }
    let q = mprime_q(phys);
    let conv = match convention {
        Convention::Squared => ArgumentConvention::Squared,
        Convention::AsPrinted => ArgumentConvention::AsPrinted,
    };
    let form = match ground_form {
        GroundForm::Factorized => Example1Form::Factorized,
        GroundForm::AsPrinted => Example1Form::AsPrinted,
    };
    let ex1 = match phys.model {
        Model::Qes1 => Some(QesExample1Params::new(phys.l.unwrap_or_default(), q, params)?),
        _ => None,
    };
    let ex2 = match phys.model {
        Model::Qes2 => Some(qes_example2_spec(q, params)?),
        _ => None,
    };
    let mut doc = Document::new("wavefunction", &[coordinate_name(phys.model), "value_real", "value_imag"]);
    for s in points {
        let value: Complex64 = match phys.model {
            Model::Higgs => finite_or_warn(higgs_wavefunction(QuantumNumbers::new(n, mprime), params, s), s).into(),
            Model::Crs => crs_wavefunction_special(n, q, params, s, conv).unwrap_or_else(|e| {
                warn!("no value at {s}: {e}");
                Complex64::new(f64::NAN, f64::NAN)
            }),
            Model::Qes1 => finite_or_warn(qes_example1_groundstate(ex1.as_ref().unwrap(), params, s, form), s).into(),
            Model::Qes2 => finite_or_warn(qes_example2_groundstate(ex2.as_ref().unwrap(), params, s), s).into(),
        };
        doc.push_row(vec![Cell::from(s), Cell::from(value.re), Cell::from(value.im)]);
    }
    Ok(doc)
}

fn transform_check(phys: &PhysicsArgs, params: &PhysParams, from: f64, to: f64, points: usize) -> Result<Document> {
    ensure!(from > 0.0 && from < to && to.is_finite(), "radii must satisfy 0 < from < to");
    ensure!(points >= 2, "--points must be at least 2");
    if phys.model != Model::Crs {
        debug!("transform-check always maps the special CRS potential");
    }
    let q = mprime_q(phys);
    let ctx = MapContext::new(*params, q)?;
    let mut doc = Document::new("transform-check", &["r", "mapped_V", "oscillator_V", "difference"]);
    let (la, lb) = (from.ln(), to.ln());
    for i in 0..points {
        let r = (la + (lb - la) * i as f64 / (points - 1) as f64).exp();
        let mapped = finite_or_warn(map_potential(&ctx, |x| crs_potential_special(x, q, params), r), r);
        let osc = 0.5 * params.mass * params.omega * params.omega * r * r;
        doc.push_row(vec![Cell::from(r), Cell::from(mapped), Cell::from(osc), Cell::from(mapped - osc)]);
    }
    Ok(doc)
}

fn verify(requested: &[String], list: bool) -> Result<Outcome> {
    let known = suite_ids();
    if list {
        let mut doc = Document::new("verify", &["suite"]);
        for id in known {
            doc.push_row(vec![Cell::from(id)]);
        }
        return Ok(Outcome::ok(doc));
    }
    let mut ids: Vec<&str> = Vec::new();
    for s in requested.iter().flat_map(|s| s.split(',')) {
        let s = s.trim();
        if s == "all" {
            ids.clear();
            ids.extend(known.iter().copied());
            continue;
        }
        let id = known
            .iter()
            .find(|k| **k == s)
            .with_context(|| format!("unknown suite `{s}`; use --list to see the available ones"))?;
        if !ids.contains(id) {
            ids.push(id);
        }
    }
    info!("running {} suites", ids.len());
    let reports = run_suites(&ids);
    let mut doc = Document::new(
        "verify",
        &["suite", "check", "measured", "tolerance", "bound", "enforced", "passed"],
    );
    let mut summaries = Vec::new();
    for rep in &reports {
        if !rep.passed {
            warn!("suite {} failed", rep.id);
        }
        for c in &rep.checks {
            doc.push_row(vec![
                Cell::from(rep.id.as_str()),
                Cell::from(c.label.as_str()),
                Cell::from(c.measured),
                Cell::from(c.tolerance),
                Cell::from(match c.bound {
                    Bound::Below => "below",
                    Bound::Above => "above",
                }),
                Cell::from(c.enforced),
                Cell::from(c.passed),
            ]);
        }
        summaries.push(SuiteSummary {
            id: rep.id.clone(),
            title: rep.title.clone(),
            passed: rep.passed,
            notes: rep.notes.clone(),
        });
    }
    let passed = reports.iter().all(|r| r.passed);
    doc.passed = Some(passed);
    doc.suites = Some(summaries);
    Ok(Outcome { document: doc, passed })
}
