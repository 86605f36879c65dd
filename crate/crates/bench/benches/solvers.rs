use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use higgs_crs::crs::crs_potential_special;
use higgs_crs::higgs::{higgs_wavefunction, qes_example1_potential, QesExample1Params};
use higgs_crs::numerics::{higgs_channel_problem, lowest_eigenvalues, oscillator_potential, solve_refined};
use higgs_crs::special_functions::hyp2f1_terminating;
use higgs_crs::transform::{map_potential, MapContext};
use higgs_crs::{PhysParams, QuantumNumbers};

fn special_functions(c: &mut Criterion) {
    let mut g = c.benchmark_group("hyp2f1");
    for n in [2u32, 8, 32] {
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| hyp2f1_terminating(black_box(n), 4.5 + f64::from(n), 2.0, black_box(0.7)))
        });
    }
    g.finish();
}

fn pointwise(c: &mut Criterion) {
    let p = PhysParams::natural(1.0, 1.0).unwrap();
    let ctx = MapContext::new(p, 1.0).unwrap();
    let ex = QesExample1Params::new(3.0, 1.0, &p).unwrap();
    c.bench_function("higgs_wavefunction N=4", |b| {
        b.iter(|| higgs_wavefunction(QuantumNumbers::new(4, 1), &p, black_box(1.3)))
    });
    c.bench_function("map_potential", |b| {
        b.iter(|| map_potential(&ctx, |x| crs_potential_special(x, 1.0, &p), black_box(2.0)))
    });
    c.bench_function("qes_example1_potential", |b| b.iter(|| qes_example1_potential(&ex, &p, black_box(0.8))));
}

fn eigen(c: &mut Criterion) {
    let p = PhysParams::natural(1.0, 1.0).unwrap();
    let v = oscillator_potential(&p);
    let mut g = c.benchmark_group("lowest_eigenvalues");
    g.sample_size(20);
    for n in [500usize, 2000, 8000] {
        let (problem, _) = higgs_channel_problem(1, &p, v.clone(), n).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(n), &problem, |b, problem| {
            b.iter(|| lowest_eigenvalues(problem, 3))
        });
    }
    g.finish();
    let v = Arc::clone(&v);
    c.bench_function("solve_refined n=2000 k=3", |b| {
        b.iter(|| solve_refined(|n| higgs_channel_problem(0, &p, v.clone(), n).map(|x| x.0), 2000, 3))
    });
}

criterion_group!(benches, special_functions, pointwise, eigen);
criterion_main!(benches);
