use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use doublewell::example::worked_example_spec;
use doublewell::isolated::solve_y;
use doublewell::oracle::find_levels;
use doublewell::params::reduce;
use doublewell::perturb::{perturbed_levels, symmetric_base};
use doublewell::{Parity, TunnelingModel, WavefunctionModel, WellPair};
use doublewell_bench::barrier_family;

fn isolated(c: &mut Criterion) {
    let reduced = reduce(&worked_example_spec()).unwrap();
    c.bench_function("solve_y", |b| {
        b.iter(|| {
            solve_y(
                black_box(reduced.alpha_m1),
                black_box(reduced.alpha_m3),
                1e-13,
                50,
            )
        })
    });
    c.bench_function("well_pair", |b| {
        b.iter(|| WellPair::solve(black_box(&reduced)))
    });
}

fn tunneling(c: &mut Criterion) {
    let mut group = c.benchmark_group("tunneling_model");
    for factor in [2.0, 5.0, 20.0] {
        let spec = barrier_family(factor);
        group.bench_with_input(BenchmarkId::from_parameter(factor), &spec, |b, spec| {
            b.iter(|| TunnelingModel::solve(black_box(spec)))
        });
    }
    group.finish();

    let base = symmetric_base(&worked_example_spec()).unwrap();
    c.bench_function("perturbed_levels", |b| {
        b.iter(|| perturbed_levels(black_box(&base), black_box(base.delta_e)))
    });
}

fn wavefunction(c: &mut Criterion) {
    let spec = worked_example_spec();
    let model = TunnelingModel::solve(&spec).unwrap();
    c.bench_function("assemble_ground", |b| {
        b.iter(|| WavefunctionModel::assemble(&spec, &model.reduced, black_box(&model.ground)))
    });
    let wave = WavefunctionModel::assemble(&spec, &model.reduced, model.solution(Parity::Excited))
        .unwrap();
    c.bench_function("sample_1001", |b| {
        b.iter(|| wave.sample(-5.0, 19.66, black_box(1001)))
    });
}

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("find_levels");
    group.sample_size(10);
    for factor in [2.0, 5.0] {
        let spec = barrier_family(factor);
        group.bench_with_input(BenchmarkId::from_parameter(factor), &spec, |b, spec| {
            b.iter(|| find_levels(black_box(spec), 1e-13))
        });
    }
    group.finish();
}

criterion_group!(benches, isolated, tunneling, wavefunction, oracle);
criterion_main!(benches);
