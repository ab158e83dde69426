use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use genflag_core::random::{self, trial_rng};
use genflag_core::verify::Suite;
use genflag_core::{act, Scenario};

fn linear_algebra(c: &mut Criterion) {
    let mut group = c.benchmark_group("rref");
    for n in [4usize, 8, 12, 16] {
        let m = random::invertible_matrix(&mut trial_rng(1, n as u64), n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| b.iter(|| black_box(m.rref())));
    }
    group.finish();
}

fn operators(c: &mut Criterion) {
    let schema = Scenario::Sato.schema();
    let mut rng = trial_rng(2, 0);
    let f = random::operator(&mut rng, &schema, 12, 3);
    let g = random::operator(&mut rng, &schema, 12, 3);
    c.bench_function("compose/12", |b| b.iter(|| black_box(f.compose(&g).unwrap())));
    c.bench_function("degree/sato/12", |b| b.iter(|| black_box(f.degree().unwrap())));

    let all = Scenario::Ex2_3.schema();
    let h = random::operator(&mut trial_rng(3, 0), &all, 12, 3);
    c.bench_function("degree/every-position/12", |b| b.iter(|| black_box(h.degree().unwrap())));
}

fn actions(c: &mut Criterion) {
    let mut group = c.benchmark_group("act");
    for s in [Scenario::Sato, Scenario::Ex2_3, Scenario::Ex2_5] {
        let schema = s.schema();
        let mut rng = trial_rng(4, 0);
        let f = random::eventually_identity(&mut rng, &schema, 8);
        let p = random::point(&mut rng, &schema, 8, None);
        group.bench_function(s.name(), |b| b.iter(|| black_box(act(&f, &p).unwrap())));
    }
    group.finish();
}

fn suites(c: &mut Criterion) {
    let mut group = c.benchmark_group("suite");
    group.sample_size(10);
    group.bench_function("degree-additivity/100", |b| b.iter(|| black_box(Suite::DegreeAdditivity.run(7, Some(100)))));
    group.finish();
}

criterion_group!(benches, linear_algebra, operators, actions, suites);
criterion_main!(benches);
