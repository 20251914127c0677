use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use lctlab::arcs::count_contact_jets;
use lctlab::budget::DEFAULT_BUDGET;
use lctlab::expsum::residue_histogram;
use lctlab::jacobian::IdealGens;
use lctlab::lct::check_diagonal_grid;
use lctlab::{parse_poly, Execution};

fn modes() -> Vec<(&'static str, Execution)> {
    let mut v = vec![("seq", Execution::Sequential)];
    if Execution::default().is_parallel() {
        v.push(("par", Execution::default()));
    }
    v
}

fn histogram(c: &mut Criterion) {
    let f = parse_poly("x^3 + y^3 + z^3", 3).unwrap();
    let mut group = c.benchmark_group("residue_histogram x^3+y^3+z^3 p=7 m=2");
    group.sample_size(10);
    for (name, exec) in modes() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| residue_histogram(black_box(&f), 7, 2, DEFAULT_BUDGET, exec).unwrap())
        });
    }
    group.finish();
}

fn jets(c: &mut Criterion) {
    let det = IdealGens::new(vec![parse_poly("x1*x4 - x2*x3", 4).unwrap()]).unwrap();
    let mut group = c.benchmark_group("contact jets det2 p=3 m=2 e=2");
    group.sample_size(10);
    for (name, exec) in modes() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| count_contact_jets(black_box(&det), 3, 2, 2, DEFAULT_BUDGET, exec).unwrap())
        });
    }
    group.finish();
}

fn grid(c: &mut Criterion) {
    let mut group = c.benchmark_group("diagonal grid 8x8");
    group.sample_size(10);
    for (name, exec) in modes() {
        group
            .bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| check_diagonal_grid(8, 8, exec).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, histogram, jets, grid);
criterion_main!(benches);
