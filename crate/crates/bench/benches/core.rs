use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use qcube_bench::fixture;
use qcube_core::{binom, distribution, isometric, main_rhs, random_isometry_image, Limits};

fn binomials(c: &mut Criterion) {
    c.bench_function("binom(60, 30)", |b| b.iter(|| binom(black_box(60), black_box(30))));
    c.bench_function("binom(1000, 400)", |b| b.iter(|| binom(black_box(1000), black_box(400))));
}

fn face_scan(c: &mut Criterion) {
    let mut group = c.benchmark_group("distribution");
    for (q, n) in [(2, 10), (3, 7), (4, 6)] {
        let a = fixture(q, n, 12);
        group.bench_with_input(BenchmarkId::from_parameter(format!("q{q}_n{n}_k2")), &a, |b, a| {
            b.iter(|| distribution(a, 2, &Limits::default()).unwrap())
        });
    }
    group.finish();
}

fn subset_sum(c: &mut Criterion) {
    let mut group = c.benchmark_group("main_rhs");
    let a = fixture(2, 16, 20);
    for s in [2, 3, 4] {
        group.bench_with_input(BenchmarkId::from_parameter(s), &s, |b, &s| {
            b.iter(|| main_rhs(&a, 8, s, &Limits::default()).unwrap())
        });
    }
    group.finish();
}

fn isometry_search(c: &mut Criterion) {
    let a = fixture(3, 8, 12);
    let b = random_isometry_image(&a, 5).unwrap();
    c.bench_function("isometric q3_n8_m12", |bench| bench.iter(|| isometric(black_box(&a), black_box(&b))));
}

criterion_group!(benches, binomials, face_scan, subset_sum, isometry_search);
criterion_main!(benches);
