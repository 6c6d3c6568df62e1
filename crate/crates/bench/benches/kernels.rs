use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use genquat::conformance::{run_suite, SuiteConfig};
use genquat_bench::{inputs, signatures};

const N: usize = 256;

fn algebra(c: &mut Criterion) {
    let mut group = c.benchmark_group("algebra");
    for (name, sig) in signatures() {
        let (qs, _) = inputs(&sig, N);
        group.bench_with_input(BenchmarkId::new("multiply", name), &qs, |b, qs| {
            b.iter(|| qs.windows(2).map(|w| sig.multiply(&w[0], &w[1])).fold(0.0, |acc, p| acc + p.w))
        });
        group.bench_with_input(BenchmarkId::new("multiply_via_matrix", name), &qs, |b, qs| {
            b.iter(|| qs.windows(2).map(|w| sig.multiply_via_matrix(&w[0], &w[1])).fold(0.0, |acc, p| acc + p.w))
        });
        group.bench_with_input(BenchmarkId::new("inverse", name), &qs, |b, qs| {
            b.iter(|| qs.iter().map(|q| sig.inverse(q).unwrap().w).sum::<f64>())
        });
    }
    group.finish();
}

fn rotation(c: &mut Criterion) {
    let mut group = c.benchmark_group("rotation");
    for (name, sig) in signatures() {
        let (qs, vs) = inputs(&sig, N);
        group.bench_with_input(BenchmarkId::new("rotation_matrix", name), &qs, |b, qs| {
            b.iter(|| qs.iter().map(|q| sig.rotation_matrix(q).unwrap()[(0, 0)]).sum::<f64>())
        });
        group.bench_with_input(BenchmarkId::new("conjugation_map", name), &(&qs, &vs), |b, (qs, vs)| {
            b.iter(|| qs.iter().zip(vs.iter()).map(|(q, v)| sig.conjugation_map(q, v).unwrap()[0]).sum::<f64>())
        });
        group.bench_with_input(BenchmarkId::new("polar_round_trip", name), &qs, |b, qs| {
            b.iter(|| {
                qs.iter()
                    .filter_map(|q| sig.polar_form(q).ok())
                    .map(|pf| sig.from_axis_angle(&pf).unwrap().w)
                    .sum::<f64>()
            })
        });
    }
    group.finish();
}

fn suite(c: &mut Criterion) {
    let mut group = c.benchmark_group("suite");
    group.sample_size(10);
    group.bench_function("seed42_cases50", |b| b.iter(|| run_suite(black_box(&SuiteConfig::new(42, 50))).verdict));
    group.finish();
}

criterion_group!(benches, algebra, rotation, suite);
criterion_main!(benches);
