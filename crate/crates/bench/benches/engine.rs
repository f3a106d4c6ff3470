use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use polygcd::{euclid_gcd, run, sylvester_resultant, Normalization, RationalField, RunConfig};
use polygcd_bench::{dense, quartic, rational_pair, trinomial, COPRIME, PLANTED};

fn worked_pairs(c: &mut Criterion) {
    let dom = RationalField;
    let mut group = c.benchmark_group("worked-pairs");
    for (name, pair) in [("coprime", COPRIME), ("planted", PLANTED)] {
        let (p, q) = rational_pair(pair);
        for (label, strategy) in [
            ("none", Normalization::None),
            ("max", Normalization::MaxAbs),
            ("primitive", Normalization::Primitive),
        ] {
            let config = RunConfig::new(strategy);
            group.bench_function(BenchmarkId::new(name, label), |b| {
                b.iter(|| run(&dom, black_box(&p), black_box(&q), &config).unwrap())
            });
        }
        group.bench_function(BenchmarkId::new(name, "euclid"), |b| {
            b.iter(|| euclid_gcd(&dom, black_box(&p), black_box(&q)).unwrap())
        });
    }
    group.finish();
}

fn dense_scaling(c: &mut Criterion) {
    let dom = RationalField;
    let mut group = c.benchmark_group("dense-degree");
    for n in [8, 16, 32] {
        let (p, q) = (dense(n, 3), dense(n, 7));
        let config = RunConfig::default_for(&dom);
        group.bench_with_input(BenchmarkId::new("engine", n), &n, |b, _| {
            b.iter(|| run(&dom, black_box(&p), black_box(&q), &config).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("euclid", n), &n, |b, _| {
            b.iter(|| euclid_gcd(&dom, black_box(&p), black_box(&q)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("sylvester", n), &n, |b, _| {
            b.iter(|| sylvester_resultant(&dom, black_box(&p), black_box(&q)).unwrap())
        });
    }
    group.finish();
}

fn symbolic(c: &mut Criterion) {
    let mut group = c.benchmark_group("symbolic");
    group.sample_size(20);
    let (dom, p, q) = quartic();
    let config = RunConfig::new(Normalization::None);
    group.bench_function("quartic-discriminant", |b| {
        b.iter(|| run(&dom, black_box(&p), black_box(&q), &config).unwrap())
    });
    for m in [5, 8] {
        let (dom, p, q) = trinomial(m);
        group.bench_with_input(BenchmarkId::new("trinomial", m), &m, |b, _| {
            b.iter(|| run(&dom, black_box(&p), black_box(&q), &config).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, worked_pairs, dense_scaling, symbolic);
criterion_main!(benches);
