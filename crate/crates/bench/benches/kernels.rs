use batir_core::kernels::{binom_int, KernelCache};
use batir_core::Rational;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

// Fresh caches so every iteration pays for the whole table.
fn cold_tables(c: &mut Criterion) {
    let mut group = c.benchmark_group("cold");
    for n in [50usize, 100, 200] {
        group.bench_with_input(BenchmarkId::new("bernoulli", n), &n, |b, &n| {
            b.iter(|| black_box(KernelCache::new().bernoulli(n)))
        });
        group.bench_with_input(BenchmarkId::new("harmonic", n), &n, |b, &n| {
            b.iter(|| black_box(KernelCache::new().harmonic(n, 2)))
        });
        group.bench_with_input(BenchmarkId::new("stirling2", n), &n, |b, &n| {
            b.iter(|| black_box(KernelCache::new().stirling2(n, n / 2)))
        });
    }
    group.finish();
}

fn arithmetic(c: &mut Criterion) {
    let big = KernelCache::new().harmonic(500, 1);
    let small = Rational::ratio(7, 360).unwrap();
    c.bench_function("add big+small", |b| b.iter(|| black_box(&big + &small)));
    c.bench_function("mul big*big", |b| b.iter(|| black_box(&big * &big)));
    c.bench_function("binom(400,200)", |b| b.iter(|| black_box(binom_int(400, 200))));
}

criterion_group!(benches, cold_tables, arithmetic);
criterion_main!(benches);
