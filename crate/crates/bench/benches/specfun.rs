use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use gammalcm::specfun::{ln_gamma, polygamma, polygamma_quadrature};
use gammalcm_bench::log_points;

fn bench_ln_gamma(c: &mut Criterion) {
    let xs = log_points(1e-3, 1e6, 64);
    c.bench_function("ln_gamma/64 points", |b| {
        b.iter(|| {
            xs.iter()
                .map(|&x| ln_gamma(black_box(x)).unwrap())
                .sum::<f64>()
        })
    });
}

fn bench_polygamma(c: &mut Criterion) {
    let xs = log_points(1e-2, 100.0, 64);
    let mut group = c.benchmark_group("polygamma");
    for n in [0, 1, 5, 15, 25] {
        group.bench_with_input(BenchmarkId::new("asymptotic", n), &n, |b, &n| {
            b.iter(|| {
                xs.iter()
                    .map(|&x| polygamma(n, black_box(x)).unwrap())
                    .sum::<f64>()
            })
        });
    }
    group.bench_function("quadrature/n=3,x=2.5", |b| {
        b.iter(|| polygamma_quadrature(3, black_box(2.5)).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_ln_gamma, bench_polygamma);
criterion_main!(benches);
