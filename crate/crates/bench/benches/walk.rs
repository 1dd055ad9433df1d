use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use kickwalk::{evolve_to, limit_law, limit_moment, reconstruct_field, LimitCase};
use kickwalk_bench::fixture;

fn direct(c: &mut Criterion) {
    let p = fixture(200, 2, 3);
    let t = p.analysis_time();
    c.bench_function("evolve_to t=1002", |b| {
        b.iter(|| evolve_to(black_box(&p), t))
    });
}

fn spectral(c: &mut Criterion) {
    let p = fixture(20, 2, 3);
    let samples = 2 * p.analysis_time() as usize + 1;
    c.bench_function("reconstruct_field t=102", |b| {
        b.iter(|| reconstruct_field(black_box(&p), samples).unwrap())
    });
    c.bench_function("limit_moment (2,3) r=2", |b| {
        b.iter(|| limit_moment(LimitCase::Kicked { m: 2, n: 3 }, black_box(&p), 2).unwrap())
    });
}

fn law(c: &mut Criterion) {
    let p = fixture(20, 2, 2);
    let law = limit_law(LimitCase::Kicked { m: 2, n: 2 }, &p).unwrap();
    let xs: Vec<f64> = (0..=2000).map(|i| -1.0 + i as f64 / 1000.0).collect();
    c.bench_function("law cdf 2001 points", |b| {
        b.iter(|| law.cdf_sorted(black_box(&xs)))
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = direct, spectral, law
}
criterion_main!(benches);
