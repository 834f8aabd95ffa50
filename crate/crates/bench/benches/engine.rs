use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use quadsec_bench::{quadric_intersection, rational_normal_quartic, uncached, veronese_surface};
use quadsec_core::syzygy::free_resolution;

fn groebner(c: &mut Criterion) {
    let mut group = c.benchmark_group("groebner");
    for (name, ideal) in [("rnc4", rational_normal_quartic()), ("veronese", veronese_surface())] {
        group.bench_function(name, |b| b.iter(|| uncached(black_box(&ideal)).gb().unwrap().len()));
    }
    group.finish();
}

fn resolution(c: &mut Criterion) {
    let ideal = rational_normal_quartic();
    c.bench_function("resolution/rnc4", |b| b.iter(|| free_resolution(&uncached(black_box(&ideal)), 3).unwrap()));
    let ci = quadric_intersection();
    c.bench_function("resolution/ci22", |b| b.iter(|| free_resolution(&uncached(black_box(&ci)), 3).unwrap()));
}

criterion_group!(benches, groebner, resolution);
criterion_main!(benches);
