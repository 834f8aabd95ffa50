use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use quadsec_bench::{quadric_intersection, rational_normal_quartic, twisted_cubic, veronese_surface};
use quadsec_core::secant::secant_ideal;

fn secants(c: &mut Criterion) {
    let mut group = c.benchmark_group("secant");
    group.sample_size(10);
    for (name, ideal) in [
        ("tc", twisted_cubic()),
        ("rnc4", rational_normal_quartic()),
        ("veronese", veronese_surface()),
        ("ci22", quadric_intersection()),
    ] {
        group.bench_function(name, |b| b.iter(|| secant_ideal(black_box(&ideal)).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, secants);
criterion_main!(benches);
