use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use quadsec_bench::{quadric_intersection, rational_normal_quartic, twisted_cubic};
use quadsec_core::cohomology::vanishing_scan;
use quadsec_core::conditions::{check_kd, check_n2, default_normality_bound};

fn conditions(c: &mut Criterion) {
    let rnc = rational_normal_quartic();
    let ci = quadric_intersection();
    c.bench_function("k2/rnc4", |b| b.iter(|| check_kd(black_box(rnc.gens()), 2).unwrap().holds));
    c.bench_function("k2/ci22", |b| b.iter(|| check_kd(black_box(ci.gens()), 2).unwrap().holds));
    c.bench_function("n2/rnc4", |b| b.iter(|| check_n2(black_box(&rnc), default_normality_bound(2)).unwrap()));
}

fn vanishing(c: &mut Criterion) {
    let mut group = c.benchmark_group("vanish_scan");
    group.sample_size(10);
    let tc = twisted_cubic();
    let rnc = rational_normal_quartic();
    group.bench_function("tc_a1", |b| b.iter(|| vanishing_scan(black_box(&tc), 2, 1..=1, 4).unwrap()));
    group.bench_function("rnc4_a2", |b| b.iter(|| vanishing_scan(black_box(&rnc), 2, 1..=2, 3).unwrap()));
    group.finish();
}

criterion_group!(benches, conditions, vanishing);
criterion_main!(benches);
