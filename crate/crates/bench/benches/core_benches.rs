use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use a1kit_bench::{shuffled_power_weight, uniform_weight};
use a1kit_cli::gen::gen_interval_set;
use a1kit_core::{
    a1_constant, check_reverse_holder, convex_dominates, cover, default_candidates,
    hardy_constant, majorizes, moment_ratio_inverse, rat, verify_cover,
};

fn bench_a1_constant(c: &mut Criterion) {
    let mut group = c.benchmark_group("a1_constant");
    for pieces in [8usize, 32, 128] {
        let w = uniform_weight(pieces, 0xBE7C);
        group.bench_with_input(BenchmarkId::from_parameter(pieces), &w, |b, w| {
            b.iter(|| a1_constant(black_box(w)))
        });
    }
    group.finish();
}

fn bench_rearrange(c: &mut Criterion) {
    let w = uniform_weight(1024, 0xBE7C);
    c.bench_function("rearrange/1024", |b| b.iter(|| black_box(&w).rearrange()));
}

fn bench_hardy_constant(c: &mut Criterion) {
    let w = shuffled_power_weight(512, 0xBE7C).rearrange();
    c.bench_function("hardy_constant/512", |b| {
        b.iter(|| hardy_constant(black_box(&w), true).unwrap())
    });
}

fn bench_reverse_holder(c: &mut Criterion) {
    let w = uniform_weight(12, 0xBE7C);
    let candidates = default_candidates(&w, 1000, 7);
    c.bench_function("check_reverse_holder/12x1066", |b| {
        b.iter(|| check_reverse_holder(black_box(&w), 1.05, black_box(&candidates)).unwrap())
    });
}

fn bench_majorization(c: &mut Criterion) {
    let w1 = uniform_weight(64, 1);
    let w2 = uniform_weight(64, 2);
    c.bench_function("majorizes/64", |b| {
        b.iter(|| majorizes(black_box(&w1), black_box(&w2)).unwrap())
    });
    c.bench_function("convex_dominates/64", |b| {
        b.iter(|| convex_dominates(black_box(&w1), black_box(&w2)).unwrap())
    });
}

fn bench_moment_ratio_inverse(c: &mut Criterion) {
    c.bench_function("moment_ratio_inverse/p=3", |b| {
        b.iter(|| moment_ratio_inverse(black_box(3.0), black_box(0.37)).unwrap())
    });
}

fn bench_cover(c: &mut Criterion) {
    let set = gen_interval_set(5, 10);
    let eps = rat(1, 10);
    c.bench_function("cover_and_verify/10", |b| {
        b.iter(|| {
            let result = cover(black_box(&set), black_box(&eps)).unwrap();
            verify_cover(&set, &result).pass
        })
    });
}

criterion_group!(
    benches,
    bench_a1_constant,
    bench_rearrange,
    bench_hardy_constant,
    bench_reverse_holder,
    bench_majorization,
    bench_moment_ratio_inverse,
    bench_cover
);
criterion_main!(benches);
