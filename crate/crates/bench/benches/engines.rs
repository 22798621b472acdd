use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use hfverify_core::psinterval::{digamma_enclosure, lgamma_enclosure, pi_enclosure};
use hfverify_core::ratcore::frac;
use hfverify_core::registry::get_identity;
use hfverify_core::verify::{
    fuzz_bindings, mth_power_sum_closed_form, verify_exact, verify_exact_with,
    verify_interval_bindings, ExactMode, FuzzSpec, GridSpec,
};
use hfverify_core::Precision;

fn exact(c: &mut Criterion) {
    let frisch = get_identity("Id_Frisch").unwrap();
    let grid = GridSpec::integer(1, 20, 4);
    c.bench_function("exact/Id_Frisch n<=20 b,c<=4", |b| {
        b.iter(|| verify_exact(black_box(frisch), &grid))
    });
    let odd = get_identity("eq.h9wjxs0").unwrap();
    let g = GridSpec::new(0, 30);
    c.bench_function("ring/eq.h9wjxs0 n<=30", |b| {
        b.iter(|| verify_exact_with(black_box(odd), &g, ExactMode::Ring))
    });
    c.bench_function("mth closed form n=40 m=6", |b| {
        b.iter(|| mth_power_sum_closed_form(40, black_box(&frac(7, 3)), 6))
    });
}

fn interval(c: &mut Criterion) {
    let p = Precision::bits(96);
    c.bench_function("pi 96 bits", |b| b.iter(|| pi_enclosure(black_box(&p))));
    c.bench_function("digamma(29/7) 96 bits", |b| {
        b.iter(|| digamma_enclosure(black_box(&frac(29, 7)), &p))
    });
    c.bench_function("lgamma(29/7) 96 bits", |b| {
        b.iter(|| lgamma_enclosure(black_box(&frac(29, 7)), &p))
    });
    let d = get_identity("Id_Frisch").unwrap();
    let draw = fuzz_bindings(d, &FuzzSpec::new(1, 20));
    let prec = Precision::bits(64);
    let mut group = c.benchmark_group("interval");
    group.sample_size(10);
    group.bench_function("Id_Frisch 20 random bindings", |b| {
        b.iter(|| verify_interval_bindings(d, black_box(&draw.bindings), &prec))
    });
    group.finish();
}

criterion_group!(benches, exact, interval);
criterion_main!(benches);
