//! Timings for the inner loops: mod-p patterns, discriminants, local
//! indices, the S-unit search and Hilbert symbols.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use m12_core::covers::{specialize, CoverId};
use m12_core::exactnum::{parse_rat, primes_between};
use m12_core::obstruct::{hilbert_symbol, Place};
use m12_core::polyalg::ddf_partition;
use m12_core::ramify::order::FieldAnalyzer;
use m12_core::specsets::{search, Triple};

fn b5() -> m12_core::IntPoly {
    specialize(CoverId::B, &parse_rat("5").unwrap())
        .unwrap()
        .poly
}

fn ddf(c: &mut Criterion) {
    let f = b5();
    let primes = primes_between(1_000_000, 1_010_000);
    c.bench_function("ddf_partition/B(5)/1e6..+1e4", |b| {
        b.iter(|| {
            primes
                .iter()
                .filter_map(|&p| ddf_partition(black_box(&f), p))
                .count()
        })
    });
}

fn discriminant(c: &mut Criterion) {
    let f = specialize(CoverId::D2, &parse_rat("7").unwrap())
        .unwrap()
        .poly;
    c.bench_function("discriminant/D2(7)", |b| {
        b.iter(|| black_box(&f).discriminant())
    });
}

fn local_index(c: &mut Criterion) {
    let fa = FieldAnalyzer::trusted(b5());
    c.bench_function("local_index/B(5)/p=2", |b| {
        b.iter(|| fa.local(black_box(2)).unwrap())
    });
    c.bench_function("local_index/B(5)/p=5", |b| {
        b.iter(|| fa.local(black_box(5)).unwrap())
    });
}

fn unit_search(c: &mut Criterion) {
    let mut g = c.benchmark_group("search");
    g.sample_size(10);
    g.bench_function("3,2,11/S=2,3,11/H=1e8", |b| {
        b.iter(|| search(Triple::new(3, 2, 11), &[2, 3, 11], black_box(100_000_000)).unwrap())
    });
    g.finish();
}

fn hilbert(c: &mut Criterion) {
    let a = parse_rat("-6881/1296").unwrap();
    let b = parse_rat("-3").unwrap();
    c.bench_function("hilbert/p=2,3,5,inf", |bch| {
        bch.iter(|| {
            [
                Place::Prime(2),
                Place::Prime(3),
                Place::Prime(5),
                Place::Infinity,
            ]
            .iter()
            .map(|&v| hilbert_symbol(black_box(&a), &b, v).unwrap())
            .product::<i8>()
        })
    });
}

criterion_group!(
    benches,
    ddf,
    discriminant,
    local_index,
    unit_search,
    hilbert
);
criterion_main!(benches);
