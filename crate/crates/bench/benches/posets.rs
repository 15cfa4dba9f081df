use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use rootposet::{canonical_form, fixtures, h_triangle, ideal_size_genfun, panyushev_orbits, CartanType};

fn statistics(c: &mut Criterion) {
    let h3 = fixtures::h3_poset();
    let h4 = fixtures::h4_candidates().remove(0);
    let e6 = CartanType::E(6).root_poset().unwrap();

    c.bench_function("antichains/H4 candidate", |b| b.iter(|| black_box(&h4).count_antichains()));
    c.bench_function("antichains/E6", |b| b.iter(|| black_box(&e6).count_antichains()));
    c.bench_function("h_triangle/H4 candidate", |b| b.iter(|| h_triangle(black_box(&h4), 0b1111)));
    c.bench_function("orbits/H3", |b| b.iter(|| panyushev_orbits(black_box(&h3))));
    c.bench_function("orbits/H4 candidate", |b| b.iter(|| panyushev_orbits(black_box(&h4))));
    c.bench_function("ideal_sizes/H4 candidate", |b| b.iter(|| ideal_size_genfun(black_box(&h4))));
    c.bench_function("canonical_form/H3", |b| b.iter(|| canonical_form(black_box(&h3))));
    c.bench_function("canonical_form/H4 candidate", |b| b.iter(|| canonical_form(black_box(&h4))));
}

criterion_group!(benches, statistics);
criterion_main!(benches);
