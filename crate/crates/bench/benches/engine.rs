use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use vdecomp_bench::{dense_element, engine, generic_algebra, p_local, valued_matrix};
use vdecomp_core::{elementary_divisor_valuations, MurphyBasis};

fn hecke_multiply(c: &mut Criterion) {
    let h = generic_algebra(3, 2);
    let a = dense_element(h.dim(), 1);
    let b = dense_element(h.dim(), 2);
    c.bench_function("hecke multiply H(3,2) dense", |bench| bench.iter(|| h.multiply(black_box(&a), black_box(&b))));
}

fn murphy_transition(c: &mut Criterion) {
    let mut g = c.benchmark_group("murphy transition");
    g.sample_size(10);
    for (n, r) in [(2, 2), (3, 2)] {
        let h = generic_algebra(n, r);
        g.bench_function(format!("n={n} r={r}"), |bench| bench.iter(|| MurphyBasis::compute(black_box(&h)).unwrap()));
    }
    g.finish();
}

fn smith_form(c: &mut Criterion) {
    let ms = p_local(2, 1);
    let m = valued_matrix(4).kronecker(&valued_matrix(4));
    c.bench_function("valuations 16x16", |bench| {
        bench.iter(|| elementary_divisor_valuations(&ms, black_box(&m)).unwrap())
    });
}

fn v_decomposition(c: &mut Criterion) {
    let mut g = c.benchmark_group("v-decomposition matrix");
    g.sample_size(10);
    for (n, r) in [(2, 2), (3, 2), (2, 3)] {
        g.bench_function(format!("n={n} r={r}"), |bench| bench.iter(|| engine(n, r).v_decomp_matrix().unwrap()));
    }
    g.finish();
}

criterion_group!(benches, hecke_multiply, murphy_transition, smith_form, v_decomposition);
criterion_main!(benches);
