use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use gvdual::kernel::Subspace;
use gvdual_bench::dense_matrix;
use std::hint::black_box;

fn rref(c: &mut Criterion) {
    let mut g = c.benchmark_group("rref");
    for n in [8, 16, 32] {
        let m = dense_matrix(n);
        g.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| b.iter(|| black_box(m.rref())));
    }
    g.finish();
}

fn intersect(c: &mut Criterion) {
    let mut g = c.benchmark_group("subspace_intersect");
    for n in [8, 16, 32] {
        let m = dense_matrix(n);
        let rows = m.row_vecs();
        let a = Subspace::span(n, rows[..n / 2 + 1].to_vec()).unwrap();
        let b = Subspace::span(n, rows[n / 2 - 1..].to_vec()).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(n), &(a, b), |bch, (a, b)| {
            bch.iter(|| black_box(a.intersect(b).unwrap()))
        });
    }
    g.finish();
}

criterion_group!(benches, rref, intersect);
criterion_main!(benches);
