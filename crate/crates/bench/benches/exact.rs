use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use fasla_core::catalog::reference_suite;
use fasla_core::cohomology::{cohomology_dims, differential_matrix, Bimodule};
use fasla_core::dynamics::completeness;
use fasla_core::extension::{decompose_to_zero, double_extend};
use fasla_core::sampling::{random_base, random_extension_params, rng};
use fasla_core::verifier::check_fasla;

fn verification(c: &mut Criterion) {
    let suite = reference_suite().unwrap();
    let mut g = c.benchmark_group("check_fasla");
    for e in &suite {
        g.bench_with_input(BenchmarkId::from_parameter(e.name), &e.triple, |b, t| {
            b.iter(|| check_fasla(black_box(t)))
        });
    }
    g.finish();
}

fn cohomology(c: &mut Criterion) {
    let suite = reference_suite().unwrap();
    let mut g = c.benchmark_group("cohomology");
    for e in suite.iter().filter(|e| e.triple.dim() == 4) {
        let regular = Bimodule::regular(&e.triple.algebra);
        g.bench_with_input(BenchmarkId::new("differential_2", e.name), &regular, |b, m| {
            b.iter(|| differential_matrix(black_box(m), 2).unwrap())
        });
        let trivial = Bimodule::trivial(&e.triple.algebra, 1);
        g.bench_with_input(BenchmarkId::new("dims_2_trivial", e.name), &trivial, |b, m| {
            b.iter(|| cohomology_dims(black_box(m), 2).unwrap())
        });
    }
    g.finish();
}

fn extensions(c: &mut Criterion) {
    let mut r = rng(7);
    let base = random_base(&mut r, 4);
    let params = random_extension_params(&mut r, &base);
    let t = double_extend(&base, &params).unwrap();
    c.bench_function("double_extend_dim4", |b| b.iter(|| double_extend(black_box(&base), black_box(&params)).unwrap()));
    c.bench_function("decompose_dim6", |b| b.iter(|| decompose_to_zero(black_box(&t)).is_ok()));
    c.bench_function("completeness_dim6", |b| b.iter(|| completeness(black_box(&t), 0).unwrap()));
}

criterion_group!(benches, verification, cohomology, extensions);
criterion_main!(benches);
