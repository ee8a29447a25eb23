use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use arrfree_core::catalog;
use arrfree_core::derivations::{derivation_slice, SliceConstraint};
use arrfree_core::theorems::{deletion_construct_pog, free_additions};
use arrfree_core::{char_poly, classify, intersection_lattice, Hyperplane};

fn lattice(c: &mut Criterion) {
    let b3 = catalog::b3();
    c.bench_function("lattice/b3", |b| {
        b.iter(|| intersection_lattice(black_box(&b3)))
    });
    c.bench_function("chi/b3", |b| b.iter(|| char_poly(black_box(&b3))));
}

fn slices(c: &mut Criterion) {
    let b3 = catalog::b3();
    c.bench_function("slice/b3/deg8", |b| {
        b.iter(|| derivation_slice(black_box(&b3), None, 8, SliceConstraint::None).unwrap())
    });
}

fn classification(c: &mut Criterion) {
    let mut g = c.benchmark_group("classify");
    g.sample_size(10);
    for name in ["tangent", "factor", "addnot", "shi-b:2", "b3"] {
        let a = catalog::catalog(name).unwrap();
        g.bench_function(name, |b| b.iter(|| classify(black_box(&a)).unwrap()));
    }
    let del = catalog::b3().delete(1).unwrap();
    g.bench_function("b3-minus-y", |b| {
        b.iter(|| classify(black_box(&del)).unwrap())
    });
    g.finish();
}

fn theorems(c: &mut Criterion) {
    let mut g = c.benchmark_group("theorems");
    g.sample_size(10);
    let shi = catalog::shi_b(2).unwrap();
    g.bench_function("deletion_construct/shi-b:2", |b| {
        b.iter(|| deletion_construct_pog(black_box(&shi), 0).unwrap())
    });
    let del = catalog::b3().delete(1).unwrap();
    let pool = vec![
        Hyperplane::from_i64(&[0, 1, 0]).unwrap(),
        Hyperplane::from_i64(&[1, 2, 3]).unwrap(),
    ];
    g.bench_function("free_additions/b3-minus-y", |b| {
        b.iter(|| free_additions(black_box(&del), &pool).unwrap())
    });
    g.finish();
}

criterion_group!(benches, lattice, slices, classification, theorems);
criterion_main!(benches);
