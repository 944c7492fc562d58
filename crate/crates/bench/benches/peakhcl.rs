use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use peakhcl::grothendieck::{cartan_by_filtration, class_of_module};
use peakhcl::hclifford::{gram_matrix, AlgebraElement};
use peakhcl::heisenberg::{fock_action, free_basis_over_omega, n_element};
use peakhcl::hopf::{convert, product, q_gen, theta_transform, Basis, FreeElement};
use peakhcl::supermodules::{hom_space, projective_induced, simple_induced};
use peakhcl::Composition;

fn hopf(c: &mut Criterion) {
    c.bench_function("q6 in H", |b| b.iter(|| convert(black_box(&q_gen(6)), Basis::H).unwrap()));
    let r = FreeElement::comp(Basis::R, &[2, 1, 3, 1]);
    c.bench_function("theta of R[2,1,3,1]", |b| b.iter(|| theta_transform(black_box(&r)).unwrap()));
    let (x, y) = (FreeElement::comp(Basis::M, &[2, 1]), FreeElement::comp(Basis::M, &[1, 1, 2]));
    c.bench_function("quasi-shuffle M[2,1]*M[1,1,2]", |b| b.iter(|| product(black_box(&x), black_box(&y)).unwrap()));
}

fn algebra(c: &mut Criterion) {
    let w = AlgebraElement::t(4, 1).mul(&AlgebraElement::c(4, 2)).unwrap().mul(&AlgebraElement::t(4, 3)).unwrap();
    c.bench_function("HCl_4 product", |b| b.iter(|| black_box(&w).mul(black_box(&w)).unwrap()));
    c.bench_function("Gram matrix n=3", |b| b.iter(|| gram_matrix(black_box(3)).unwrap()));
}

fn modules(c: &mut Criterion) {
    let a = Composition::of(&[2, 1, 1]);
    c.bench_function("Hom(P~_(2,1,1), S~_(2,1,1))", |b| {
        let (p, s) = (projective_induced(&a).unwrap(), simple_induced(&a).unwrap());
        b.iter(|| hom_space(black_box(&p), black_box(&s)).unwrap())
    });
    let s = simple_induced(&Composition::of(&[1, 3, 1])).unwrap();
    c.bench_function("class of S~_(1,3,1)", |b| b.iter(|| class_of_module(black_box(&s)).unwrap()));
    c.bench_function("Cartan image (2,2,2)", |b| b.iter(|| cartan_by_filtration(black_box(&Composition::of(&[2, 2, 2]))).unwrap()));
}

fn heisenberg(c: &mut Criterion) {
    let x = n_element(&Composition::of(&[2, 1, 2]));
    c.bench_function("Q3 . N[2,1,2]", |b| b.iter(|| fock_action(black_box(&q_gen(3)), black_box(&x)).unwrap()));
    let mut g = c.benchmark_group("freeness");
    g.sample_size(10);
    g.bench_function("certificate to degree 6", |b| b.iter(|| free_basis_over_omega(black_box(6)).unwrap()));
    g.finish();
}

criterion_group!(benches, hopf, algebra, modules, heisenberg);
criterion_main!(benches);
