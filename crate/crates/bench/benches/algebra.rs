use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use std::hint::black_box;

use qlab_core::algebra::{adjoint, coproduct, haar_state};
use qlab_core::corpus::random_elements;
use qlab_core::crossed::{assemble_matrix_form, build_torus_rep, TorusModel};
use qlab_core::linalg::operator_norm;
use qlab_core::replab::{build_full_rep, RepParams, Representation};
use qlab_core::Algebra;

fn multiply(c: &mut Criterion) {
    let xs = random_elements(Algebra::GqTheta, 2, 6, 4, 1);
    c.bench_function("multiply GqTheta degree 4", |b| b.iter(|| black_box(&xs[0] * &xs[1])));
}

fn coproducts(c: &mut Criterion) {
    let x = random_elements(Algebra::SUq2, 1, 6, 4, 2).pop().unwrap();
    c.bench_function("coproduct SUq2 degree 4", |b| b.iter(|| coproduct(black_box(&x)).unwrap()));
}

fn haar(c: &mut Criterion) {
    let x = random_elements(Algebra::SUq2, 1, 4, 2, 3).pop().unwrap();
    let positive = &adjoint(&x) * &x;
    c.bench_function("haar state of x* x", |b| b.iter(|| haar_state(black_box(&positive)).unwrap()));
}

fn norms(c: &mut Criterion) {
    let mut group = c.benchmark_group("operator norm");
    group.sample_size(20);
    let rep = build_full_rep(RepParams::new(0.5, 12, 64)).unwrap();
    group.bench_function("π(γ) at K = 12, N = 64", |b| b.iter(|| operator_norm(black_box(rep.gamma())).unwrap()));
    let torus = build_torus_rep(&TorusModel::clock(89, 55).unwrap()).unwrap();
    let x = random_elements(Algebra::GqTheta, 1, 5, 3, 4).pop().unwrap();
    group.bench_function("block form at cutoff 10, clock 89/55", |b| {
        b.iter_batched(
            || assemble_matrix_form(&x, &torus, 0.5, 10).unwrap().to_sparse(),
            |m| operator_norm(&m).unwrap(),
            BatchSize::LargeInput,
        )
    });
    group.finish();
}

criterion_group!(benches, multiply, coproducts, haar, norms);
criterion_main!(benches);
