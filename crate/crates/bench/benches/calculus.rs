use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion};
use qsys_core::functoriality::Suite;
use qsys_core::linalg::{random_hermitian, split_projection};
use qsys_core::qsystem::{
    complete, find_qsystems, group_algebra, simple_bimodules, trivial_qsystem, SearchOptions,
};
use qsys_core::twocat::{self, validate};
use qsys_core::{CMat, Tolerance};

fn linalg(c: &mut Criterion) {
    let tol = Tolerance::default();
    for n in [4, 16] {
        let h = random_hermitian(n, 1).unwrap();
        let (_, v) = qsys_core::linalg::eigh(&h);
        let half = v.submatrix(0, 0, n, n / 2);
        let p: CMat = &half * &half.adjoint();
        c.bench_function(&format!("split_projection/{n}"), |b| {
            b.iter(|| split_projection(black_box(&p), tol).unwrap())
        });
    }
}

fn presentations(c: &mut Criterion) {
    let tol = Tolerance::default();
    let ising = twocat::ising();
    c.bench_function("validate/ising", |b| {
        b.iter(|| validate(black_box(&ising), tol).unwrap())
    });
    let fib = twocat::fibonacci();
    c.bench_function("validate/fibonacci", |b| {
        b.iter(|| validate(black_box(&fib), tol).unwrap())
    });
}

fn completion(c: &mut Criterion) {
    let tol = Tolerance::default();
    let p = Arc::new(twocat::vec_z2());
    let qs = vec![
        trivial_qsystem(&p, 0).unwrap(),
        group_algebra(&p, 0, 1.0).unwrap(),
    ];
    c.bench_function("simple_bimodules/z2", |b| {
        b.iter(|| simple_bimodules(&p, &qs[1], &qs[1], tol, 0).unwrap())
    });
    c.bench_function("complete/z2", |b| {
        b.iter(|| complete(&p, black_box(&qs), tol, 0).unwrap())
    });
    let fib = twocat::fibonacci();
    let opts = SearchOptions {
        dim_bound: 2.7,
        ..SearchOptions::default()
    };
    c.bench_function("find_qsystems/fibonacci", |b| {
        b.iter(|| find_qsystems(&fib, 0, &opts).unwrap())
    });
}

fn theorems(c: &mut Criterion) {
    let s = Suite::z2(Tolerance::default(), 0).unwrap();
    let mut g = c.benchmark_group("suite");
    g.sample_size(10);
    g.bench_function("z2", |b| b.iter(|| s.run()));
    g.finish();
}

criterion_group!(benches, linalg, presentations, completion, theorems);
criterion_main!(benches);
