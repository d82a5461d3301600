#![allow(dead_code)]

use std::sync::Arc;

use qsys_core::linalg::{eigh, random_hermitian};
use qsys_core::qsystem::{group_algebra, trivial_qsystem, Bimodule, QSysCat, QSystem};
use qsys_core::{CMat, OneCell, Presentation, Tolerance, TwoCategory, TwoCell};

/// A unitary on `x`: per block, the eigenvectors of a seeded Hermitian matrix.
pub fn random_unitary(x: &OneCell, seed: u64) -> TwoCell {
    let blocks = x
        .mult
        .iter()
        .enumerate()
        .map(|(k, &m)| {
            if m == 0 {
                CMat::zeros(0, 0)
            } else {
                eigh(&random_hermitian(m, seed.wrapping_mul(31).wrapping_add(k as u64)).unwrap()).1
            }
        })
        .collect();
    TwoCell::new(x.clone(), x.clone(), blocks).unwrap()
}

/// A 2-cell `x ⇒ y` with seeded entries.
pub fn random_cell(x: &OneCell, y: &OneCell, seed: u64) -> TwoCell {
    let blocks = x
        .mult
        .iter()
        .zip(&y.mult)
        .enumerate()
        .map(|(k, (&c, &r))| {
            if r == 0 || c == 0 {
                return CMat::zeros(r, c);
            }
            let n = r.max(c);
            random_hermitian(n, seed.wrapping_mul(17).wrapping_add(k as u64))
                .unwrap()
                .submatrix(0, 0, r, c)
        })
        .collect();
    TwoCell::new(x.clone(), y.clone(), blocks).unwrap()
}

pub fn z2_cat(seed: u64) -> (Arc<Presentation>, Arc<QSysCat>) {
    let p = Arc::new(qsys_core::twocat::vec_z2());
    let qs = vec![
        trivial_qsystem(&p, 0).unwrap(),
        group_algebra(&p, 0, 1.0).unwrap(),
    ];
    let cat = Arc::new(QSysCat::new(p.clone(), qs, Tolerance::default(), seed).unwrap());
    (p, cat)
}

pub fn z3_cat(seed: u64) -> (Arc<Presentation>, Arc<QSysCat>) {
    let p = Arc::new(qsys_core::twocat::vec_z3());
    let qs = vec![
        trivial_qsystem(&p, 0).unwrap(),
        group_algebra(&p, 0, 1.0).unwrap(),
    ];
    let cat = Arc::new(QSysCat::new(p.clone(), qs, Tolerance::default(), seed).unwrap());
    (p, cat)
}

/// A gauged direct sum of one or two simple `P–Q` bimodules.
pub fn random_bimodule(
    cat: &QSysCat,
    pq: &Arc<QSystem>,
    qq: &Arc<QSystem>,
    seed: u64,
) -> Arc<Bimodule> {
    let simples = cat.simples(pq, qq).unwrap();
    let k = (seed as usize) % simples.len();
    let mut parts = vec![simples[k].clone()];
    if seed.is_multiple_of(3) {
        parts.push(simples[(k + 1) % simples.len()].clone());
    }
    let (sum, _) = cat.direct_sum(&parts, pq, qq).unwrap();
    sum.conjugate(cat.presentation(), &random_unitary(&sum.x, seed))
        .unwrap()
}

/// A composable pair `P–Q`, `Q–R` with Q-systems chosen by `seed`.
pub fn random_pair(cat: &QSysCat, seed: u64) -> (Arc<Bimodule>, Arc<Bimodule>) {
    let qs = cat.qsystems();
    let n = qs.len() as u64;
    let (a, b, c) = (seed % n, (seed / n) % n, (seed / (n * n)) % n);
    let x = random_bimodule(cat, &qs[a as usize], &qs[b as usize], seed);
    let y = random_bimodule(
        cat,
        &qs[b as usize],
        &qs[c as usize],
        seed.wrapping_add(101),
    );
    (x, y)
}
