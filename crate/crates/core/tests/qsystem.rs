mod common;

use std::sync::Arc;

use qsys_core::category::{pentagon, triangle};
use qsys_core::qsystem::{
    check_qsystem, complete, condensation_from_qsystem, find_qsystems, group_algebra,
    intertwiner_space, qsys_associator, simple_bimodules, trivial_qsystem, QSystem, SearchOptions,
};
use qsys_core::twocat::{fibonacci, ising, validate, vec, vec_z2, vec_z3};
use qsys_core::{Presentation, Tolerance, TwoCategory, TwoCell, C64};

use common::z2_cat;

fn scaled(p: &Presentation, q: &QSystem, s: f64) -> Arc<QSystem> {
    QSystem::new(
        p,
        "scaled",
        q.base,
        q.q.clone(),
        q.m.scale(C64::new(s, 0.0)),
        q.i.clone(),
    )
    .unwrap()
}

#[test]
fn bundled_presentations_validate() {
    for p in [vec(), vec_z2(), vec_z3(), fibonacci(), ising()] {
        let r = validate(&p, Tolerance::default()).unwrap();
        assert!(r.passed() && r.max_residual() < 1e-9, "{}: {r}", p.name());
    }
}

#[test]
fn negated_ising_entry_breaks_only_pentagons() {
    let p = ising();
    let key = (1, 2, 1, 2);
    let f = p.fsymbol(key.0, key.1, key.2, key.3).unwrap().clone();
    let bad = p.with_fsymbol(key, f.scale(C64::new(-1.0, 0.0))).unwrap();
    let before = validate(&p, Tolerance::default()).unwrap();
    let after = validate(&bad, Tolerance::default()).unwrap();
    assert_eq!(before.len(), after.len());
    let failed: Vec<_> = after.failures().map(|c| c.id.clone()).collect();
    assert!(!failed.is_empty());
    assert!(
        failed.iter().all(|id| id.starts_with("pentagon(")),
        "{failed:?}"
    );
}

#[test]
fn z2_group_algebra_matches_the_closed_form() {
    let p = vec_z2();
    let q = group_algebra(&p, 0, 1.0).unwrap();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    for block in &q.m.blocks {
        assert!(block
            .as_slice()
            .iter()
            .all(|z| (z.re - h).abs() < 1e-15 && z.im == 0.0));
    }
    assert!((q.i.blocks[0][(0, 0)].re - 2f64.sqrt()).abs() < 1e-15);
    let r = check_qsystem(&p, &q, Tolerance::default()).unwrap();
    assert!(r.passed() && r.max_residual() < 1e-9, "{r}");

    let bad = check_qsystem(&p, &scaled(&p, &q, 1.1), Tolerance::default()).unwrap();
    assert!(bad.get("Q4").unwrap().residual > 0.1);
    assert!(!bad.get("Q4").unwrap().pass);
}

/// The search solves the axioms numerically; its solution on `1 ⊕ g` agrees
/// with the closed form up to the phase gauge of `g`.
#[test]
fn search_reproduces_the_group_algebra() {
    let p = vec_z2();
    let opts = SearchOptions {
        dim_bound: 2.0,
        seed: 3,
        ..Default::default()
    };
    let found = find_qsystems(&p, 0, &opts).unwrap();
    let q = found
        .iter()
        .find(|r| r.qsystem.q.mult == vec![1, 1])
        .expect("1⊕g is found");
    let h = std::f64::consts::FRAC_1_SQRT_2;
    for block in &q.qsystem.m.blocks {
        assert!(block.as_slice().iter().all(|z| (z.norm() - h).abs() < 1e-8));
    }
}

#[test]
fn completion_census_by_brute_force() {
    let (p, cat) = z2_cat(0);
    let qs = cat.qsystems().to_vec();
    let tol = Tolerance::default();
    let mut counts = Vec::new();
    for a in &qs {
        for b in &qs {
            let s = simple_bimodules(&p, a, b, tol, 0).unwrap();
            for (i, x) in s.iter().enumerate() {
                for (j, y) in s.iter().enumerate() {
                    assert_eq!(
                        intertwiner_space(&p, x, y).unwrap().len(),
                        usize::from(i == j)
                    );
                }
            }
            counts.push(s.len());
        }
    }
    assert_eq!(counts, vec![2, 1, 1, 2]);
    let c = complete(&p, &qs, tol, 0).unwrap();
    assert!(validate(&c.presentation, tol).unwrap().passed());
}

#[test]
fn completed_associator_is_coherent() {
    let (p, cat) = z2_cat(0);
    let c = &*cat;
    let objs = c.objects();
    let mut simples = Vec::new();
    for a in &objs {
        for b in &objs {
            simples.extend(c.simples(a, b).unwrap());
        }
    }
    let next = |x: &Arc<qsys_core::qsystem::Bimodule>| {
        simples
            .iter()
            .filter(|y| y.left.same_as(&x.right))
            .cloned()
            .collect::<Vec<_>>()
    };
    let (mut pent, mut tri, mut n) = (0.0f64, 0.0f64, 0);
    for w in &simples {
        for x in next(w) {
            tri = tri.max(triangle(c, w, &x).unwrap());
            for y in next(&x) {
                for z in next(&y) {
                    pent = pent.max(pentagon(c, w, &x, &y, &z).unwrap());
                    n += 1;
                }
            }
        }
    }
    assert!(n > 0);
    assert!(pent < 1e-8, "{pent}");
    assert!(tri < 1e-8, "{tri}");
    let (x, y, z) = (&simples[0], &simples[0], &simples[0]);
    let a = qsys_associator(&p, x, y, z, Tolerance::default()).unwrap();
    assert!(
        a.dagger()
            .after(&a)
            .unwrap()
            .distance(&TwoCell::identity(&a.dom))
            < 1e-9
    );
}

#[test]
fn trivial_completion_is_a_relabeling() {
    let p = Arc::new(vec_z3());
    let c = complete(
        &p,
        &[trivial_qsystem(&p, 0).unwrap()],
        Tolerance::default(),
        0,
    )
    .unwrap();
    let q = &c.presentation;
    assert_eq!(q.num_simples(), p.num_simples());
    let idx: Vec<usize> = p
        .simples()
        .iter()
        .map(|s| q.simple_index(&s.id).unwrap())
        .collect();
    for i in 0..p.num_simples() {
        for j in 0..p.num_simples() {
            for k in 0..p.num_simples() {
                assert_eq!(q.n(idx[i], idx[j], idx[k]), p.n(i, j, k));
            }
        }
    }
}

#[test]
fn every_listed_qsystem_condenses() {
    let tol = Tolerance::default();
    let lists: Vec<(Presentation, Vec<Arc<QSystem>>)> = {
        let z2 = vec_z2();
        let z3 = vec_z3();
        let l2 = vec![
            trivial_qsystem(&z2, 0).unwrap(),
            group_algebra(&z2, 0, 1.0).unwrap(),
        ];
        let l3 = vec![
            trivial_qsystem(&z3, 0).unwrap(),
            group_algebra(&z3, 0, 1.0).unwrap(),
        ];
        vec![(z2, l2), (z3, l3)]
    };
    for (p, qs) in &lists {
        for q in qs {
            let c = condensation_from_qsystem(p, q, tol).unwrap();
            let ed = c.epsilon.cell.after(&c.delta.cell).unwrap();
            assert!(ed.distance(&TwoCell::identity(&q.q)) < 1e-12);
            assert_eq!(c.delta.cell, c.epsilon.cell.dagger());
        }
    }
}
