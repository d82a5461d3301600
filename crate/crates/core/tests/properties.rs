mod common;

use std::sync::Arc;

use proptest::prelude::*;
use qsys_core::functoriality::{
    qsys_modification, sign_z2, Functor2, Modification, QSysFunctor, QSysTransformation, Suite,
};
use qsys_core::linalg::{eigh, random_hermitian, split_projection};
use qsys_core::qsystem::{check_bimodule, rel_tensor, sep_projector};
use qsys_core::{CMat, OneCell, Presentation, Tolerance, TwoCell, C64};

use common::{random_cell, random_pair, z2_cat, z3_cat};

fn matrix(rows: usize, cols: usize, seed: u64) -> CMat {
    random_hermitian(rows.max(cols), seed)
        .unwrap()
        .submatrix(0, 0, rows, cols)
}

/// A rank `r` projection on `C^n` from the eigenvectors of a seeded Hermitian.
fn projection(n: usize, r: usize, seed: u64) -> CMat {
    let v = eigh(&random_hermitian(n, seed).unwrap())
        .1
        .submatrix(0, 0, n, r);
    &v * &v.adjoint()
}

fn small_cell(p: &Presentation, src: usize, tgt: usize, mult: Vec<usize>) -> OneCell {
    OneCell::from_mult(p, src, tgt, mult).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn adjoint_is_an_exact_anti_involution(r in 1usize..6, k in 1usize..6, c in 1usize..6, seed in any::<u64>()) {
        let a = matrix(r, k, seed);
        let b = matrix(k, c, seed ^ 0x55);
        prop_assert_eq!(a.adjoint().adjoint(), a.clone());
        prop_assert_eq!((&a * &b).adjoint(), &b.adjoint() * &a.adjoint());
    }

    #[test]
    fn kron_is_exactly_associative(d in prop::array::uniform6(1usize..4), seed in any::<u64>()) {
        let a = matrix(d[0], d[1], seed);
        let b = matrix(d[2], d[3], seed.wrapping_add(1));
        let c = matrix(d[4], d[5], seed.wrapping_add(2));
        prop_assert!(a.kron(&b).kron(&c).max_abs_diff(&a.kron(&b.kron(&c))) < 1e-15);
        let int = |m: &CMat| CMat::from_fn(m.rows(), m.cols(), |i, j| C64::new((8.0 * m[(i, j)].re).round(), (8.0 * m[(i, j)].im).round()));
        let (a, b, c) = (int(&a), int(&b), int(&c));
        prop_assert_eq!(a.kron(&b).kron(&c).max_abs_diff(&a.kron(&b.kron(&c))), 0.0);
    }

    #[test]
    fn split_projection_is_an_orthogonal_splitting(n in 1usize..=16, frac in 0.0f64..=1.0, seed in any::<u64>()) {
        let r = ((n as f64) * frac).round() as usize;
        let p = projection(n, r, seed);
        let tol = Tolerance::default();
        let u = split_projection(&p, tol).unwrap();
        prop_assert_eq!(u.rows(), r);
        prop_assert!((&u.adjoint() * &u).max_abs_diff(&p) < 1e-9);
        prop_assert!((&u * &u.adjoint()).max_abs_diff(&CMat::identity(r)) < 1e-9);
        prop_assert_eq!(split_projection(&p, tol).unwrap(), u);
    }

    #[test]
    fn interchange_and_dagger_in_fibonacci(m in prop::array::uniform4(prop::array::uniform2(0usize..3)), seed in any::<u64>()) {
        let p = qsys_core::twocat::fibonacci();
        let cells: Vec<OneCell> = m.iter().map(|v| small_cell(&p, 0, 0, v.to_vec())).collect();
        let (x, xp, y, yp) = (&cells[0], &cells[1], &cells[2], &cells[3]);
        let f = random_cell(x, xp, seed);
        let fp = random_cell(xp, x, seed ^ 1);
        let g = random_cell(y, yp, seed ^ 2);
        let gp = random_cell(yp, y, seed ^ 3);
        let lhs = p.tensor2(&fp, &gp).unwrap().after(&p.tensor2(&f, &g).unwrap()).unwrap();
        let rhs = p.tensor2(&fp.after(&f).unwrap(), &gp.after(&g).unwrap()).unwrap();
        prop_assert!(lhs.distance(&rhs) < 1e-12);
        prop_assert!(p.tensor2(&f, &g).unwrap().dagger().distance(&p.tensor2(&f.dagger(), &g.dagger()).unwrap()) < 1e-15);
        prop_assert!(fp.after(&f).unwrap().dagger().distance(&f.dagger().after(&fp.dagger()).unwrap()) < 1e-15);
    }

    #[test]
    fn associators_of_ising_are_unitary(m in prop::array::uniform3(prop::array::uniform3(0usize..2))) {
        let p = qsys_core::twocat::ising();
        let c: Vec<OneCell> = m.iter().map(|v| small_cell(&p, 0, 0, v.to_vec())).collect();
        let a = p.associator(&c[0], &c[1], &c[2]).unwrap();
        prop_assert!(qsys_core::category::unitarity(&p, &a).unwrap() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn separability_projector_and_relative_tensor(seed in any::<u64>(), z3 in any::<bool>()) {
        let (p, cat) = if z3 { z3_cat(0) } else { z2_cat(0) };
        let (x, y) = random_pair(&cat, seed);
        let tol = Tolerance::default();
        let proj = sep_projector(&p, &x, &y).unwrap();
        prop_assert!(proj.dagger().distance(&proj) < 1e-12);
        prop_assert!(proj.after(&proj).unwrap().distance(&proj) < 1e-12);
        let rt = rel_tensor(&p, &x, &y, tol).unwrap();
        let u = &rt.u;
        prop_assert!(u.dagger().after(u).unwrap().distance(&proj) < 1e-9);
        prop_assert!(u.after(&u.dagger()).unwrap().distance(&TwoCell::identity(&rt.result.x)) < 1e-9);
        let rep = check_bimodule(&p, &rt.result, tol).unwrap();
        prop_assert!(rep.passed(), "{}", rep);
    }

    #[test]
    fn dag_functor_respects_composition_and_dagger(seed in any::<u64>(), m in prop::array::uniform3(prop::array::uniform2(0usize..3))) {
        let p = Arc::new(qsys_core::twocat::vec_z2());
        let f = sign_z2(&p, -1.0).unwrap();
        let c: Vec<OneCell> = m.iter().map(|v| small_cell(&p, 0, 0, v.to_vec())).collect();
        let g = random_cell(&c[0], &c[1], seed);
        let h = random_cell(&c[1], &c[2], seed ^ 9);
        let fg = Functor2::two(&f, &h.after(&g).unwrap()).unwrap();
        prop_assert!(fg.distance(&f.two_cell(&h).unwrap().after(&f.two_cell(&g).unwrap()).unwrap()) < 1e-12);
        prop_assert_eq!(f.two_cell(&g.dagger()).unwrap(), f.two_cell(&g).unwrap().dagger());
    }

    #[test]
    fn transported_modification_commutes_with_dagger(a in -2.0f64..2.0, b in -2.0f64..2.0, t in -3.0f64..3.0) {
        let s = Suite::z2(Tolerance::default(), 0).unwrap();
        let src = Arc::new(qsys_core::qsystem::QSysCat::new(s.z2.clone(), s.z2_list().unwrap(), s.tol, 0).unwrap());
        let q_id = QSysFunctor::new(s.id.clone(), src.clone(), src.clone()).unwrap();
        let t_phi = QSysTransformation::new(&s.phi2, &q_id, &q_id).unwrap();
        let cell = s.n.at(0).unwrap();
        let n = Modification::<Presentation>::new(vec![TwoCell::new(
            cell.dom.clone(),
            cell.cod.clone(),
            vec![CMat::scalar(C64::new(a, t)), CMat::scalar(C64::new(b, -t))],
        ).unwrap()]);
        let qn = qsys_modification(&n, &t_phi, &t_phi).unwrap();
        let qnd = qsys_modification(&n.dagger(&*s.z2), &t_phi, &t_phi).unwrap();
        prop_assert!(qnd.distance(&*src, &qn.dagger(&*src)) < 1e-13);
    }
}
