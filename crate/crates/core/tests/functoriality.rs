use std::sync::Arc;

use qsys_core::functoriality::{
    check_functor, check_modification, check_transformation, compose_functors, forget_z2,
    fun_left_unitor, fun_right_unitor, functor_deviation, hcompose_trans, inclusion_vec_z2,
    interchanger, iota, qsys_functor_skeletal, whisker_left, whisker_right, Composite, FunTensor,
    QSysFunctor, QSysTransformation, Suite, Transformation,
};
use qsys_core::qsystem::{complete, Completion, QSysCat};
use qsys_core::{Tolerance, C64};

fn suite() -> Suite {
    Suite::z2(Tolerance::default(), 11).unwrap()
}

#[test]
fn z2_suite_passes() {
    let r = suite().run();
    assert!(r.len() > 500);
    assert!(
        r.passed(),
        "{}",
        r.failures()
            .map(|c| c.id.clone())
            .collect::<Vec<_>>()
            .join("\n")
    );
}

#[test]
fn perturbation_only_touches_the_sign_functor() {
    let r = Suite::by_name("z2-perturbed", Tolerance::default(), 11)
        .unwrap()
        .run();
    assert!(!r.passed());
    assert!(r
        .get("functor/sign/tensorator-unitary/g,g")
        .is_some_and(|c| !c.pass));
    for id in [
        "functor/incl/hexagon/1,1,1",
        "functor/forget/hexagon/g,g,g",
        "transformation/chi/tensor/g,g",
    ] {
        assert!(r.get(id).is_some_and(|c| c.pass), "{id}");
    }
    for c in r.failures() {
        assert!(
            c.id.contains("sign") || c.id.ends_with("/error"),
            "{}",
            c.id
        );
    }
}

#[test]
fn unknown_suite_is_rejected() {
    assert!(Suite::by_name("nope", Tolerance::default(), 0).is_err());
}

#[test]
fn broken_transformation_fails_before_and_after_transport() {
    let s = suite();
    let mut comp1 = s.sign_to_id.comp1.clone();
    comp1[1] = comp1[1].scale(C64::new(0.0, -1.0));
    let bad = Transformation::new(
        "bad",
        s.sign.clone(),
        s.id.clone(),
        s.sign_to_id.comp0.clone(),
        comp1,
    )
    .unwrap();
    let z2 = &*s.z2;
    let r = check_transformation(z2, z2, &*s.sign, &*s.id, &bad, s.tol).unwrap();
    assert!(r.get("tensor/g,g").is_some_and(|c| c.residual > 1.0));

    let src = Arc::new(QSysCat::new(s.z2.clone(), s.z2_list().unwrap(), s.tol, 0).unwrap());
    let tgt = Arc::new(
        QSysCat::new(
            s.z2.clone(),
            Suite::closure(&s.z2_list().unwrap(), &[&s.sign]).unwrap(),
            s.tol,
            0,
        )
        .unwrap(),
    );
    let qf = QSysFunctor::new(s.sign.clone(), src.clone(), tgt.clone()).unwrap();
    let qg = QSysFunctor::new(s.id.clone(), src.clone(), tgt.clone()).unwrap();
    let qbad = QSysTransformation::new(&bad, &qf, &qg).unwrap();
    let r = check_transformation(&*src, &*tgt, &qf, &qg, &qbad, s.tol);
    assert!(!matches!(r, Ok(ref rep) if rep.passed()));
}

#[test]
fn skeletal_composition_is_associative_and_unital() {
    let s = suite();
    let (f, g, h) = (&*s.incl, &*s.sign, &*s.forget);
    let left = compose_functors(&compose_functors(h, g).unwrap(), f).unwrap();
    let right = compose_functors(h, &compose_functors(g, f).unwrap()).unwrap();
    assert!(functor_deviation(&left, &right) < 1e-12);
    assert_eq!(
        functor_deviation(&compose_functors(&s.id, g).unwrap(), g),
        0.0
    );
    let ss = compose_functors(g, g).unwrap();
    assert!(functor_deviation(&ss, &s.id) < 1e-15);
}

#[test]
fn vec_functors_have_expected_shapes() {
    let s = suite();
    let incl = inclusion_vec_z2(&s.vec, &s.z2).unwrap();
    let forget = forget_z2(&s.z2, &s.vec).unwrap();
    let fi = compose_functors(&forget, &incl).unwrap();
    assert_eq!(fi.cell_map[0].mult, vec![1]);
    assert!(check_functor(&*s.vec, &*s.vec, &fi, s.tol)
        .unwrap()
        .passed());
}

#[test]
fn inclusion_into_the_completion_is_a_functor() {
    let s = suite();
    for p in [&s.vec, &s.z2] {
        let (comp, f) = iota(p, s.tol, 0).unwrap();
        let r = check_functor(&**p, &*comp.presentation, &f, s.tol).unwrap();
        assert!(r.passed(), "{r}");
    }
}

#[test]
fn skeletal_qsys_of_sign_is_a_functor() {
    let s = suite();
    let src = Arc::new(complete(&s.z2, &s.z2_list().unwrap(), s.tol, 0).unwrap());
    let tgt_list = Suite::closure(&s.z2_list().unwrap(), &[&s.sign]).unwrap();
    let tgt: Arc<Completion> = Arc::new(complete(&s.z2, &tgt_list, s.tol, 0).unwrap());
    let qf = QSysFunctor::new(s.sign.clone(), src.cat.clone(), tgt.cat.clone()).unwrap();
    let f = qsys_functor_skeletal(&qf, &src, &tgt).unwrap();
    let r = check_functor(&*src.presentation, &*tgt.presentation, &f, s.tol).unwrap();
    assert!(r.passed(), "{r}");
}

#[test]
fn whiskers_composites_and_interchanger() {
    let s = suite();
    let z2 = &*s.z2;
    let (sign, id) = (&*s.sign, &*s.id);
    let phi = &s.sign_to_id;
    let gamma = &s.char_g;

    let gphi = whisker_left(z2, z2, id, sign, id, phi);
    let gf = Composite {
        g: id,
        f: sign,
        c: z2,
    };
    let gfp = Composite {
        g: id,
        f: id,
        c: z2,
    };
    assert!(check_transformation(z2, z2, &gf, &gfp, &gphi, s.tol)
        .unwrap()
        .passed());
    let gam_f = whisker_right(gamma, sign);
    assert!(check_transformation(z2, z2, &gf, &gf, &gam_f, s.tol)
        .unwrap()
        .passed());

    let hc = hcompose_trans(z2, z2, (sign, id, phi), (id, id, gamma));
    let r = check_transformation(z2, z2, &gf, &gfp, &hc, s.tol).unwrap();
    assert!(r.passed(), "{r}");

    let gam_fp = whisker_right(gamma, id);
    let gpphi = whisker_left(z2, z2, id, sign, id, phi);
    let left = FunTensor {
        f: &gf,
        g: &gfp,
        h: &gfp,
        phi: &gphi,
        psi: &gam_fp,
        a: z2,
        b: z2,
    };
    let right = FunTensor {
        f: &gf,
        g: &gf,
        h: &gfp,
        phi: &gam_f,
        psi: &gpphi,
        a: z2,
        b: z2,
    };
    let chi = interchanger(z2, phi, gamma).unwrap();
    let r = check_modification(z2, z2, &gf, &gfp, &left, &right, &chi, s.tol).unwrap();
    assert!(r.passed(), "{r}");
}

#[test]
fn unitors_of_transformations_are_modifications() {
    let s = suite();
    let z2 = &*s.z2;
    let (sign, id) = (&*s.sign, &*s.id);
    let phi = &s.sign_to_id;
    let id_f = Transformation::identity(&s.sign).unwrap();
    let id_g = Transformation::identity(&s.id).unwrap();
    let left = FunTensor {
        f: sign,
        g: sign,
        h: id,
        phi: &id_f,
        psi: phi,
        a: z2,
        b: z2,
    };
    let right = FunTensor {
        f: sign,
        g: id,
        h: id,
        phi,
        psi: &id_g,
        a: z2,
        b: z2,
    };
    let l = fun_left_unitor(z2, z2, phi).unwrap();
    let r = fun_right_unitor(z2, z2, phi).unwrap();
    assert!(check_modification(z2, z2, sign, id, &left, phi, &l, s.tol)
        .unwrap()
        .passed());
    assert!(check_modification(z2, z2, sign, id, &right, phi, &r, s.tol)
        .unwrap()
        .passed());
}
