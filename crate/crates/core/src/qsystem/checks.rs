use super::{Bimodule, QSystem};
use crate::error::{Error, Result};
use crate::linalg::{Tolerance, C64};
use crate::report::Report;
use crate::twocat::{Presentation, TwoCell};

const A_ASSOC: &str = "Q-system associativity (Q1)";
const A_UNIT: &str = "Q-system unitality (Q2)";
const A_FROB: &str = "Q-system Frobenius (Q3)";
const A_SEP: &str = "Q-system separability (Q4)";
const A_BASSOC: &str = "bimodule associativity (B1)";
const A_BUNIT: &str = "bimodule unitality (B2)";
const A_BFROB: &str = "bimodule Frobenius (B3)";
const A_BSEP: &str = "bimodule separability (B4)";
const A_INTW: &str = "bimodule intertwiner";

/// `i† ⋆ i` as a scalar on the simple unit `1_b`.
pub fn unit_scalar(q: &QSystem) -> C64 {
    q.i.dagger()
        .after(&q.i)
        .map(|c| c.trace())
        .unwrap_or(C64::new(f64::NAN, 0.0))
}

/// Residuals of (Q1)–(Q4), each side of (Q2) and (Q3) separately, plus the
/// positivity of `i† ⋆ i`.
pub fn check_qsystem(p: &Presentation, q: &QSystem, tol: Tolerance) -> Result<Report> {
    let t = tol.bound(0.0);
    let (qc, m, i) = (&q.q, &q.m, &q.i);
    let id = TwoCell::identity(qc);
    let md = m.dagger();
    let mut r = Report::new();

    let lhs = m.after(&p.tensor2(m, &id)?)?;
    let rhs = m
        .after(&p.tensor2(&id, m)?)?
        .after(&p.associator(qc, qc, qc)?)?;
    r.push("Q1", A_ASSOC, lhs.distance(&rhs), t);

    let l = m.after(&p.tensor2(i, &id)?)?;
    r.push("Q2-left", A_UNIT, l.distance(&p.lunitor(qc)?), t);
    let rr = m.after(&p.tensor2(&id, i)?)?;
    r.push("Q2-right", A_UNIT, rr.distance(&p.runitor(qc)?), t);

    let mdm = md.after(m)?;
    let a = p.associator(qc, qc, qc)?;
    let f1 = p.tensor2(&id, m)?.after(&a)?.after(&p.tensor2(&md, &id)?)?;
    r.push("Q3-left", A_FROB, f1.distance(&mdm), t);
    let f2 = p
        .tensor2(m, &id)?
        .after(&a.dagger())?
        .after(&p.tensor2(&id, &md)?)?;
    r.push("Q3-right", A_FROB, f2.distance(&mdm), t);

    r.push("Q4", A_SEP, m.after(&md)?.distance(&id), t);

    let s = unit_scalar(q);
    r.push("unit-positivity", A_UNIT, s.im.abs() + (-s.re).max(0.0), t);
    Ok(r)
}

/// Residuals of (B1)–(B4) for a `P–Q` bimodule.
pub fn check_bimodule(p: &Presentation, x: &Bimodule, tol: Tolerance) -> Result<Report> {
    let t = tol.bound(0.0);
    let (pq, qq, xc) = (&x.left.q, &x.right.q, &x.x);
    let (lam, rho) = (&x.lam, &x.rho);
    let (mp, mq) = (&x.left.m, &x.right.m);
    let (idp, idq, idx) = (
        TwoCell::identity(pq),
        TwoCell::identity(qq),
        TwoCell::identity(xc),
    );
    let mut r = Report::new();

    let lhs = lam.after(&p.tensor2(mp, &idx)?)?;
    let rhs = lam
        .after(&p.tensor2(&idp, lam)?)?
        .after(&p.associator(pq, pq, xc)?)?;
    r.push("B1-left", A_BASSOC, lhs.distance(&rhs), t);
    let lhs = rho
        .after(&p.tensor2(&idx, mq)?)?
        .after(&p.associator(xc, qq, qq)?)?;
    let rhs = rho.after(&p.tensor2(rho, &idq)?)?;
    r.push("B1-right", A_BASSOC, lhs.distance(&rhs), t);
    let lhs = lam
        .after(&p.tensor2(&idp, rho)?)?
        .after(&p.associator(pq, xc, qq)?)?;
    let rhs = rho.after(&p.tensor2(lam, &idq)?)?;
    r.push("B1-middle", A_BASSOC, lhs.distance(&rhs), t);

    let l = lam.after(&p.tensor2(&x.left.i, &idx)?)?;
    r.push("B2-left", A_BUNIT, l.distance(&p.lunitor(xc)?), t);
    let rr = rho.after(&p.tensor2(&idx, &x.right.i)?)?;
    r.push("B2-right", A_BUNIT, rr.distance(&p.runitor(xc)?), t);

    let ll = lam.dagger().after(lam)?;
    let f = p
        .tensor2(&idp, lam)?
        .after(&p.associator(pq, pq, xc)?)?
        .after(&p.tensor2(&mp.dagger(), &idx)?)?;
    r.push("B3-left", A_BFROB, f.distance(&ll), t);
    let rr = rho.dagger().after(rho)?;
    let f = p
        .tensor2(rho, &idq)?
        .after(&p.associator(xc, qq, qq)?.dagger())?
        .after(&p.tensor2(&idx, &mq.dagger())?)?;
    r.push("B3-right", A_BFROB, f.distance(&rr), t);

    r.push(
        "B4-left",
        A_BSEP,
        lam.after(&lam.dagger())?.distance(&idx),
        t,
    );
    r.push(
        "B4-right",
        A_BSEP,
        rho.after(&rho.dagger())?.distance(&idx),
        t,
    );
    Ok(r)
}

/// Left and right equivariance residuals of `f : X ⇒ Y`.
pub fn check_intertwiner(
    p: &Presentation,
    f: &TwoCell,
    x: &Bimodule,
    y: &Bimodule,
    tol: Tolerance,
) -> Result<Report> {
    if !x.left.same_as(&y.left) || !x.right.same_as(&y.right) {
        return Err(Error::QSystemMismatch(
            "intertwiner between bimodules over different Q-systems".into(),
        ));
    }
    if f.dom != x.x || f.cod != y.x {
        return Err(Error::DomainMismatch(
            "intertwiner does not run X ⇒ Y".into(),
        ));
    }
    let t = tol.bound(0.0);
    let (l, r) = equivariance_defects(p, f, x, y)?;
    let mut rep = Report::new();
    rep.push("intertwiner-left", A_INTW, l.max_abs(), t);
    rep.push("intertwiner-right", A_INTW, r.max_abs(), t);
    Ok(rep)
}

/// `f ⋆ λ_X − λ_Y ⋆ (id ⊗ f)` and `f ⋆ ρ_X − ρ_Y ⋆ (f ⊗ id)`.
pub(crate) fn equivariance_defects(
    p: &Presentation,
    f: &TwoCell,
    x: &Bimodule,
    y: &Bimodule,
) -> Result<(TwoCell, TwoCell)> {
    let idp = TwoCell::identity(&x.left.q);
    let idq = TwoCell::identity(&x.right.q);
    let l = f.after(&x.lam)?.sub(&y.lam.after(&p.tensor2(&idp, f)?)?)?;
    let r = f.after(&x.rho)?.sub(&y.rho.after(&p.tensor2(f, &idq)?)?)?;
    Ok((l, r))
}

#[cfg(test)]
mod tests {
    use super::super::{trivial_bimodule, trivial_qsystem, unit_bimodule};
    use super::*;
    use crate::linalg::is_unitary;
    use crate::qsystem::group_algebra;
    use crate::twocat::OneCell;
    use crate::twocat::{fibonacci, ising, vec_z2};

    #[test]
    fn trivial_qsystems_pass_everywhere() {
        for p in [vec_z2(), fibonacci(), ising()] {
            let q = trivial_qsystem(&p, 0).unwrap();
            assert_eq!(q.base, 0);
            let r = check_qsystem(&p, &q, Tolerance::default()).unwrap();
            assert!(r.max_residual() < 1e-12);
            assert!(
                is_unitary(&q.i.blocks[0], Tolerance::default())
                    .unwrap()
                    .pass
            );
        }
    }

    #[test]
    fn group_algebra_passes() {
        let p = vec_z2();
        let q = group_algebra(&p, 0, 1.0).unwrap();
        let r = check_qsystem(&p, &q, Tolerance::default()).unwrap();
        assert!(r.passed(), "{r}");
        assert!(r.max_residual() < 1e-12);
        assert!((unit_scalar(&q).re - 2.0).abs() < 1e-12);
    }

    #[test]
    fn scaled_multiplication_fails_separability() {
        let p = vec_z2();
        let q = group_algebra(&p, 0, 1.1).unwrap();
        let r = check_qsystem(&p, &q, Tolerance::default()).unwrap();
        let q4 = r.get("Q4").unwrap();
        assert!(!q4.pass);
        assert!((q4.residual - 0.21).abs() < 1e-12);
    }

    #[test]
    fn unit_and_trivial_bimodules_pass() {
        let p = vec_z2();
        let q = group_algebra(&p, 0, 1.0).unwrap();
        let r = check_bimodule(&p, &unit_bimodule(&q), Tolerance::default()).unwrap();
        assert!(r.passed(), "{r}");
        let t = trivial_qsystem(&p, 0).unwrap();
        let g = OneCell::simple(&p, 1);
        let x = trivial_bimodule(&p, t.clone(), t, &g).unwrap();
        assert!(
            check_bimodule(&p, &x, Tolerance::default())
                .unwrap()
                .max_residual()
                < 1e-15
        );
        let r =
            check_intertwiner(&p, &TwoCell::identity(&x.x), &x, &x, Tolerance::default()).unwrap();
        assert_eq!(r.max_residual(), 0.0);
    }
}
