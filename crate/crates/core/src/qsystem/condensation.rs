use std::sync::Arc;

use super::cat::Intertwiner;
use super::checks::{check_bimodule, check_intertwiner, check_qsystem};
use super::reltensor::rel_tensor;
use super::{trivial_qsystem, unit_bimodule, Bimodule, QSystem};
use crate::error::{Error, Result};
use crate::linalg::Tolerance;
use crate::report::Report;
use crate::twocat::{Presentation, TwoCell};

const A_COND: &str = "dagger condensation ε ⋆ δ = 1";
const A_DOM: &str = "ι_C is dominant";

/// A dagger condensation of `1_b` onto `Q` in `QSys(C)`.
#[derive(Clone, Debug)]
pub struct Condensation {
    /// `Q` as a `1_b – Q` bimodule.
    pub x: Arc<Bimodule>,
    /// `Q` as a `Q – 1_b` bimodule.
    pub x_dual: Arc<Bimodule>,
    /// `ε : X• ⊗_{1_b} X ⇒ Q`, given by `m`.
    pub epsilon: Intertwiner,
    pub delta: Intertwiner,
    pub report: Report,
}

/// Builds `(X, X•, ε = m, δ = ε†)` and checks `ε ⋆ δ = id_Q`, that `ε` is a
/// bimodule intertwiner and that both bimodules are valid.
pub fn condensation_from_qsystem(
    p: &Presentation,
    q: &Arc<QSystem>,
    tol: Tolerance,
) -> Result<Condensation> {
    if !check_qsystem(p, q, tol)?.passed() {
        return Err(Error::Structural(format!(
            "`{}` is not a Q-system within tolerance",
            q.name
        )));
    }
    let t = tol.bound(0.0);
    let triv = trivial_qsystem(p, q.base)?;
    let x = Bimodule::new(
        p,
        format!("{}_X", q.name),
        triv.clone(),
        q.clone(),
        q.q.clone(),
        p.lunitor(&q.q)?,
        q.m.clone(),
    )?;
    let x_dual = Bimodule::new(
        p,
        format!("{}_X•", q.name),
        q.clone(),
        triv,
        q.q.clone(),
        q.m.clone(),
        p.runitor(&q.q)?,
    )?;
    let rt = rel_tensor(p, &x_dual, &x, tol)?;
    let unit = unit_bimodule(q);
    let eps = q.m.after(&rt.u.dagger())?;
    let delta = eps.dagger();

    let mut report = Report::new();
    report.extend_prefixed("X", check_bimodule(p, &x, tol)?);
    report.extend_prefixed("X•", check_bimodule(p, &x_dual, tol)?);
    report.extend_prefixed(
        "epsilon",
        check_intertwiner(p, &eps, &rt.result, &unit, tol)?,
    );
    report.push(
        "epsilon-delta",
        A_COND,
        eps.after(&delta)?.distance(&TwoCell::identity(&q.q)),
        t,
    );
    report.push("delta-adjoint", A_DOM, delta.distance(&eps.dagger()), t);

    Ok(Condensation {
        x,
        x_dual,
        epsilon: Intertwiner {
            dom: rt.result.clone(),
            cod: unit.clone(),
            cell: eps,
        },
        delta: Intertwiner {
            dom: unit,
            cod: rt.result,
            cell: delta,
        },
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qsystem::group_algebra;
    use crate::twocat::{fibonacci, vec_z2};

    #[test]
    fn trivial_and_group_algebra_condense() {
        let p = vec_z2();
        for q in [
            trivial_qsystem(&p, 0).unwrap(),
            group_algebra(&p, 0, 1.0).unwrap(),
        ] {
            let c = condensation_from_qsystem(&p, &q, Tolerance::default()).unwrap();
            assert!(c.report.passed(), "{}", c.report);
            assert!(c.report.get("epsilon-delta").unwrap().residual < 1e-12);
            assert_eq!(c.report.get("delta-adjoint").unwrap().residual, 0.0);
        }
        let f = fibonacci();
        let c =
            condensation_from_qsystem(&f, &trivial_qsystem(&f, 0).unwrap(), Tolerance::default())
                .unwrap();
        assert_eq!(c.epsilon.cell, TwoCell::identity(&c.epsilon.cod.x));
    }

    #[test]
    fn invalid_qsystem_is_rejected() {
        let p = vec_z2();
        let q = group_algebra(&p, 0, 1.1).unwrap();
        assert!(condensation_from_qsystem(&p, &q, Tolerance::default()).is_err());
    }
}
