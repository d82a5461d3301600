use std::sync::Arc;

use super::{unit_bimodule, Bimodule};
use crate::error::{Error, Result};
use crate::linalg::Tolerance;
use crate::twocat::{Presentation, TwoCell};

/// `X ⊗_Q Y` with its coisometry `u : X⊗Y ⇒ X⊗_Q Y`.
#[derive(Clone, Debug)]
pub struct RelTensor {
    pub result: Arc<Bimodule>,
    pub u: TwoCell,
}

fn check_middle(x: &Bimodule, y: &Bimodule) -> Result<()> {
    if !x.right.same_as(&y.left) {
        return Err(Error::QSystemMismatch(format!(
            "right Q-system of `{}` is not the left Q-system of `{}`",
            x.label, y.label
        )));
    }
    Ok(())
}

/// `p = (id_X ⊗ λ_Y) ⋆ α_{X,Q,Y} ⋆ (ρ_X† ⊗ id_Y)` on `X ⊗ Y`.
pub fn sep_projector(p: &Presentation, x: &Bimodule, y: &Bimodule) -> Result<TwoCell> {
    check_middle(x, y)?;
    let idx = TwoCell::identity(&x.x);
    let idy = TwoCell::identity(&y.x);
    p.tensor2(&idx, &y.lam)?
        .after(&p.associator(&x.x, &x.right.q, &y.x)?)?
        .after(&p.tensor2(&x.rho.dagger(), &idy)?)
}

/// Splits the separability projector and transports the outer actions:
/// `λ = u ⋆ (λ_X ⊗ id) ⋆ α† ⋆ (id_P ⊗ u†)`, `ρ = u ⋆ (id ⊗ ρ_Y) ⋆ α ⋆ (u† ⊗ id_R)`.
pub fn rel_tensor(
    p: &Presentation,
    x: &Bimodule,
    y: &Bimodule,
    tol: Tolerance,
) -> Result<RelTensor> {
    let proj = sep_projector(p, x, y)?;
    let (z, u) = p.split_idempotent(&proj, tol)?;
    let ud = u.dagger();
    let (pq, rq) = (&x.left.q, &y.right.q);
    let lam = u
        .after(&p.tensor2(&x.lam, &TwoCell::identity(&y.x))?)?
        .after(&p.associator(pq, &x.x, &y.x)?.dagger())?
        .after(&p.tensor2(&TwoCell::identity(pq), &ud)?)?;
    let rho = u
        .after(&p.tensor2(&TwoCell::identity(&x.x), &y.rho)?)?
        .after(&p.associator(&x.x, &y.x, rq)?)?
        .after(&p.tensor2(&ud, &TwoCell::identity(rq))?)?;
    let result = Bimodule::new_unchecked(
        format!("({}⊗{})", x.label, y.label),
        x.left.clone(),
        y.right.clone(),
        z,
        lam,
        rho,
    );
    Ok(RelTensor { result, u })
}

/// `λ^P_X = λ_X ⋆ u_{P,X}† : P ⊗_P X ⇒ X`.
pub fn unitor_left(p: &Presentation, x: &Arc<Bimodule>, tol: Tolerance) -> Result<TwoCell> {
    let unit = unit_bimodule(&x.left);
    let rt = rel_tensor(p, &unit, x, tol)?;
    x.lam.after(&rt.u.dagger())
}

/// `ρ^Q_X = ρ_X ⋆ u_{X,Q}† : X ⊗_Q Q ⇒ X`.
pub fn unitor_right(p: &Presentation, x: &Arc<Bimodule>, tol: Tolerance) -> Result<TwoCell> {
    let unit = unit_bimodule(&x.right);
    let rt = rel_tensor(p, x, &unit, tol)?;
    x.rho.after(&rt.u.dagger())
}

/// `u_{L,M⊗N} ⋆ (id_L ⊗ u_{M,N}) ⋆ α_{L,M,N} ⋆ (u_{L,M}† ⊗ id_N) ⋆ u_{L⊗M,N}†`.
pub(crate) fn associator_from(
    p: &Presentation,
    l: &Bimodule,
    n: &Bimodule,
    m: &Bimodule,
    lm: &RelTensor,
    mn: &RelTensor,
    lm_n: &RelTensor,
    l_mn: &RelTensor,
) -> Result<TwoCell> {
    l_mn.u
        .after(&p.tensor2(&TwoCell::identity(&l.x), &mn.u)?)?
        .after(&p.associator(&l.x, &m.x, &n.x)?)?
        .after(&p.tensor2(&lm.u.dagger(), &TwoCell::identity(&n.x))?)?
        .after(&lm_n.u.dagger())
}

/// The associator `(L ⊗_Q M) ⊗_R N ⇒ L ⊗_Q (M ⊗_R N)`.
pub fn qsys_associator(
    p: &Presentation,
    l: &Bimodule,
    m: &Bimodule,
    n: &Bimodule,
    tol: Tolerance,
) -> Result<TwoCell> {
    let lm = rel_tensor(p, l, m, tol)?;
    let mn = rel_tensor(p, m, n, tol)?;
    let lm_n = rel_tensor(p, &lm.result, n, tol)?;
    let l_mn = rel_tensor(p, l, &mn.result, tol)?;
    associator_from(p, l, n, m, &lm, &mn, &lm_n, &l_mn)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::is_unitary;
    use crate::qsystem::{check_bimodule, group_algebra, trivial_bimodule, trivial_qsystem};
    use crate::twocat::{vec_z2, OneCell};

    #[test]
    fn trivial_middle_gives_identity_projector() {
        let p = vec_z2();
        let t = trivial_qsystem(&p, 0).unwrap();
        let x = OneCell::from_mult(&p, 0, 0, vec![1, 2]).unwrap();
        let y = OneCell::from_mult(&p, 0, 0, vec![1, 1]).unwrap();
        let bx = trivial_bimodule(&p, t.clone(), t.clone(), &x).unwrap();
        let by = trivial_bimodule(&p, t.clone(), t, &y).unwrap();
        let proj = sep_projector(&p, &bx, &by).unwrap();
        assert_eq!(proj, TwoCell::identity(&p.tensor(&x, &y).unwrap()));
        let rt = rel_tensor(&p, &bx, &by, Tolerance::default()).unwrap();
        assert_eq!(rt.u, proj);
    }

    #[test]
    fn algebra_over_itself() {
        let p = vec_z2();
        let q = group_algebra(&p, 0, 1.0).unwrap();
        let u = unit_bimodule(&q);
        let proj = sep_projector(&p, &u, &u).unwrap();
        let (z, _) = p.split_idempotent(&proj, Tolerance::default()).unwrap();
        assert_eq!(z.mult, vec![1, 1]);
        let rt = rel_tensor(&p, &u, &u, Tolerance::default()).unwrap();
        assert_eq!(rt.result.x, q.q);
        assert!(
            check_bimodule(&p, &rt.result, Tolerance::default())
                .unwrap()
                .max_residual()
                < 1e-12
        );
        let l = unitor_left(&p, &u, Tolerance::default()).unwrap();
        let r = unitor_right(&p, &u, Tolerance::default()).unwrap();
        assert!(l.distance(&r) < 1e-12);
        for b in &l.blocks {
            assert!(is_unitary(b, Tolerance::default()).unwrap().value < 1e-12);
        }
        let a = qsys_associator(&p, &u, &u, &u, Tolerance::default()).unwrap();
        for b in &a.blocks {
            assert_eq!(b.shape(), (1, 1));
            assert!((b[(0, 0)].norm() - 1.0).abs() < 1e-12);
        }
    }
}
