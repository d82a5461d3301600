use super::{Functor2, Modification, One, Transformation2};
use crate::category::{chain, unitarity, TwoCategory};
use crate::error::Result;
use crate::linalg::Tolerance;
use crate::report::Report;

const A_HEX: &str = "functor hexagon";
const A_TRI: &str = "functor triangle";
const A_UNI: &str = "coheretors are unitary";
const A_FUNC: &str = "functor on 2-cells";
const A_NAT: &str = "naturality of the tensorator";
const A_T_TENSOR: &str = "transformation vs tensorators";
const A_T_UNIT: &str = "transformation vs unitors";
const A_T_NAT: &str = "transformation naturality";
const A_T_UNI: &str = "transformation components are unitary";
const A_MOD: &str = "modification sliding";

/// Simples of `c` with the positions of their source and target.
fn all_simples<C: TwoCategory>(c: &C) -> Result<Vec<(usize, usize, One<C>)>> {
    let objs = c.objects();
    let mut out = Vec::new();
    for (i, a) in objs.iter().enumerate() {
        for (j, b) in objs.iter().enumerate() {
            for x in c.simples(a, b)? {
                out.push((i, j, x));
            }
        }
    }
    Ok(out)
}

fn composable_pairs<C: TwoCategory>(s: &[(usize, usize, One<C>)]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (p, x) in s.iter().enumerate() {
        for (q, y) in s.iter().enumerate() {
            if x.1 == y.0 {
                out.push((p, q));
            }
        }
    }
    out
}

/// Hexagon, triangles, unitarity of `F²` and `F¹`, and functoriality and
/// naturality on the endomorphisms of composites of two simples.
pub fn check_functor<A, B, F>(a: &A, b: &B, f: &F, tol: Tolerance) -> Result<Report>
where
    A: TwoCategory,
    B: TwoCategory,
    F: Functor2<A, B> + ?Sized,
{
    let t = tol.bound(0.0);
    let mut r = Report::new();
    let objs = a.objects();
    for o in &objs {
        let name = a.obj_label(o);
        r.push(
            format!("unitor-unitary/{name}"),
            A_UNI,
            unitarity(b, &f.unitor(o)?)?,
            t,
        );
    }
    let simples = all_simples(a)?;
    let pairs = composable_pairs::<A>(&simples);
    let label = |k: usize| a.one_label(&simples[k].2);

    for &(p, q) in &pairs {
        let (x, y) = (&simples[p].2, &simples[q].2);
        r.push(
            format!("tensorator-unitary/{},{}", label(p), label(q)),
            A_UNI,
            unitarity(b, &f.tensorator(x, y)?)?,
            t,
        );
    }

    for &(p, q) in &pairs {
        for (s, z) in simples
            .iter()
            .enumerate()
            .filter(|(_, z)| z.0 == simples[q].1)
        {
            let (x, y, z) = (&simples[p].2, &simples[q].2, &z.2);
            let (fx, fy, fz) = (f.one(x)?, f.one(y)?, f.one(z)?);
            let xy = a.tensor(x, y)?;
            let yz = a.tensor(y, z)?;
            let lhs = chain(
                b,
                &[
                    f.two(&a.associator(x, y, z)?)?,
                    f.tensorator(&xy, z)?,
                    b.hcomp(&f.tensorator(x, y)?, &b.id2(&fz))?,
                ],
            )?;
            let rhs = chain(
                b,
                &[
                    f.tensorator(x, &yz)?,
                    b.hcomp(&b.id2(&fx), &f.tensorator(y, z)?)?,
                    b.associator(&fx, &fy, &fz)?,
                ],
            )?;
            r.push(
                format!("hexagon/{},{},{}", label(p), label(q), label(s)),
                A_HEX,
                b.distance(&lhs, &rhs),
                t,
            );
        }
    }

    for (p, (i, j, x)) in simples.iter().enumerate() {
        let fx = f.one(x)?;
        let (oa, ob) = (&objs[*i], &objs[*j]);
        let right = chain(
            b,
            &[
                f.two(&a.runitor(x)?)?,
                f.tensorator(x, &a.unit(ob)?)?,
                b.hcomp(&b.id2(&fx), &f.unitor(ob)?)?,
            ],
        )?;
        r.push(
            format!("triangle-right/{}", label(p)),
            A_TRI,
            b.distance(&right, &b.runitor(&fx)?),
            t,
        );
        let left = chain(
            b,
            &[
                f.two(&a.lunitor(x)?)?,
                f.tensorator(&a.unit(oa)?, x)?,
                b.hcomp(&f.unitor(oa)?, &b.id2(&fx))?,
            ],
        )?;
        r.push(
            format!("triangle-left/{}", label(p)),
            A_TRI,
            b.distance(&left, &b.lunitor(&fx)?),
            t,
        );
        r.push(
            format!("identity/{}", label(p)),
            A_FUNC,
            b.distance(&f.two(&a.id2(x))?, &b.id2(&fx)),
            t,
        );
    }

    for &(p, q) in &pairs {
        let (x, y) = (&simples[p].2, &simples[q].2);
        let xy = a.tensor(x, y)?;
        let basis = a.hom_basis(&xy, &xy)?;
        let w = a.unit(&objs[simples[q].1])?;
        let fw = f.one(&w)?;
        let f2 = f.tensorator(&xy, &w)?;
        let mut func = 0.0f64;
        let mut nat = 0.0f64;
        for (k, g) in basis.iter().enumerate() {
            let fg = f.two(g)?;
            func = func.max(b.distance(&f.two(&a.dagger(g))?, &b.dagger(&fg)));
            let h = &basis[(k + 1) % basis.len()];
            func = func.max(b.distance(&f.two(&a.vcomp(h, g)?)?, &b.vcomp(&f.two(h)?, &fg)?));
            let lhs = b.vcomp(&f.two(&a.hcomp(g, &a.id2(&w))?)?, &f2)?;
            let rhs = b.vcomp(&f2, &b.hcomp(&fg, &b.id2(&fw))?)?;
            nat = nat.max(b.distance(&lhs, &rhs));
        }
        let tag = format!("{},{}", label(p), label(q));
        r.push(format!("two-cells/{tag}"), A_FUNC, func, t);
        r.push(format!("naturality/{tag}"), A_NAT, nat, t);
    }
    Ok(r)
}

/// Unitarity of `φ_X` on simples, compatibility with the tensorators and
/// unitors of `F` and `G`, and naturality on endomorphisms of composites.
pub fn check_transformation<A, B, F, G, P>(
    a: &A,
    b: &B,
    f: &F,
    g: &G,
    phi: &P,
    tol: Tolerance,
) -> Result<Report>
where
    A: TwoCategory,
    B: TwoCategory,
    F: Functor2<A, B> + ?Sized,
    G: Functor2<A, B> + ?Sized,
    P: Transformation2<A, B> + ?Sized,
{
    let t = tol.bound(0.0);
    let mut r = Report::new();
    let objs = a.objects();
    let comp0: Vec<One<B>> = objs.iter().map(|o| phi.comp0(o)).collect::<Result<_>>()?;
    let simples = all_simples(a)?;
    let label = |k: usize| a.one_label(&simples[k].2);

    for (p, (_, _, x)) in simples.iter().enumerate() {
        r.push(
            format!("unitary/{}", label(p)),
            A_T_UNI,
            unitarity(b, &phi.comp1(x)?)?,
            t,
        );
    }

    for (p, q) in composable_pairs::<A>(&simples) {
        let (i, _, x) = &simples[p];
        let (_, k, y) = &simples[q];
        let (pa, pc) = (&comp0[*i], &comp0[*k]);
        let pb = &comp0[simples[p].1];
        let (fx, fy) = (f.one(x)?, f.one(y)?);
        let (gx, gy) = (g.one(x)?, g.one(y)?);
        let xy = a.tensor(x, y)?;
        let phi_xy = phi.comp1(&xy)?;
        let lhs = chain(
            b,
            &[
                b.hcomp(&b.id2(pa), &g.tensorator(x, y)?)?,
                b.associator(pa, &gx, &gy)?,
                b.hcomp(&phi.comp1(x)?, &b.id2(&gy))?,
                b.dagger(&b.associator(&fx, pb, &gy)?),
                b.hcomp(&b.id2(&fx), &phi.comp1(y)?)?,
                b.associator(&fx, &fy, pc)?,
            ],
        )?;
        let rhs = b.vcomp(&phi_xy, &b.hcomp(&f.tensorator(x, y)?, &b.id2(pc))?)?;
        let tag = format!("{},{}", label(p), label(q));
        r.push(
            format!("tensor/{tag}"),
            A_T_TENSOR,
            b.distance(&lhs, &rhs),
            t,
        );

        let mut nat = 0.0f64;
        for h in a.hom_basis(&xy, &xy)? {
            let lhs = b.vcomp(&b.hcomp(&b.id2(pa), &g.two(&h)?)?, &phi_xy)?;
            let rhs = b.vcomp(&phi_xy, &b.hcomp(&f.two(&h)?, &b.id2(pc))?)?;
            nat = nat.max(b.distance(&lhs, &rhs));
        }
        r.push(format!("naturality/{tag}"), A_T_NAT, nat, t);
    }

    for (k, o) in objs.iter().enumerate() {
        let pb = &comp0[k];
        let one = a.unit(o)?;
        let lhs = b.vcomp(&phi.comp1(&one)?, &b.hcomp(&f.unitor(o)?, &b.id2(pb))?)?;
        let rhs = chain(
            b,
            &[
                b.hcomp(&b.id2(pb), &g.unitor(o)?)?,
                b.dagger(&b.runitor(pb)?),
                b.lunitor(pb)?,
            ],
        )?;
        r.push(
            format!("unit/{}", a.obj_label(o)),
            A_T_UNIT,
            b.distance(&lhs, &rhs),
            t,
        );
    }
    Ok(r)
}

/// `(n_a ⊗ id_{G(X)}) ⋆ φ_X = ψ_X ⋆ (id_{F(X)} ⊗ n_b)` for every simple `X`.
pub fn check_modification<A, B, F, G, P, Q>(
    a: &A,
    b: &B,
    f: &F,
    g: &G,
    phi: &P,
    psi: &Q,
    n: &Modification<B>,
    tol: Tolerance,
) -> Result<Report>
where
    A: TwoCategory,
    B: TwoCategory,
    F: Functor2<A, B> + ?Sized,
    G: Functor2<A, B> + ?Sized,
    P: Transformation2<A, B> + ?Sized,
    Q: Transformation2<A, B> + ?Sized,
{
    let t = tol.bound(0.0);
    let mut r = Report::new();
    for (i, j, x) in all_simples(a)? {
        let lhs = b.vcomp(&b.hcomp(n.at(i)?, &b.id2(&g.one(&x)?))?, &phi.comp1(&x)?)?;
        let rhs = b.vcomp(&psi.comp1(&x)?, &b.hcomp(&b.id2(&f.one(&x)?), n.at(j)?)?)?;
        r.push(
            format!("sliding/{}", a.one_label(&x)),
            A_MOD,
            b.distance(&lhs, &rhs),
            t,
        );
    }
    Ok(r)
}
