use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use super::fun::{fun_associator, Composite, FunTensor};
use super::skeletal::{materialize, DagFunctor};
use super::{obj_index, Functor2, Modification, Transformation2};
use crate::category::{chain, TwoCategory};
use crate::error::{Error, Result};
use crate::linalg::Tolerance;
use crate::qsystem::{
    trivial_bimodule, trivial_qsystem, Bimodule, Completion, Decompose, Intertwiner, QSysCat,
    QSystem, Realize, RelTensor,
};
use crate::report::Report;
use crate::twocat::{OneCell, Presentation, TwoCell};

impl Functor2<Presentation, QSysCat> for Realize {
    fn obj(&self, a: &usize) -> Result<Arc<QSystem>> {
        Realize::obj(self, *a)
    }

    fn one(&self, x: &OneCell) -> Result<Arc<Bimodule>> {
        Realize::one(self, x)
    }

    fn two(&self, f: &TwoCell) -> Result<Intertwiner> {
        Realize::two(self, f)
    }

    fn tensorator(&self, x: &OneCell, y: &OneCell) -> Result<Intertwiner> {
        Realize::tensorator(self, x, y)
    }

    fn unitor(&self, a: &usize) -> Result<Intertwiner> {
        Realize::unitor(self, *a)
    }
}

impl Functor2<QSysCat, Presentation> for Decompose {
    fn obj(&self, a: &Arc<QSystem>) -> Result<usize> {
        Decompose::obj(self, a)
    }

    fn one(&self, x: &Arc<Bimodule>) -> Result<OneCell> {
        Decompose::one(self, x)
    }

    fn two(&self, f: &Intertwiner) -> Result<TwoCell> {
        Decompose::two(self, f)
    }

    fn tensorator(&self, x: &Arc<Bimodule>, y: &Arc<Bimodule>) -> Result<TwoCell> {
        Decompose::tensorator(self, x, y)
    }

    fn unitor(&self, a: &Arc<QSystem>) -> Result<TwoCell> {
        Decompose::unitor(self, a)
    }
}

/// The inclusion `ι : C → QSys(C)` onto trivial Q-systems, realized: `X`
/// goes to itself with unitor actions and 2-cells are unchanged.
#[derive(Debug)]
pub struct Ambient {
    cat: Arc<QSysCat>,
    objs: Vec<Arc<QSystem>>,
    cache: Mutex<HashMap<OneCell, Arc<Bimodule>>>,
}

impl Ambient {
    /// `cat` must list the trivial Q-system of every object.
    pub fn new(cat: Arc<QSysCat>) -> Result<Self> {
        let p = cat.presentation().clone();
        let objs = (0..p.num_objects())
            .map(|b| {
                let t = trivial_qsystem(&p, b)?;
                let k = cat
                    .index_of(&t)
                    .ok_or_else(|| Error::UnknownObject(t.name.clone()))?;
                Ok(cat.qsystems()[k].clone())
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            cat,
            objs,
            cache: Mutex::default(),
        })
    }

    pub fn cat(&self) -> &Arc<QSysCat> {
        &self.cat
    }
}

impl Functor2<Presentation, QSysCat> for Ambient {
    fn obj(&self, a: &usize) -> Result<Arc<QSystem>> {
        self.objs
            .get(*a)
            .cloned()
            .ok_or_else(|| Error::UnknownObject(a.to_string()))
    }

    fn one(&self, x: &OneCell) -> Result<Arc<Bimodule>> {
        if let Some(b) = self.cache.lock().unwrap().get(x) {
            return Ok(b.clone());
        }
        let b = trivial_bimodule(
            self.cat.presentation(),
            self.obj(&x.src)?,
            self.obj(&x.tgt)?,
            x,
        )?;
        Ok(self
            .cache
            .lock()
            .unwrap()
            .entry(x.clone())
            .or_insert(b)
            .clone())
    }

    fn two(&self, f: &TwoCell) -> Result<Intertwiner> {
        Ok(Intertwiner {
            dom: self.one(&f.dom)?,
            cod: self.one(&f.cod)?,
            cell: f.clone(),
        })
    }

    /// `u† : X ⊗_1 Y ⇒ X ⊗ Y`, an identity up to the splitting gauge.
    fn tensorator(&self, x: &OneCell, y: &OneCell) -> Result<Intertwiner> {
        let rt = self.cat.rel(&self.one(x)?, &self.one(y)?)?;
        let xy = self.one(&self.cat.presentation().tensor(x, y)?)?;
        Ok(Intertwiner {
            dom: rt.result,
            cod: xy,
            cell: rt.u.dagger(),
        })
    }

    fn unitor(&self, a: &usize) -> Result<Intertwiner> {
        let unit = self.cat.unit(&self.obj(a)?)?;
        let one = self.one(&OneCell::unit(self.cat.presentation(), *a))?;
        Ok(Intertwiner {
            cell: TwoCell::identity(&unit.x),
            dom: unit,
            cod: one,
        })
    }
}

/// `ι_C` as a skeletal functor into the completion on trivial Q-systems.
pub fn iota(
    p: &Arc<Presentation>,
    tol: Tolerance,
    seed: u64,
) -> Result<(Arc<Completion>, DagFunctor)> {
    let comp = Arc::new(Completion::build(Arc::new(QSysCat::trivial(
        p.clone(),
        tol,
        seed,
    )?))?);
    let amb = Ambient::new(comp.cat.clone())?;
    let d = Decompose::new(comp.clone());
    let f = materialize(
        format!("iota_{}", p.name()),
        p,
        &comp.presentation,
        &Composite {
            g: &d,
            f: &amb,
            c: &*comp.presentation,
        },
    )?;
    Ok((comp, f))
}

/// `(F(Q), F(m) ⋆ F²_{Q,Q}, F(i) ⋆ F¹_b)`.
fn image_qsystem(f: &DagFunctor, q: &QSystem) -> Result<Arc<QSystem>> {
    let m = f.two_cell(&q.m)?.after(&f.tensorator_cell(&q.q, &q.q)?)?;
    let i = f.two_cell(&q.i)?.after(&f.f1[q.base])?;
    QSystem::new(
        &f.tgt,
        format!("{}({})", f.name, q.name),
        f.obj_map[q.base],
        f.one_cell(&q.q)?,
        m,
        i,
    )
}

/// Images of `qs` under `f`, without repetitions (compared by data).
pub fn image_qsystems(f: &DagFunctor, qs: &[Arc<QSystem>]) -> Result<Vec<Arc<QSystem>>> {
    let mut out: Vec<Arc<QSystem>> = Vec::new();
    for q in qs {
        let img = image_qsystem(f, q)?;
        if !out.iter().any(|o| o.same_as(&img)) {
            out.push(img);
        }
    }
    Ok(out)
}

/// `QSys(F)` between realized completions.
///
/// A bimodule `(X, λ, ρ)` goes to `(F(X), F(λ) ⋆ F², F(ρ) ⋆ F²)`, the
/// tensorator is `F(u_{X,Y}) ⋆ F²_{X,Y} ⋆ u†_{F(X),F(Y)}` and the unitor is
/// the identity.
#[derive(Debug)]
pub struct QSysFunctor {
    pub f: Arc<DagFunctor>,
    pub src: Arc<QSysCat>,
    pub tgt: Arc<QSysCat>,
    objs: Vec<Arc<QSystem>>,
    cache: Mutex<HashMap<u64, Arc<Bimodule>>>,
}

impl QSysFunctor {
    /// Every image `F(Q)` must be listed in `tgt`.
    pub fn new(f: Arc<DagFunctor>, src: Arc<QSysCat>, tgt: Arc<QSysCat>) -> Result<Self> {
        let objs = src
            .qsystems()
            .iter()
            .map(|q| {
                let img = image_qsystem(&f, q)?;
                let k = tgt.index_of(&img).ok_or_else(|| {
                    Error::Structural(format!("image `{}` is not in the target list", img.name))
                })?;
                Ok(tgt.qsystems()[k].clone())
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            f,
            src,
            tgt,
            objs,
            cache: Mutex::default(),
        })
    }

    fn obj_at(&self, q: &QSystem) -> Result<Arc<QSystem>> {
        let k = self
            .src
            .index_of(q)
            .ok_or_else(|| Error::UnknownObject(q.name.clone()))?;
        Ok(self.objs[k].clone())
    }
}

impl Functor2<QSysCat, QSysCat> for QSysFunctor {
    fn obj(&self, a: &Arc<QSystem>) -> Result<Arc<QSystem>> {
        self.obj_at(a)
    }

    fn one(&self, x: &Arc<Bimodule>) -> Result<Arc<Bimodule>> {
        if let Some(b) = self.cache.lock().unwrap().get(&x.id()) {
            return Ok(b.clone());
        }
        let f = &*self.f;
        let lam = f
            .two_cell(&x.lam)?
            .after(&f.tensorator_cell(&x.left.q, &x.x)?)?;
        let rho = f
            .two_cell(&x.rho)?
            .after(&f.tensorator_cell(&x.x, &x.right.q)?)?;
        let b = Bimodule::new(
            &f.tgt,
            format!("{}({})", f.name, x.label),
            self.obj_at(&x.left)?,
            self.obj_at(&x.right)?,
            f.one_cell(&x.x)?,
            lam,
            rho,
        )?;
        Ok(self
            .cache
            .lock()
            .unwrap()
            .entry(x.id())
            .or_insert(b)
            .clone())
    }

    fn two(&self, g: &Intertwiner) -> Result<Intertwiner> {
        Ok(Intertwiner {
            dom: self.one(&g.dom)?,
            cod: self.one(&g.cod)?,
            cell: self.f.two_cell(&g.cell)?,
        })
    }

    fn tensorator(&self, x: &Arc<Bimodule>, y: &Arc<Bimodule>) -> Result<Intertwiner> {
        let src = self.src.rel(x, y)?;
        let (fx, fy) = (self.one(x)?, self.one(y)?);
        let tgt = self.tgt.rel(&fx, &fy)?;
        let cell = chain(
            &*self.f.tgt,
            &[
                self.f.two_cell(&src.u)?,
                self.f.tensorator_cell(&x.x, &y.x)?,
                tgt.u.dagger(),
            ],
        )?;
        Ok(Intertwiner {
            dom: tgt.result,
            cod: self.one(&src.result)?,
            cell,
        })
    }

    fn unitor(&self, a: &Arc<QSystem>) -> Result<Intertwiner> {
        let unit = self.tgt.unit(&self.obj_at(a)?)?;
        let image = self.one(&self.src.unit(a)?)?;
        Ok(Intertwiner {
            cell: TwoCell::identity(&unit.x),
            dom: unit,
            cod: image,
        })
    }
}

/// The skeletal `QSys(F) = D ∘ QSys(F) ∘ R` between completions.
pub fn qsys_functor_skeletal(
    qf: &QSysFunctor,
    src: &Arc<Completion>,
    tgt: &Arc<Completion>,
) -> Result<DagFunctor> {
    if !Arc::ptr_eq(&src.cat, &qf.src) || !Arc::ptr_eq(&tgt.cat, &qf.tgt) {
        return Err(Error::ObjectMismatch(
            "completions differ from the categories of the functor".into(),
        ));
    }
    let r = Realize::new(src.clone());
    let d = Decompose::new(tgt.clone());
    let inner = Composite {
        g: qf,
        f: &r,
        c: &*qf.tgt,
    };
    let outer = Composite {
        g: &d,
        f: &inner,
        c: &*tgt.presentation,
    };
    materialize(
        format!("QSys({})", qf.f.name),
        &src.presentation,
        &tgt.presentation,
        &outer,
    )
}

/// The `F(Q)–G(Q)` bimodule `Y_Q = φ_b ⊗ G(Q)` and its unital part
/// `Z_Q = F(Q) ⊗_{F(Q)} Y_Q` with coisometry `v_Q`.
#[derive(Clone, Debug)]
struct Split {
    y: Arc<Bimodule>,
    z: RelTensor,
}

/// `QSys(φ) : QSys(F) ⇒ QSys(G)` for a transformation `φ : F ⇒ G`.
///
/// `QSys(φ)_Q` splits the projection `(id ⊗ λ_Y) ⋆ α ⋆ (m† ⊗ id)` on
/// `F(Q) ⊗ (φ_b ⊗ G(Q))`, where `Y` acts on the left through `φ_Q`.
pub struct QSysTransformation<'a> {
    pub phi: &'a dyn Transformation2<Presentation, Presentation>,
    pub qf: &'a QSysFunctor,
    pub qg: &'a QSysFunctor,
    cache: Mutex<HashMap<usize, Split>>,
}

impl<'a> QSysTransformation<'a> {
    pub fn new(
        phi: &'a dyn Transformation2<Presentation, Presentation>,
        qf: &'a QSysFunctor,
        qg: &'a QSysFunctor,
    ) -> Result<Self> {
        if !Arc::ptr_eq(&qf.src, &qg.src) || !Arc::ptr_eq(&qf.tgt, &qg.tgt) {
            return Err(Error::ObjectMismatch(
                "QSys(F) and QSys(G) must share source and target".into(),
            ));
        }
        Ok(Self {
            phi,
            qf,
            qg,
            cache: Mutex::default(),
        })
    }

    fn split(&self, q: &Arc<QSystem>) -> Result<Split> {
        let k = obj_index(&*self.qf.src, q)?;
        if let Some(s) = self.cache.lock().unwrap().get(&k) {
            return Ok(s.clone());
        }
        let p = &*self.qf.f.tgt;
        let fq = self.qf.obj(q)?;
        let gq = self.qg.obj(q)?;
        let pb = self.phi.comp0(&q.base)?;
        let phi_q = self.phi.comp1(&q.q)?;
        let x = p.tensor(&pb, &gq.q)?;
        let act = p
            .tensor2(&TwoCell::identity(&pb), &gq.m)?
            .after(&p.associator(&pb, &gq.q, &gq.q)?)?;
        let lam = chain(
            p,
            &[
                act.clone(),
                p.tensor2(&phi_q, &TwoCell::identity(&gq.q))?,
                p.associator(&fq.q, &pb, &gq.q)?.dagger(),
            ],
        )?;
        let y = Bimodule::new(p, format!("Y[{}]", q.name), fq.clone(), gq, x, lam, act)?;
        let z = self.qf.tgt.rel(&self.qf.tgt.unit(&fq)?, &y)?;
        let s = Split { y, z };
        Ok(self.cache.lock().unwrap().entry(k).or_insert(s).clone())
    }

    /// `λ_Y ⋆ v† : Z_Q ⇒ Y_Q`.
    fn z_to_y(&self, s: &Split) -> Result<Intertwiner> {
        Ok(Intertwiner {
            dom: s.z.result.clone(),
            cod: s.y.clone(),
            cell: s.y.lam.after(&s.z.u.dagger())?,
        })
    }

    fn y_to_z(&self, s: &Split) -> Result<Intertwiner> {
        let c = self.z_to_y(s)?;
        Ok(self.qf.tgt.dagger(&c))
    }

    /// The coisometry `v_Q : F(Q) ⊗ Y_Q ⇒ Z_Q`.
    pub fn coisometry(&self, q: &Arc<QSystem>) -> Result<TwoCell> {
        Ok(self.split(q)?.z.u)
    }

    /// The projection split by `v_Q`, before splitting.
    pub fn projection(&self, q: &Arc<QSystem>) -> Result<TwoCell> {
        let v = self.coisometry(q)?;
        v.dagger().after(&v)
    }
}

impl Transformation2<QSysCat, QSysCat> for QSysTransformation<'_> {
    fn comp0(&self, c: &Arc<QSystem>) -> Result<Arc<Bimodule>> {
        Ok(self.split(c)?.z.result)
    }

    /// `[(v_P λ†) ⊗_{G(P)} id] ⋆ u ⋆ α† ⋆ (id ⊗ λ†_{G(X)}) ⋆ φ_X ⋆ (ρ_{F(X)} ⊗ id)
    /// ⋆ α† ⋆ (id ⊗ φ_Q†) ⋆ u† ⋆ [id ⊗_{F(Q)} (λ v_Q†)]`.
    fn comp1(&self, x: &Arc<Bimodule>) -> Result<Intertwiner> {
        let cat = &*self.qf.tgt;
        let p = &*self.qf.f.tgt;
        let (sp, sq) = (self.split(&x.left)?, self.split(&x.right)?);
        let (fx, gx) = (self.qf.one(x)?, self.qg.one(x)?);
        let (pa, pb) = (
            self.phi.comp0(&x.left.base)?,
            self.phi.comp0(&x.right.base)?,
        );
        let fq = self.qf.obj(&x.right)?;
        let gp = self.qg.obj(&x.left)?;

        let first = cat.hcomp(&cat.id2(&fx), &self.z_to_y(&sq)?)?;
        let last = cat.hcomp(&self.y_to_z(&sp)?, &cat.id2(&gx))?;
        let u_in = cat.rel(&fx, &sq.y)?;
        let u_out = cat.rel(&sp.y, &gx)?;
        let middle = chain(
            p,
            &[
                u_out.u.clone(),
                p.associator(&pa, &gp.q, &gx.x)?.dagger(),
                p.tensor2(&TwoCell::identity(&pa), &gx.lam.dagger())?,
                self.phi.comp1(&x.x)?,
                p.tensor2(&fx.rho, &TwoCell::identity(&pb))?,
                p.associator(&fx.x, &fq.q, &pb)?.dagger(),
                p.tensor2(
                    &TwoCell::identity(&fx.x),
                    &self.phi.comp1(&x.right.q)?.dagger(),
                )?,
                u_in.u.dagger(),
            ],
        )?;
        let cell = chain(p, &[last.cell.clone(), middle, first.cell.clone()])?;
        Ok(Intertwiner {
            dom: first.dom,
            cod: last.cod,
            cell,
        })
    }
}

/// `QSys(n)_Q = v^ψ_Q ⋆ (id ⊗ (n_b ⊗ id)) ⋆ (v^φ_Q)†` for a modification
/// `n : φ ⇛ ψ` given by components on the base presentation.
pub fn qsys_modification(
    n: &Modification<Presentation>,
    qphi: &QSysTransformation,
    qpsi: &QSysTransformation,
) -> Result<Modification<QSysCat>> {
    let p = &*qphi.qf.f.tgt;
    let comps = qphi
        .qf
        .src
        .qsystems()
        .iter()
        .map(|q| {
            let (sphi, spsi) = (qphi.split(q)?, qpsi.split(q)?);
            let fq = qphi.qf.obj(q)?;
            let gq = qphi.qg.obj(q)?;
            let inner = p.tensor2(n.at(q.base)?, &TwoCell::identity(&gq.q))?;
            let cell = chain(
                p,
                &[
                    spsi.z.u.clone(),
                    p.tensor2(&TwoCell::identity(&fq.q), &inner)?,
                    sphi.z.u.dagger(),
                ],
            )?;
            Ok(Intertwiner {
                dom: sphi.z.result,
                cod: spsi.z.result,
                cell,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Modification::new(comps))
}

/// `QSys⊗_{φ,ψ} : QSys(φ) ⊗ QSys(ψ) ⇛ QSys(φ⊗ψ)` with components
/// `(v λ†) ⋆ α† ⋆ (id ⊗ λ) ⋆ α ⋆ ((λ v†) ⊗ (λ v†)) ⋆ u†`.
pub fn qsys_tensorator(
    qphi: &QSysTransformation,
    qpsi: &QSysTransformation,
    qboth: &QSysTransformation,
) -> Result<Modification<QSysCat>> {
    let cat = &*qphi.qf.tgt;
    let p = &*qphi.qf.f.tgt;
    let comps = qphi
        .qf
        .src
        .qsystems()
        .iter()
        .map(|q| {
            let (a, b, ab) = (qphi.split(q)?, qpsi.split(q)?, qboth.split(q)?);
            let (pb, sb) = (qphi.phi.comp0(&q.base)?, qpsi.phi.comp0(&q.base)?);
            let gq = qphi.qg.obj(q)?;
            let hq = qpsi.qg.obj(q)?;
            let zz = cat.rel(&a.z.result, &b.z.result)?;
            let cell = chain(
                p,
                &[
                    qboth.y_to_z(&ab)?.cell,
                    p.associator(&pb, &sb, &hq.q)?.dagger(),
                    p.tensor2(&TwoCell::identity(&pb), &b.y.lam)?,
                    p.associator(&pb, &gq.q, &b.y.x)?,
                    p.tensor2(&qphi.z_to_y(&a)?.cell, &qpsi.z_to_y(&b)?.cell)?,
                    zz.u.dagger(),
                ],
            )?;
            Ok(Intertwiner {
                dom: zz.result,
                cod: ab.z.result,
                cell,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Modification::new(comps))
}

/// The monoidality square of `QSys⊗` for `φ : F ⇒ G`, `ψ : G ⇒ H`,
/// `γ : H ⇒ K`:
/// `QSys(α) ⋆ QSys⊗_{φ⊗ψ,γ} ⋆ (QSys⊗_{φ,ψ} ⊗ id) = QSys⊗_{φ,ψ⊗γ} ⋆ (id ⊗ QSys⊗_{ψ,γ}) ⋆ α`.
pub fn qsys_associativity_square(
    functors: [&QSysFunctor; 4],
    phi: &dyn Transformation2<Presentation, Presentation>,
    psi: &dyn Transformation2<Presentation, Presentation>,
    gamma: &dyn Transformation2<Presentation, Presentation>,
    tol: Tolerance,
) -> Result<Report> {
    let [qf, qg, qh, qk] = functors;
    let (a, b) = (&*qf.f.src, &*qf.f.tgt);
    let (f, g, h, k): (&DagFunctor, &DagFunctor, &DagFunctor, &DagFunctor) =
        (&qf.f, &qg.f, &qh.f, &qk.f);
    let pp = FunTensor {
        f,
        g,
        h,
        phi,
        psi,
        a,
        b,
    };
    let pg = FunTensor {
        f: g,
        g: h,
        h: k,
        phi: psi,
        psi: gamma,
        a,
        b,
    };
    let left = FunTensor {
        f,
        g: h,
        h: k,
        phi: &pp,
        psi: gamma,
        a,
        b,
    };
    let right = FunTensor {
        f,
        g,
        h: k,
        phi,
        psi: &pg,
        a,
        b,
    };

    let t_phi = QSysTransformation::new(phi, qf, qg)?;
    let t_psi = QSysTransformation::new(psi, qg, qh)?;
    let t_gam = QSysTransformation::new(gamma, qh, qk)?;
    let t_pp = QSysTransformation::new(&pp, qf, qh)?;
    let t_pg = QSysTransformation::new(&pg, qg, qk)?;
    let t_left = QSysTransformation::new(&left, qf, qk)?;
    let t_right = QSysTransformation::new(&right, qf, qk)?;

    let assoc = fun_associator(a, b, phi, psi, gamma)?;
    let q_assoc = qsys_modification(&assoc, &t_left, &t_right)?;
    let m1 = qsys_tensorator(&t_phi, &t_psi, &t_pp)?;
    let m2 = qsys_tensorator(&t_pp, &t_gam, &t_left)?;
    let m3 = qsys_tensorator(&t_psi, &t_gam, &t_pg)?;
    let m4 = qsys_tensorator(&t_phi, &t_pg, &t_right)?;

    let cat = &*qf.tgt;
    let mut r = Report::new();
    for (i, q) in qf.src.qsystems().iter().enumerate() {
        let (zp, zs, zg) = (t_phi.comp0(q)?, t_psi.comp0(q)?, t_gam.comp0(q)?);
        let lhs = chain(
            cat,
            &[
                q_assoc.at(i)?.clone(),
                m2.at(i)?.clone(),
                cat.hcomp(m1.at(i)?, &cat.id2(&zg))?,
            ],
        )?;
        let rhs = chain(
            cat,
            &[
                m4.at(i)?.clone(),
                cat.hcomp(&cat.id2(&zp), m3.at(i)?)?,
                cat.associator(&zp, &zs, &zg)?,
            ],
        )?;
        r.push(
            format!("associativity/{}", q.name),
            "QSys⊗ monoidality square",
            cat.distance(&lhs, &rhs),
            tol.bound(0.0),
        );
    }
    Ok(r)
}

/// `ψ^F : ι_D ∘ F ⇒ QSys(F) ∘ ι_C` with `ψ_b = 1_{F(b)}` and
/// `ψ_X = u ⋆ λ†_{F(X)} ⋆ ρ_{F(X)} ⋆ u†`.
pub struct PsiF<'a> {
    pub qf: &'a QSysFunctor,
    pub iota_src: &'a Ambient,
    pub iota_tgt: &'a Ambient,
    cache: Mutex<HashMap<usize, Arc<Bimodule>>>,
}

pub fn psi_f<'a>(
    qf: &'a QSysFunctor,
    iota_src: &'a Ambient,
    iota_tgt: &'a Ambient,
) -> Result<PsiF<'a>> {
    if !Arc::ptr_eq(iota_src.cat(), &qf.src) || !Arc::ptr_eq(iota_tgt.cat(), &qf.tgt) {
        return Err(Error::ObjectMismatch(
            "inclusions must land in the categories of QSys(F)".into(),
        ));
    }
    Ok(PsiF {
        qf,
        iota_src,
        iota_tgt,
        cache: Mutex::default(),
    })
}

impl Transformation2<Presentation, QSysCat> for PsiF<'_> {
    fn comp0(&self, c: &usize) -> Result<Arc<Bimodule>> {
        if let Some(b) = self.cache.lock().unwrap().get(c) {
            return Ok(b.clone());
        }
        let f = &*self.qf.f;
        let p = &*f.tgt;
        let fb = f.obj(c)?;
        let one = OneCell::unit(p, fb);
        let image = self.qf.obj(&self.iota_src.obj(c)?)?;
        let rho = f.f1[*c].dagger().after(&p.lunitor(&image.q)?)?;
        let b = Bimodule::new(
            p,
            format!("psi_{}", p.objects()[fb]),
            self.iota_tgt.obj(&fb)?,
            image,
            one.clone(),
            p.lunitor(&one)?,
            rho,
        )?;
        Ok(self.cache.lock().unwrap().entry(*c).or_insert(b).clone())
    }

    fn comp1(&self, x: &OneCell) -> Result<Intertwiner> {
        let f = &*self.qf.f;
        let p = &*f.tgt;
        let cat = &*self.qf.tgt;
        let fx = f.one_cell(x)?;
        let left = cat.rel(&self.iota_tgt.one(&fx)?, &self.comp0(&x.tgt)?)?;
        let right = cat.rel(&self.comp0(&x.src)?, &self.qf.one(&self.iota_src.one(x)?)?)?;
        let cell = chain(
            p,
            &[
                right.u.clone(),
                p.lunitor(&fx)?.dagger(),
                p.runitor(&fx)?,
                left.u.dagger(),
            ],
        )?;
        Ok(Intertwiner {
            dom: left.result,
            cod: right.result,
            cell,
        })
    }
}

/// Compares `QSys(G) ∘ QSys(F)` with `QSys(G∘F)` entry by entry on objects,
/// simple 1-cells and their composites, 2-cells, tensorators and unitors.
pub fn verify_strict_1_functoriality(
    qf: &QSysFunctor,
    qg: &QSysFunctor,
    qgf: &QSysFunctor,
    tol: f64,
) -> Result<Report> {
    let src = &*qf.src;
    let tgt = &*qgf.tgt;
    let comp = Composite {
        g: qg,
        f: qf,
        c: tgt,
    };
    let mut dev = [0.0f64; 5];
    let bim = |a: &Bimodule, b: &Bimodule| -> f64 {
        if a.x != b.x || !a.left.same_as(&b.left) || !a.right.same_as(&b.right) {
            return f64::INFINITY;
        }
        a.lam.distance(&b.lam).max(a.rho.distance(&b.rho))
    };
    let objs = src.objects();
    for q in &objs {
        let (x, y) = (comp.obj(q)?, qgf.obj(q)?);
        dev[0] = dev[0].max(if Arc::ptr_eq(&x, &y) {
            0.0
        } else {
            x.m.distance(&y.m).max(x.i.distance(&y.i))
        });
        dev[4] = dev[4].max(tgt.distance(&comp.unitor(q)?, &qgf.unitor(q)?));
    }
    let mut simples = Vec::new();
    for a in &objs {
        for b in &objs {
            simples.extend(src.simples(a, b)?);
        }
    }
    for x in &simples {
        dev[1] = dev[1].max(bim(&*comp.one(x)?, &*qgf.one(x)?));
        for h in src.hom_basis(x, x)? {
            dev[2] = dev[2].max(tgt.distance(&comp.two(&h)?, &qgf.two(&h)?));
        }
        for y in simples.iter().filter(|y| y.left.same_as(&x.right)) {
            let xy = src.tensor(x, y)?;
            dev[1] = dev[1].max(bim(&*comp.one(&xy)?, &*qgf.one(&xy)?));
            for h in src.hom_basis(&xy, &xy)? {
                dev[2] = dev[2].max(tgt.distance(&comp.two(&h)?, &qgf.two(&h)?));
            }
            dev[3] = dev[3].max(tgt.distance(&comp.tensorator(x, y)?, &qgf.tensorator(x, y)?));
        }
    }
    let mut r = Report::new();
    let anchor = "QSys(G)∘QSys(F) = QSys(G∘F)";
    for (id, d) in ["objects", "one-cells", "two-cells", "tensorator", "unitor"]
        .iter()
        .zip(dev)
    {
        r.push(format!("strict/{id}"), anchor, d, tol);
    }
    Ok(r)
}
