//! Bundled functors and transformations on `Vec` and `Vec_Z2`, and the
//! theorem suites run by `verify-theorems`.

use std::collections::HashMap;
use std::sync::Arc;

use super::checks::{check_functor, check_modification, check_transformation};
use super::fun::{Composite, FunTensor};
use super::skeletal::{compose_functors, DagFunctor, Transformation};
use super::transport::{
    image_qsystems, psi_f, qsys_associativity_square, qsys_modification, qsys_tensorator,
    verify_strict_1_functoriality, Ambient, QSysFunctor, QSysTransformation,
};
use super::Modification;
use crate::category::{pentagon, triangle, unitarity, TwoCategory};
use crate::error::{Error, Result};
use crate::linalg::{CMat, Tolerance, C64};
use crate::qsystem::{condensation_from_qsystem, group_algebra, trivial_qsystem, QSysCat, QSystem};
use crate::report::Report;
use crate::twocat::{self, OneCell, Presentation, TwoCell};

/// The identity on simples of `Vec_Z2` with `F²_{g,g} = s`.
pub fn sign_z2(z2: &Arc<Presentation>, s: f64) -> Result<DagFunctor> {
    let g = z2.simple_index("g")?;
    let gg = z2.tensor(&OneCell::simple(z2, g), &OneCell::simple(z2, g))?;
    let mut f =
        DagFunctor::identity(z2).with_f2(g, g, TwoCell::scalar_on(&gg, C64::new(s, 0.0)))?;
    f.name = "sign".into();
    Ok(f)
}

/// `Vec → Vec_Z2`, onto the trivial grading.
pub fn inclusion_vec_z2(vec: &Arc<Presentation>, z2: &Arc<Presentation>) -> Result<DagFunctor> {
    let one = OneCell::unit(z2, 0);
    let f2 = HashMap::from([((0, 0), TwoCell::identity(&one))]);
    DagFunctor::new(
        "incl",
        vec.clone(),
        z2.clone(),
        vec![0],
        vec![one.clone()],
        f2,
        vec![TwoCell::identity(&one)],
    )
}

/// `Vec_Z2 → Vec`, forgetting the grading.
pub fn forget_z2(z2: &Arc<Presentation>, vec: &Arc<Presentation>) -> Result<DagFunctor> {
    let one = OneCell::unit(vec, 0);
    let mut f2 = HashMap::new();
    for s in 0..z2.num_simples() {
        for t in 0..z2.num_simples() {
            f2.insert((s, t), TwoCell::identity(&one));
        }
    }
    DagFunctor::new(
        "forget",
        z2.clone(),
        vec.clone(),
        vec![0],
        vec![one.clone(); z2.num_simples()],
        f2,
        vec![TwoCell::identity(&one)],
    )
}

/// `φ : F ⇒ G` with `φ_c = 1` and `φ_s = z_s · λ† ⋆ ρ`.
fn scalar_transformation(
    name: &str,
    f: &Arc<DagFunctor>,
    g: &Arc<DagFunctor>,
    z: &[C64],
) -> Result<Transformation> {
    let base = Transformation::identity(f)?;
    let comp1 = base.comp1.iter().zip(z).map(|(c, &z)| c.scale(z)).collect();
    Transformation::new(name, f.clone(), g.clone(), base.comp0, comp1)
}

/// `id ⇒ id` on `Vec_Z2` with 1-cell `a` at the object and `φ_g = c`, where
/// every summand of `a` is carried to itself.
fn character_transformation(
    name: &str,
    id: &Arc<DagFunctor>,
    a: OneCell,
    c: &[C64],
) -> Result<Transformation> {
    let p = &id.tgt;
    let g = p.simple_index("g")?;
    let comp1 = (0..p.num_simples())
        .map(|s| {
            let x = OneCell::simple(p, s);
            let dom = p.tensor(&x, &a)?;
            let cod = p.tensor(&a, &x)?;
            let blocks = (0..p.num_simples())
                .map(|u| {
                    let k = p.n(s, u ^ s, u).min(a.mult[u ^ s]);
                    let z = if s == g { c[u ^ s] } else { C64::new(1.0, 0.0) };
                    CMat::identity(dom.mult[u]).scale(if k > 0 { z } else { C64::new(1.0, 0.0) })
                })
                .collect();
            TwoCell::new(dom, cod, blocks)
        })
        .collect::<Result<Vec<_>>>()?;
    Transformation::new(name, id.clone(), id.clone(), vec![a], comp1)
}

type Section = (&'static str, fn(&Suite) -> Result<Report>);

/// Everything the `z2` theorem suite needs.
#[derive(Debug)]
pub struct Suite {
    pub name: String,
    pub vec: Arc<Presentation>,
    pub z2: Arc<Presentation>,
    pub id: Arc<DagFunctor>,
    pub sign: Arc<DagFunctor>,
    pub incl: Arc<DagFunctor>,
    pub forget: Arc<DagFunctor>,
    /// `sign ⇒ id` with `φ_g = i`.
    pub sign_to_id: Transformation,
    /// `id ⇒ id` with 1-cell `g` and the sign character.
    pub char_g: Transformation,
    /// `id ⇒ id` with 1-cell `1 ⊕ g`.
    pub phi2: Transformation,
    /// A diagonal endomodification of `phi2`.
    pub n: Modification<Presentation>,
    pub tol: Tolerance,
    pub seed: u64,
}

pub const SUITES: [&str; 2] = ["z2", "z2-perturbed"];

impl Suite {
    pub fn by_name(name: &str, tol: Tolerance, seed: u64) -> Result<Self> {
        match name {
            "z2" => Self::z2(tol, seed),
            "z2-perturbed" => Self::build(name, 1.1, tol, seed),
            _ => Err(Error::Structural(format!("unknown suite `{name}`"))),
        }
    }

    pub fn z2(tol: Tolerance, seed: u64) -> Result<Self> {
        Self::build("z2", 1.0, tol, seed)
    }

    /// `scale` multiplies the sign tensorator; anything but 1 breaks it.
    fn build(name: &str, scale: f64, tol: Tolerance, seed: u64) -> Result<Self> {
        let vec = Arc::new(twocat::vec());
        let z2 = Arc::new(twocat::vec_z2());
        let id = Arc::new(DagFunctor::identity(&z2));
        let sign = Arc::new(sign_z2(&z2, -scale)?);
        let incl = Arc::new(inclusion_vec_z2(&vec, &z2)?);
        let forget = Arc::new(forget_z2(&z2, &vec)?);
        let (one, i) = (C64::new(1.0, 0.0), C64::new(0.0, 1.0));
        let sign_to_id = scalar_transformation("sign=>id", &sign, &id, &[one, i])?;
        let g = z2.simple_index("g")?;
        let char_g = character_transformation("chi", &id, OneCell::simple(&z2, g), &[one, -one])?;
        let a = OneCell::from_mult(&z2, 0, 0, vec![1, 1])?;
        let phi2 = character_transformation("1+chi", &id, a.clone(), &[one, -one])?;
        let n = Modification::new(vec![TwoCell::new(
            a.clone(),
            a,
            vec![
                CMat::scalar(C64::new(0.5, 0.0)),
                CMat::scalar(C64::new(2.0, 0.0)),
            ],
        )?]);
        Ok(Self {
            name: name.into(),
            vec,
            z2,
            id,
            sign,
            incl,
            forget,
            sign_to_id,
            char_g,
            phi2,
            n,
            tol,
            seed,
        })
    }

    pub fn functors(&self) -> [&Arc<DagFunctor>; 4] {
        [&self.id, &self.sign, &self.incl, &self.forget]
    }

    /// Trivial Q-systems of `p`.
    pub fn trivial_list(p: &Presentation) -> Result<Vec<Arc<QSystem>>> {
        (0..p.num_objects())
            .map(|b| trivial_qsystem(p, b))
            .collect()
    }

    /// `1` and `C[Z2]`.
    pub fn z2_list(&self) -> Result<Vec<Arc<QSystem>>> {
        Ok(vec![
            trivial_qsystem(&self.z2, 0)?,
            group_algebra(&self.z2, 0, 1.0)?,
        ])
    }

    /// `src` together with its images under `fs`.
    pub fn closure(src: &[Arc<QSystem>], fs: &[&DagFunctor]) -> Result<Vec<Arc<QSystem>>> {
        let mut out = src.to_vec();
        for f in fs {
            for q in image_qsystems(f, src)? {
                if !out.iter().any(|o| o.same_as(&q)) {
                    out.push(q);
                }
            }
        }
        Ok(out)
    }

    fn cat(&self, p: &Arc<Presentation>, qs: Vec<Arc<QSystem>>) -> Result<Arc<QSysCat>> {
        Ok(Arc::new(QSysCat::new(p.clone(), qs, self.tol, self.seed)?))
    }

    /// Runs every check of the suite. A section that cannot be evaluated is
    /// recorded as a single failed entry.
    pub fn run(&self) -> Report {
        let mut r = Report::new();
        let sections: [Section; 7] = [
            ("skeletal", Self::run_skeletal),
            ("qsys", Self::run_qsys),
            ("psi", Self::run_psi),
            ("strict", Self::run_strict),
            ("associativity", Self::run_associativity),
            ("pentagon", Self::run_pentagon),
            ("dominance", Self::run_dominance),
        ];
        for (name, f) in sections {
            match f(self) {
                Ok(rep) => r.extend(rep),
                Err(e) => {
                    r.push_failure(format!("{name}/error"), e.to_string(), self.tol.bound(0.0))
                }
            }
        }
        r
    }

    /// The bundled functors, transformations and modification themselves.
    pub fn run_skeletal(&self) -> Result<Report> {
        let mut r = Report::new();
        let (tol, z2) = (self.tol, &*self.z2);
        for f in self.functors() {
            r.extend_prefixed(
                &format!("functor/{}", f.name),
                check_functor(&*f.src, &*f.tgt, &**f, tol)?,
            );
        }
        for phi in [&self.sign_to_id, &self.char_g, &self.phi2] {
            r.extend_prefixed(
                &format!("transformation/{}", phi.name),
                check_transformation(z2, z2, &*phi.f, &*phi.g, phi, tol)?,
            );
        }
        let (id, p2) = (&*self.id, &self.phi2);
        r.extend_prefixed(
            "modification/n",
            check_modification(z2, z2, id, id, p2, p2, &self.n, tol)?,
        );
        Ok(r)
    }

    /// `QSys(F)`, `QSys(φ)`, `QSys(n)` and `QSys⊗` on `{1, C[Z2]}`.
    pub fn run_qsys(&self) -> Result<Report> {
        let mut r = Report::new();
        let (tol, z2) = (self.tol, &*self.z2);
        let id = &*self.id;
        let src = self.cat(&self.z2, self.z2_list()?)?;
        let tgt = self.cat(&self.z2, Self::closure(&self.z2_list()?, &[&self.sign])?)?;
        let q_id = QSysFunctor::new(self.id.clone(), src.clone(), tgt.clone())?;
        let q_sign = QSysFunctor::new(self.sign.clone(), src.clone(), tgt.clone())?;
        let vec_src = self.cat(&self.vec, Self::trivial_list(&self.vec)?)?;
        let q_incl = QSysFunctor::new(self.incl.clone(), vec_src.clone(), tgt.clone())?;
        let z2_triv = self.cat(&self.z2, Self::trivial_list(z2)?)?;
        let q_forget = QSysFunctor::new(self.forget.clone(), z2_triv, vec_src)?;
        for q in [&q_id, &q_sign, &q_incl, &q_forget] {
            r.extend_prefixed(
                &format!("qsys-functor/{}", q.f.name),
                check_functor(&*q.src, &*q.tgt, q, tol)?,
            );
        }

        let t_sign = QSysTransformation::new(&self.sign_to_id, &q_sign, &q_id)?;
        let t_chi = QSysTransformation::new(&self.char_g, &q_id, &q_id)?;
        let t_phi2 = QSysTransformation::new(&self.phi2, &q_id, &q_id)?;
        for (t, phi) in [
            (&t_sign, &self.sign_to_id),
            (&t_chi, &self.char_g),
            (&t_phi2, &self.phi2),
        ] {
            r.extend_prefixed(
                &format!("qsys-transformation/{}", phi.name),
                check_transformation(&*src, &*tgt, t.qf, t.qg, t, tol)?,
            );
        }
        let qn = qsys_modification(&self.n, &t_phi2, &t_phi2)?;
        r.extend_prefixed(
            "qsys-modification/n",
            check_modification(&*src, &*tgt, &q_id, &q_id, &t_phi2, &t_phi2, &qn, tol)?,
        );

        let both = FunTensor {
            f: &*self.sign,
            g: id,
            h: id,
            phi: &self.sign_to_id,
            psi: &self.char_g,
            a: z2,
            b: z2,
        };
        let t_both = QSysTransformation::new(&both, &q_sign, &q_id)?;
        let m = qsys_tensorator(&t_sign, &t_chi, &t_both)?;
        for (q, c) in src.qsystems().iter().zip(&m.comps) {
            r.push(
                format!("qsys-tensorator/unitary/{}", q.name),
                "QSys⊗ is unitary",
                unitarity(&*tgt, c)?,
                tol.bound(0.0),
            );
        }
        let tensor = FunTensor {
            f: &q_sign,
            g: &q_id,
            h: &q_id,
            phi: &t_sign,
            psi: &t_chi,
            a: &*src,
            b: &*tgt,
        };
        r.extend_prefixed(
            "qsys-tensorator",
            check_modification(&*src, &*tgt, &q_sign, &q_id, &tensor, &t_both, &m, tol)?,
        );
        Ok(r)
    }

    /// Pentagon and triangle of the relative tensor product on every chain of
    /// simple bimodules over `{1, C[Z2]}`.
    pub fn run_pentagon(&self) -> Result<Report> {
        let cat = self.cat(&self.z2, self.z2_list()?)?;
        let c = &*cat;
        let objs = c.objects();
        let mut simples = Vec::new();
        for a in &objs {
            for b in &objs {
                simples.extend(c.simples(a, b)?);
            }
        }
        let t = self.tol.bound(0.0);
        let mut r = Report::new();
        for w in &simples {
            for x in simples.iter().filter(|x| x.left.same_as(&w.right)) {
                r.push(
                    format!("qsys-triangle/{},{}", w.label, x.label),
                    "triangle in QSys",
                    triangle(c, w, x)?,
                    t,
                );
                for y in simples.iter().filter(|y| y.left.same_as(&x.right)) {
                    for z in simples.iter().filter(|z| z.left.same_as(&y.right)) {
                        let id = format!(
                            "qsys-pentagon/{},{},{},{}",
                            w.label, x.label, y.label, z.label
                        );
                        r.push(
                            id,
                            "pentagon for the relative tensor product",
                            pentagon(c, w, x, y, z)?,
                            t,
                        );
                    }
                }
            }
        }
        Ok(r)
    }

    /// A dagger condensation `1_b ↠ Q` for every Q-system the suite uses.
    pub fn run_dominance(&self) -> Result<Report> {
        let mut qs = Self::closure(&self.z2_list()?, &[&self.sign])?;
        qs.extend(Self::trivial_list(&self.vec)?);
        let mut r = Report::new();
        for q in &qs {
            let p = if q.q.mult.len() == self.vec.num_simples() {
                &self.vec
            } else {
                &self.z2
            };
            let c = condensation_from_qsystem(p, q, self.tol)?;
            r.extend_prefixed(&format!("dominance/{}", q.name), c.report);
        }
        Ok(r)
    }

    /// Monoidality of `QSys⊗` on `sign=>id`, `chi`, `1+chi`.
    pub fn run_associativity(&self) -> Result<Report> {
        let src = self.cat(&self.z2, self.z2_list()?)?;
        let tgt = self.cat(&self.z2, Self::closure(&self.z2_list()?, &[&self.sign])?)?;
        let q_id = QSysFunctor::new(self.id.clone(), src.clone(), tgt.clone())?;
        let q_sign = QSysFunctor::new(self.sign.clone(), src, tgt)?;
        qsys_associativity_square(
            [&q_sign, &q_id, &q_id, &q_id],
            &self.sign_to_id,
            &self.char_g,
            &self.phi2,
            self.tol,
        )
    }

    /// `ψ^F` for every bundled functor, on trivial Q-systems.
    pub fn run_psi(&self) -> Result<Report> {
        let mut r = Report::new();
        for f in self.functors() {
            let src_list = Self::trivial_list(&f.src)?;
            let src = self.cat(&f.src, src_list.clone())?;
            let mut tgt_list = Self::trivial_list(&f.tgt)?;
            for q in image_qsystems(f, &src_list)? {
                if !tgt_list.iter().any(|o| o.same_as(&q)) {
                    tgt_list.push(q);
                }
            }
            let tgt = self.cat(&f.tgt, tgt_list)?;
            let qf = QSysFunctor::new(f.clone(), src.clone(), tgt.clone())?;
            let (is, it) = (Ambient::new(src.clone())?, Ambient::new(tgt.clone())?);
            let psi = psi_f(&qf, &is, &it)?;
            let lhs = Composite {
                g: &it,
                f: &**f,
                c: &*tgt,
            };
            let rhs = Composite {
                g: &qf,
                f: &is,
                c: &*tgt,
            };
            r.extend_prefixed(
                &format!("psi/{}", f.name),
                check_transformation(&*f.src, &*tgt, &lhs, &rhs, &psi, self.tol)?,
            );
        }
        Ok(r)
    }

    /// `QSys(G) ∘ QSys(F) = QSys(G∘F)` for `(incl, sign)` and `(sign, sign)`,
    /// at tolerance `1e-12`.
    pub fn run_strict(&self) -> Result<Report> {
        let mut r = Report::new();
        let tgt_list = Self::closure(&self.z2_list()?, &[&self.sign])?;
        let tgt = self.cat(&self.z2, tgt_list.clone())?;
        let mid = self.cat(&self.z2, tgt_list)?;
        for (f, g) in [(&self.incl, &self.sign), (&self.sign, &self.sign)] {
            let src = if f.src.name() == self.vec.name() {
                self.cat(&self.vec, Self::trivial_list(&self.vec)?)?
            } else {
                self.cat(&self.z2, self.z2_list()?)?
            };
            let gf = Arc::new(compose_functors(g, f)?);
            let qf = QSysFunctor::new(f.clone(), src.clone(), mid.clone())?;
            let qg = QSysFunctor::new(g.clone(), mid.clone(), tgt.clone())?;
            let qgf = QSysFunctor::new(gf, src, tgt.clone())?;
            r.extend_prefixed(
                &format!("{}∘{}", g.name, f.name),
                verify_strict_1_functoriality(&qf, &qg, &qgf, 1e-12)?,
            );
        }
        Ok(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functoriality::Transformation2;

    #[test]
    fn bundled_functors_are_coherent() {
        let s = Suite::z2(Tolerance::default(), 7).unwrap();
        for f in s.functors() {
            let r = check_functor(&*f.src, &*f.tgt, &**f, s.tol).unwrap();
            assert!(r.passed(), "{}: {r}", f.name);
        }
    }

    #[test]
    fn sign_component_squares_to_minus_one() {
        let s = Suite::z2(Tolerance::default(), 7).unwrap();
        let g = OneCell::simple(&s.z2, 1);
        let c = s.sign_to_id.comp1(&g).unwrap();
        let sq = c.after(&c).unwrap();
        assert!(sq.distance(&TwoCell::scalar_on(&g, C64::new(-1.0, 0.0))) < 1e-14);
    }
}
