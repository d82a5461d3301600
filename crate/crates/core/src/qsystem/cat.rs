use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use super::intertwiners::intertwiner_space;
use super::reltensor::{associator_from, rel_tensor, RelTensor};
use super::simples::simple_bimodules;
use super::{trivial_qsystem, unit_bimodule, Bimodule, QSystem};
use crate::category::TwoCategory;
use crate::error::{Error, Result};
use crate::linalg::{Tolerance, C64};
use crate::twocat::{OneCell, Presentation, TwoCell};

/// A bimodule intertwiner `dom ⇒ cod`, stored as an ambient 2-cell.
#[derive(Clone, Debug)]
pub struct Intertwiner {
    pub dom: Arc<Bimodule>,
    pub cod: Arc<Bimodule>,
    pub cell: TwoCell,
}

/// The completion `QSys(C)` restricted to a finite list of Q-systems.
///
/// 1-cells are bimodules and 2-cells are intertwiners; composition is the
/// relative tensor product. Relative tensors, units and simple bimodules are
/// memoised per bimodule identity, so repeated composites return the same
/// `Arc` and the same splitting gauge.
#[derive(Debug)]
pub struct QSysCat {
    p: Arc<Presentation>,
    qsystems: Vec<Arc<QSystem>>,
    tol: Tolerance,
    seed: u64,
    rel: Mutex<HashMap<(u64, u64), RelTensor>>,
    units: Mutex<HashMap<u64, Arc<Bimodule>>>,
    simples: Mutex<HashMap<(u64, u64), Vec<Arc<Bimodule>>>>,
}

impl QSysCat {
    pub fn new(
        p: Arc<Presentation>,
        qsystems: Vec<Arc<QSystem>>,
        tol: Tolerance,
        seed: u64,
    ) -> Result<Self> {
        if qsystems.is_empty() {
            return Err(Error::Structural("the Q-system list is empty".into()));
        }
        for q in &qsystems {
            if q.base >= p.num_objects() {
                return Err(Error::UnknownObject(q.base.to_string()));
            }
        }
        Ok(Self {
            p,
            qsystems,
            tol,
            seed,
            rel: Mutex::default(),
            units: Mutex::default(),
            simples: Mutex::default(),
        })
    }

    /// Trivial Q-systems on every object.
    pub fn trivial(p: Arc<Presentation>, tol: Tolerance, seed: u64) -> Result<Self> {
        let qs = (0..p.num_objects())
            .map(|b| trivial_qsystem(&p, b))
            .collect::<Result<Vec<_>>>()?;
        Self::new(p, qs, tol, seed)
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.p
    }

    pub fn qsystems(&self) -> &[Arc<QSystem>] {
        &self.qsystems
    }

    pub fn tol(&self) -> Tolerance {
        self.tol
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Position of `q` in the list, compared by data.
    pub fn index_of(&self, q: &QSystem) -> Option<usize> {
        self.qsystems.iter().position(|r| r.same_as(q))
    }

    /// The memoised relative tensor product `X ⊗_Q Y`.
    pub fn rel(&self, x: &Arc<Bimodule>, y: &Arc<Bimodule>) -> Result<RelTensor> {
        let key = (x.id(), y.id());
        if let Some(r) = self.rel.lock().unwrap().get(&key) {
            return Ok(r.clone());
        }
        let r = rel_tensor(&self.p, x, y, self.tol)?;
        Ok(self.rel.lock().unwrap().entry(key).or_insert(r).clone())
    }

    /// Intertwiners `x ⇒ y` as an orthonormal list.
    pub fn intertwiners(&self, x: &Arc<Bimodule>, y: &Arc<Bimodule>) -> Result<Vec<Intertwiner>> {
        Ok(intertwiner_space(&self.p, x, y)?
            .into_iter()
            .map(|cell| Intertwiner {
                dom: x.clone(),
                cod: y.clone(),
                cell,
            })
            .collect())
    }

    fn check_parallel(&self, f: &Intertwiner, g: &Intertwiner) -> Result<()> {
        if f.dom.x != g.dom.x || f.cod.x != g.cod.x {
            return Err(Error::DomainMismatch(
                "intertwiners are not parallel".into(),
            ));
        }
        Ok(())
    }

    /// Direct sum of parallel bimodules with its inclusions; a single summand
    /// is returned as is.
    pub fn direct_sum(
        &self,
        parts: &[Arc<Bimodule>],
        left: &Arc<QSystem>,
        right: &Arc<QSystem>,
    ) -> Result<(Arc<Bimodule>, Vec<TwoCell>)> {
        if parts.len() == 1 {
            return Ok((parts[0].clone(), vec![TwoCell::identity(&parts[0].x)]));
        }
        let p = &*self.p;
        let cells: Vec<OneCell> = parts.iter().map(|b| b.x.clone()).collect();
        let ds = p.direct_sum(&cells, left.base, right.base)?;
        let (pq, qq) = (&left.q, &right.q);
        let mut lam = TwoCell::zero(&p.tensor(pq, &ds.sum)?, &ds.sum);
        let mut rho = TwoCell::zero(&p.tensor(&ds.sum, qq)?, &ds.sum);
        for (b, i) in parts.iter().zip(&ds.inclusions) {
            let id = i.dagger();
            lam = lam.add(
                &i.after(&b.lam)?
                    .after(&p.tensor2(&TwoCell::identity(pq), &id)?)?,
            )?;
            rho = rho.add(
                &i.after(&b.rho)?
                    .after(&p.tensor2(&id, &TwoCell::identity(qq))?)?,
            )?;
        }
        let label = if parts.is_empty() {
            "0".to_string()
        } else {
            parts
                .iter()
                .map(|b| b.label.as_str())
                .collect::<Vec<_>>()
                .join("⊕")
        };
        let sum = Bimodule::new_unchecked(label, left.clone(), right.clone(), ds.sum, lam, rho);
        Ok((sum, ds.inclusions))
    }
}

impl TwoCategory for QSysCat {
    type Obj = Arc<QSystem>;
    type One = Arc<Bimodule>;
    type Two = Intertwiner;

    fn objects(&self) -> Vec<Arc<QSystem>> {
        self.qsystems.clone()
    }

    fn simples(&self, a: &Arc<QSystem>, b: &Arc<QSystem>) -> Result<Vec<Arc<Bimodule>>> {
        let key = (a.id(), b.id());
        if let Some(s) = self.simples.lock().unwrap().get(&key) {
            return Ok(s.clone());
        }
        let s = simple_bimodules(&self.p, a, b, self.tol, self.seed)?;
        Ok(self.simples.lock().unwrap().entry(key).or_insert(s).clone())
    }

    fn same_obj(&self, a: &Arc<QSystem>, b: &Arc<QSystem>) -> bool {
        a.same_as(b)
    }

    fn obj_label(&self, a: &Arc<QSystem>) -> String {
        a.name.clone()
    }

    fn one_label(&self, x: &Arc<Bimodule>) -> String {
        x.label.clone()
    }

    fn src(&self, x: &Arc<Bimodule>) -> Arc<QSystem> {
        x.left.clone()
    }

    fn tgt(&self, x: &Arc<Bimodule>) -> Arc<QSystem> {
        x.right.clone()
    }

    fn unit(&self, a: &Arc<QSystem>) -> Result<Arc<Bimodule>> {
        Ok(self
            .units
            .lock()
            .unwrap()
            .entry(a.id())
            .or_insert_with(|| unit_bimodule(a))
            .clone())
    }

    fn tensor(&self, x: &Arc<Bimodule>, y: &Arc<Bimodule>) -> Result<Arc<Bimodule>> {
        Ok(self.rel(x, y)?.result)
    }

    fn dom(&self, f: &Intertwiner) -> Arc<Bimodule> {
        f.dom.clone()
    }

    fn cod(&self, f: &Intertwiner) -> Arc<Bimodule> {
        f.cod.clone()
    }

    fn id2(&self, x: &Arc<Bimodule>) -> Intertwiner {
        Intertwiner {
            dom: x.clone(),
            cod: x.clone(),
            cell: TwoCell::identity(&x.x),
        }
    }

    fn zero2(&self, x: &Arc<Bimodule>, y: &Arc<Bimodule>) -> Intertwiner {
        Intertwiner {
            dom: x.clone(),
            cod: y.clone(),
            cell: TwoCell::zero(&x.x, &y.x),
        }
    }

    fn vcomp(&self, g: &Intertwiner, f: &Intertwiner) -> Result<Intertwiner> {
        if f.cod.x != g.dom.x {
            return Err(Error::DomainMismatch(
                "intertwiners are not composable".into(),
            ));
        }
        Ok(Intertwiner {
            dom: f.dom.clone(),
            cod: g.cod.clone(),
            cell: g.cell.after(&f.cell)?,
        })
    }

    /// `u_{X',Y'} ⋆ (f ⊗ g) ⋆ u_{X,Y}†`.
    fn hcomp(&self, f: &Intertwiner, g: &Intertwiner) -> Result<Intertwiner> {
        let src = self.rel(&f.dom, &g.dom)?;
        let tgt = self.rel(&f.cod, &g.cod)?;
        let cell = tgt
            .u
            .after(&self.p.tensor2(&f.cell, &g.cell)?)?
            .after(&src.u.dagger())?;
        Ok(Intertwiner {
            dom: src.result,
            cod: tgt.result,
            cell,
        })
    }

    fn dagger(&self, f: &Intertwiner) -> Intertwiner {
        Intertwiner {
            dom: f.cod.clone(),
            cod: f.dom.clone(),
            cell: f.cell.dagger(),
        }
    }

    fn add(&self, f: &Intertwiner, g: &Intertwiner) -> Result<Intertwiner> {
        self.check_parallel(f, g)?;
        Ok(Intertwiner {
            dom: f.dom.clone(),
            cod: f.cod.clone(),
            cell: f.cell.add(&g.cell)?,
        })
    }

    fn scale(&self, f: &Intertwiner, z: C64) -> Intertwiner {
        Intertwiner {
            dom: f.dom.clone(),
            cod: f.cod.clone(),
            cell: f.cell.scale(z),
        }
    }

    fn associator(
        &self,
        x: &Arc<Bimodule>,
        y: &Arc<Bimodule>,
        z: &Arc<Bimodule>,
    ) -> Result<Intertwiner> {
        let xy = self.rel(x, y)?;
        let yz = self.rel(y, z)?;
        let xy_z = self.rel(&xy.result, z)?;
        let x_yz = self.rel(x, &yz.result)?;
        let cell = associator_from(&self.p, x, z, y, &xy, &yz, &xy_z, &x_yz)?;
        Ok(Intertwiner {
            dom: xy_z.result,
            cod: x_yz.result,
            cell,
        })
    }

    fn lunitor(&self, x: &Arc<Bimodule>) -> Result<Intertwiner> {
        let unit = self.unit(&x.left)?;
        let rt = self.rel(&unit, x)?;
        Ok(Intertwiner {
            dom: rt.result,
            cod: x.clone(),
            cell: x.lam.after(&rt.u.dagger())?,
        })
    }

    fn runitor(&self, x: &Arc<Bimodule>) -> Result<Intertwiner> {
        let unit = self.unit(&x.right)?;
        let rt = self.rel(x, &unit)?;
        Ok(Intertwiner {
            dom: rt.result,
            cod: x.clone(),
            cell: x.rho.after(&rt.u.dagger())?,
        })
    }

    fn distance(&self, f: &Intertwiner, g: &Intertwiner) -> f64 {
        f.cell.distance(&g.cell)
    }

    fn op_norm(&self, f: &Intertwiner) -> f64 {
        f.cell.op_norm()
    }

    fn hom_basis(&self, x: &Arc<Bimodule>, y: &Arc<Bimodule>) -> Result<Vec<Intertwiner>> {
        self.intertwiners(x, y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::unitarity;
    use crate::qsystem::{check_bimodule, group_algebra};
    use crate::twocat::vec_z2;

    fn z2_cat() -> QSysCat {
        let p = Arc::new(vec_z2());
        let t = trivial_qsystem(&p, 0).unwrap();
        let q = group_algebra(&p, 0, 1.0).unwrap();
        QSysCat::new(p, vec![t, q], Tolerance::default(), 0).unwrap()
    }

    #[test]
    fn tensors_are_memoised() {
        let c = z2_cat();
        let q = c.qsystems()[1].clone();
        let u = c.unit(&q).unwrap();
        let a = c.tensor(&u, &u).unwrap();
        let b = c.tensor(&u, &u).unwrap();
        assert_eq!(a.id(), b.id());
        assert!(Arc::ptr_eq(&c.unit(&q).unwrap(), &u));
    }

    #[test]
    fn structure_cells_are_unitary() {
        let c = z2_cat();
        let objs = c.objects();
        for a in &objs {
            for b in &objs {
                for x in c.simples(a, b).unwrap() {
                    assert!(check_bimodule(c.presentation(), &x, c.tol())
                        .unwrap()
                        .passed());
                    assert!(unitarity(&c, &c.lunitor(&x).unwrap()).unwrap() < 1e-12);
                    assert!(unitarity(&c, &c.runitor(&x).unwrap()).unwrap() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn direct_sum_is_a_bimodule() {
        let c = z2_cat();
        let t = c.qsystems()[0].clone();
        let q = c.qsystems()[1].clone();
        let tq = c.simples(&t, &q).unwrap();
        let (s, inc) = c
            .direct_sum(&[tq[0].clone(), tq[0].clone()], &t, &q)
            .unwrap();
        assert_eq!(inc.len(), 2);
        assert!(
            check_bimodule(c.presentation(), &s, c.tol())
                .unwrap()
                .max_residual()
                < 1e-12
        );
        assert_eq!(c.intertwiners(&s, &s).unwrap().len(), 4);
    }
}
