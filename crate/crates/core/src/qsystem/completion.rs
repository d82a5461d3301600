use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use super::cat::{Intertwiner, QSysCat};
use super::intertwiners::intertwiner_space;
use super::{Bimodule, QSystem};
use crate::category::TwoCategory;
use crate::error::{Error, Result};
use crate::linalg::{CMat, Tolerance, C64};
use crate::twocat::{OneCell, Presentation, PresentationData, Simple, TwoCell};

type Key = (usize, usize, usize, usize);

/// `QSys(C)` on a finite list of Q-systems, emitted as a skeletal
/// presentation together with the bimodules realizing its simples.
#[derive(Debug)]
pub struct Completion {
    pub presentation: Arc<Presentation>,
    pub cat: Arc<QSysCat>,
    simples: Vec<Arc<Bimodule>>,
    bases: HashMap<(usize, usize, usize), Vec<TwoCell>>,
}

/// Completes `p` on `qsystems`. Simples are ordered by source, then target
/// Q-system, then discovery order; the unit bimodule of each Q-system comes
/// first among its endo-simples.
pub fn complete(
    p: &Arc<Presentation>,
    qsystems: &[Arc<QSystem>],
    tol: Tolerance,
    seed: u64,
) -> Result<Completion> {
    Completion::build(Arc::new(QSysCat::new(
        p.clone(),
        qsystems.to_vec(),
        tol,
        seed,
    )?))
}

/// `tr(h) / tr(id)` for an endomorphism of a simple bimodule.
pub(crate) fn scalar(h: &TwoCell) -> C64 {
    let n: usize = h.dom.mult.iter().sum();
    if n == 0 {
        return C64::new(0.0, 0.0);
    }
    h.trace() / n as f64
}

fn is_trivial(p: &Presentation, q: &QSystem) -> bool {
    q.q == OneCell::unit(p, q.base)
}

impl Completion {
    pub fn build(cat: Arc<QSysCat>) -> Result<Self> {
        let p = cat.presentation().clone();
        let qs = cat.qsystems().to_vec();
        for (a, qa) in qs.iter().enumerate() {
            if qs[..a].iter().any(|qb| qb.same_as(qa)) {
                return Err(Error::Structural(format!(
                    "Q-system `{}` is listed twice",
                    qa.name
                )));
            }
        }
        let mut objects: Vec<String> = Vec::new();
        for q in &qs {
            let mut name = q.name.clone();
            if objects.contains(&name) {
                name = format!("{name}#{}", objects.len());
            }
            objects.push(name);
        }

        let mut simples = Vec::new();
        let mut records = Vec::new();
        let mut units = vec![0; qs.len()];
        for (a, qa) in qs.iter().enumerate() {
            for (b, qb) in qs.iter().enumerate() {
                for (k, x) in cat.simples(qa, qb)?.into_iter().enumerate() {
                    if a == b && k == 0 {
                        units[a] = simples.len();
                    }
                    let summands = x.x.summands();
                    let id = if is_trivial(&p, qa) && is_trivial(&p, qb) && summands.len() == 1 {
                        p.simples()[summands[0].0].id.clone()
                    } else {
                        format!("{}|{}#{k}", objects[a], objects[b])
                    };
                    records.push(Simple { id, src: a, tgt: b });
                    simples.push(x);
                }
            }
        }

        let ns = simples.len();
        let mut fusion = Vec::new();
        let mut bases = HashMap::new();
        for a in 0..ns {
            for b in (0..ns).filter(|&b| records[a].tgt == records[b].src) {
                let ab = cat.rel(&simples[a], &simples[b])?;
                let mut total = vec![0usize; p.num_simples()];
                for c in (0..ns).filter(|&c| {
                    records[c].src == records[a].src && records[c].tgt == records[b].tgt
                }) {
                    let es: Vec<TwoCell> = if units[records[a].src] == a {
                        if c == b {
                            vec![ab.u.after(&simples[b].lam.dagger())?]
                        } else {
                            Vec::new()
                        }
                    } else if units[records[b].tgt] == b {
                        if c == a {
                            vec![ab.u.after(&simples[a].rho.dagger())?]
                        } else {
                            Vec::new()
                        }
                    } else {
                        let norm = (simples[c].x.rank() as f64).sqrt();
                        intertwiner_space(&p, &simples[c], &ab.result)?
                            .into_iter()
                            .map(|e| e.scale(C64::new(norm, 0.0)))
                            .collect()
                    };
                    if !es.is_empty() {
                        fusion.push((a, b, c, es.len()));
                        for (t, &m) in total.iter_mut().zip(&simples[c].x.mult) {
                            *t += m * es.len();
                        }
                        bases.insert((a, b, c), es);
                    }
                }
                if total != ab.result.x.mult {
                    return Err(Error::Incomplete(format!(
                        "{} ⊗ {} is not exhausted by the simple bimodules found",
                        records[a].id, records[b].id
                    )));
                }
            }
        }

        let data = PresentationData {
            name: format!("QSys({})", p.name()),
            objects,
            simples: records,
            units,
            fusion,
            ..Default::default()
        };
        let skel = Presentation::skeleton(data.clone())?;
        let trees = skel.trees.clone();
        let mut comp = Self {
            presentation: Arc::new(skel),
            cat,
            simples,
            bases,
        };
        let mut keys: Vec<Key> = trees.keys().copied().collect();
        keys.sort();
        let mut fsymbols = HashMap::new();
        for key in keys {
            let (left, right) = &trees[&key];
            fsymbols.insert(key, comp.fsymbol(key, left, right)?);
        }
        comp.presentation = Arc::new(Presentation::new(PresentationData { fsymbols, ..data })?);
        Ok(comp)
    }

    /// `F[(E,α,β),(G,γ,δ)] = scalar(R† ⋆ α ⋆ L)` with
    /// `L = (e_α ⊗ id_C) ⋆ e_β` and `R = (id_A ⊗ e_γ) ⋆ e_δ`.
    fn fsymbol(
        &self,
        (a, b, c, l): Key,
        left: &[(usize, usize, usize)],
        right: &[(usize, usize, usize)],
    ) -> Result<CMat> {
        let cat = &*self.cat;
        let s = &self.simples;
        let alpha = cat.associator(&s[a], &s[b], &s[c])?;
        let lt = left
            .iter()
            .map(|&(e, al, be)| {
                let ea = self.wrap(e, (a, b), al)?;
                let eb = self.wrap(l, (e, c), be)?;
                cat.vcomp(&cat.hcomp(&ea, &cat.id2(&s[c]))?, &eb)
            })
            .collect::<Result<Vec<_>>>()?;
        let rt = right
            .iter()
            .map(|&(g, ga, de)| {
                let eg = self.wrap(g, (b, c), ga)?;
                let ed = self.wrap(l, (a, g), de)?;
                cat.vcomp(&cat.hcomp(&cat.id2(&s[a]), &eg)?, &ed)
            })
            .collect::<Result<Vec<_>>>()?;
        let mut m = CMat::zeros(left.len(), right.len());
        for (r, lc) in lt.iter().enumerate() {
            let al = alpha.cell.after(&lc.cell)?;
            for (col, rc) in rt.iter().enumerate() {
                m[(r, col)] = scalar(&rc.cell.dagger().after(&al)?);
            }
        }
        Ok(m)
    }

    fn wrap(&self, c: usize, (a, b): (usize, usize), mu: usize) -> Result<Intertwiner> {
        let cell = self
            .fusion_basis(a, b, c)
            .get(mu)
            .cloned()
            .ok_or_else(|| Error::Structural("missing fusion channel".into()))?;
        Ok(Intertwiner {
            dom: self.simples[c].clone(),
            cod: self.cat.rel(&self.simples[a], &self.simples[b])?.result,
            cell,
        })
    }

    /// The bimodule realizing simple `s`.
    pub fn simple(&self, s: usize) -> &Arc<Bimodule> {
        &self.simples[s]
    }

    pub fn simples(&self) -> &[Arc<Bimodule>] {
        &self.simples
    }

    /// Isometric intertwiners `C ⇒ A ⊗_Q B`, one per fusion channel.
    pub fn fusion_basis(&self, a: usize, b: usize, c: usize) -> &[TwoCell] {
        self.bases.get(&(a, b, c)).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn qsystems(&self) -> &[Arc<QSystem>] {
        self.cat.qsystems()
    }
}

/// The embedding of the skeletal completion back into `QSys(C)`: a 1-cell
/// goes to the direct sum of its realized simples, ordered by simple and copy.
#[derive(Debug)]
pub struct Realize {
    comp: Arc<Completion>,
    cache: Mutex<HashMap<OneCell, (Arc<Bimodule>, Vec<TwoCell>)>>,
}

impl Realize {
    pub fn new(comp: Arc<Completion>) -> Self {
        Self {
            comp,
            cache: Mutex::default(),
        }
    }

    pub fn completion(&self) -> &Arc<Completion> {
        &self.comp
    }

    pub fn obj(&self, a: usize) -> Result<Arc<QSystem>> {
        self.comp
            .qsystems()
            .get(a)
            .cloned()
            .ok_or_else(|| Error::UnknownObject(a.to_string()))
    }

    /// The realized bimodule with inclusions of its summands in `(s, a)` order.
    pub fn one_with_inclusions(&self, x: &OneCell) -> Result<(Arc<Bimodule>, Vec<TwoCell>)> {
        if let Some(r) = self.cache.lock().unwrap().get(x) {
            return Ok(r.clone());
        }
        let mut parts = Vec::new();
        for (s, &m) in x.mult.iter().enumerate() {
            for _ in 0..m {
                parts.push(self.comp.simples[s].clone());
            }
        }
        let r = self
            .comp
            .cat
            .direct_sum(&parts, &self.obj(x.src)?, &self.obj(x.tgt)?)?;
        Ok(self
            .cache
            .lock()
            .unwrap()
            .entry(x.clone())
            .or_insert(r)
            .clone())
    }

    pub fn one(&self, x: &OneCell) -> Result<Arc<Bimodule>> {
        Ok(self.one_with_inclusions(x)?.0)
    }

    /// Inclusion of copy `a` of simple `s` into the realization of `x`.
    pub fn inclusion(&self, x: &OneCell, s: usize, a: usize) -> Result<TwoCell> {
        let (_, inc) = self.one_with_inclusions(x)?;
        let off: usize = x.mult[..s].iter().sum();
        inc.get(off + a)
            .cloned()
            .ok_or_else(|| Error::Shape("copy index out of range".into()))
    }

    pub fn two(&self, f: &TwoCell) -> Result<Intertwiner> {
        let dom = self.one(&f.dom)?;
        let cod = self.one(&f.cod)?;
        let mut cell = TwoCell::zero(&dom.x, &cod.x);
        for (s, block) in f.blocks.iter().enumerate() {
            for b in 0..block.rows() {
                for a in 0..block.cols() {
                    let z = block[(b, a)];
                    if z == C64::new(0.0, 0.0) {
                        continue;
                    }
                    let term = self
                        .inclusion(&f.cod, s, b)?
                        .after(&self.inclusion(&f.dom, s, a)?.dagger())?;
                    cell = cell.add(&term.scale(z))?;
                }
            }
        }
        Ok(Intertwiner { dom, cod, cell })
    }

    /// `T : R(X⊗Y) ⇒ R(X) ⊗_Q R(Y)`, assembled from fusion bases.
    pub fn decomposition_unitary(&self, x: &OneCell, y: &OneCell) -> Result<Intertwiner> {
        let p = &*self.comp.presentation;
        let cat = &*self.comp.cat;
        let xy = p.tensor(x, y)?;
        let rx = self.one(x)?;
        let ry = self.one(y)?;
        let rxy = self.one(&xy)?;
        let target = cat.rel(&rx, &ry)?;
        let mut cell = TwoCell::zero(&rxy.x, &target.result.x);
        for (k, copies) in p.decomposition(x, y).into_iter().enumerate() {
            for (c, (i, a, j, b, mu)) in copies.into_iter().enumerate() {
                let si = &self.comp.simples[i];
                let sj = &self.comp.simples[j];
                let ia = Intertwiner {
                    dom: si.clone(),
                    cod: rx.clone(),
                    cell: self.inclusion(x, i, a)?,
                };
                let jb = Intertwiner {
                    dom: sj.clone(),
                    cod: ry.clone(),
                    cell: self.inclusion(y, j, b)?,
                };
                let h = cat.hcomp(&ia, &jb)?;
                let e = &self.comp.fusion_basis(i, j, k)[mu];
                let term = h
                    .cell
                    .after(e)?
                    .after(&self.inclusion(&xy, k, c)?.dagger())?;
                cell = cell.add(&term)?;
            }
        }
        Ok(Intertwiner {
            dom: rxy,
            cod: target.result,
            cell,
        })
    }

    /// `R²_{X,Y} = T† : R(X) ⊗_Q R(Y) ⇒ R(X⊗Y)`.
    pub fn tensorator(&self, x: &OneCell, y: &OneCell) -> Result<Intertwiner> {
        let t = self.decomposition_unitary(x, y)?;
        Ok(self.comp.cat.dagger(&t))
    }

    /// `R¹_a = id : 1_{R(a)} ⇒ R(1_a)`.
    pub fn unitor(&self, a: usize) -> Result<Intertwiner> {
        let q = self.obj(a)?;
        let unit = self.comp.cat.unit(&q)?;
        let r = self.one(&OneCell::unit(&self.comp.presentation, a))?;
        Ok(Intertwiner {
            dom: unit.clone(),
            cod: r,
            cell: TwoCell::identity(&unit.x),
        })
    }
}

/// The decomposition of bimodules into simples: the inverse equivalence of
/// [`Realize`]. `w_X = Σ ι_{s,a} ⋆ e_{s,a}†` identifies `X` with the
/// realization of its decomposition.
#[derive(Debug)]
pub struct Decompose {
    realize: Realize,
    cache: Mutex<HashMap<u64, (OneCell, TwoCell)>>,
}

impl Decompose {
    pub fn new(comp: Arc<Completion>) -> Self {
        Self {
            realize: Realize::new(comp),
            cache: Mutex::default(),
        }
    }

    pub fn completion(&self) -> &Arc<Completion> {
        self.realize.completion()
    }

    pub fn realize(&self) -> &Realize {
        &self.realize
    }

    pub fn obj(&self, q: &QSystem) -> Result<usize> {
        self.completion()
            .cat
            .index_of(q)
            .ok_or_else(|| Error::UnknownObject(q.name.clone()))
    }

    /// `D(X)` and the unitary `w_X : X ⇒ R(D(X))`.
    pub fn one_with_unitary(&self, x: &Arc<Bimodule>) -> Result<(OneCell, TwoCell)> {
        if let Some(r) = self.cache.lock().unwrap().get(&x.id()) {
            return Ok(r.clone());
        }
        let comp = self.completion();
        let p = &*comp.presentation;
        let (a, b) = (self.obj(&x.left)?, self.obj(&x.right)?);
        let mut mult = vec![0; p.num_simples()];
        let mut isos = Vec::new();
        let mut total = vec![0usize; x.x.mult.len()];
        for s in p.simples_between(a, b) {
            let sb = &comp.simples[s];
            let norm = C64::new((sb.x.rank() as f64).sqrt(), 0.0);
            let basis = intertwiner_space(&comp.cat.presentation().clone(), sb, x)?;
            mult[s] = basis.len();
            for (t, &m) in total.iter_mut().zip(&sb.x.mult) {
                *t += m * basis.len();
            }
            for (c, e) in basis.into_iter().enumerate() {
                isos.push((s, c, e.scale(norm)));
            }
        }
        if total != x.x.mult {
            return Err(Error::Incomplete(format!(
                "`{}` is not exhausted by the listed simple bimodules",
                x.label
            )));
        }
        let dx = OneCell::from_mult(p, a, b, mult)?;
        let rdx = self.realize.one(&dx)?;
        let mut w = TwoCell::zero(&x.x, &rdx.x);
        for (s, c, e) in isos {
            w = w.add(&self.realize.inclusion(&dx, s, c)?.after(&e.dagger())?)?;
        }
        let r = (dx, w);
        Ok(self
            .cache
            .lock()
            .unwrap()
            .entry(x.id())
            .or_insert(r)
            .clone())
    }

    pub fn one(&self, x: &Arc<Bimodule>) -> Result<OneCell> {
        Ok(self.one_with_unitary(x)?.0)
    }

    /// Reads off the skeletal 2-cell `a ⇒ b` from a cell `R(a) ⇒ R(b)`.
    pub fn unrealize(&self, g: &TwoCell, a: &OneCell, b: &OneCell) -> Result<TwoCell> {
        let ns = a.mult.len();
        let mut blocks = Vec::with_capacity(ns);
        for s in 0..ns {
            let mut m = CMat::zeros(b.mult[s], a.mult[s]);
            for r in 0..b.mult[s] {
                let ir = self.realize.inclusion(b, s, r)?.dagger();
                let left = ir.after(g)?;
                for c in 0..a.mult[s] {
                    m[(r, c)] = scalar(&left.after(&self.realize.inclusion(a, s, c)?)?);
                }
            }
            blocks.push(m);
        }
        TwoCell::new(a.clone(), b.clone(), blocks)
    }

    pub fn two(&self, f: &Intertwiner) -> Result<TwoCell> {
        let (a, wa) = self.one_with_unitary(&f.dom)?;
        let (b, wb) = self.one_with_unitary(&f.cod)?;
        self.unrealize(&wb.after(&f.cell)?.after(&wa.dagger())?, &a, &b)
    }

    /// `D²_{X,Y} = unreal(w_{X⊗Y} ⋆ (w_X† ⊗_Q w_Y†) ⋆ T)`.
    pub fn tensorator(&self, x: &Arc<Bimodule>, y: &Arc<Bimodule>) -> Result<TwoCell> {
        let cat = &*self.completion().cat;
        let p = self.completion().presentation.clone();
        let (dx, wx) = self.one_with_unitary(x)?;
        let (dy, wy) = self.one_with_unitary(y)?;
        let xy = cat.tensor(x, y)?;
        let (dxy, wxy) = self.one_with_unitary(&xy)?;
        let t = self.realize.decomposition_unitary(&dx, &dy)?;
        let wxd = Intertwiner {
            dom: self.realize.one(&dx)?,
            cod: x.clone(),
            cell: wx.dagger(),
        };
        let wyd = Intertwiner {
            dom: self.realize.one(&dy)?,
            cod: y.clone(),
            cell: wy.dagger(),
        };
        let mid = cat.hcomp(&wxd, &wyd)?;
        let g = wxy.after(&mid.cell)?.after(&t.cell)?;
        self.unrealize(&g, &p.tensor(&dx, &dy)?, &dxy)
    }

    /// `D¹_P = unreal(w_{1_P})`.
    pub fn unitor(&self, q: &Arc<QSystem>) -> Result<TwoCell> {
        let a = self.obj(q)?;
        let unit = self.completion().cat.unit(q)?;
        let (du, w) = self.one_with_unitary(&unit)?;
        let one = OneCell::unit(&self.completion().presentation, a);
        self.unrealize(&w, &one, &du)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::unitarity;
    use crate::qsystem::{group_algebra, trivial_qsystem};
    use crate::twocat::{fibonacci, validate, vec_z2};

    fn z2() -> Completion {
        let p = Arc::new(vec_z2());
        let qs = vec![
            trivial_qsystem(&p, 0).unwrap(),
            group_algebra(&p, 0, 1.0).unwrap(),
        ];
        complete(&p, &qs, Tolerance::default(), 0).unwrap()
    }

    #[test]
    fn z2_completion_census_and_validity() {
        let c = z2();
        let p = &c.presentation;
        let counts: Vec<usize> = [(0, 0), (0, 1), (1, 0), (1, 1)]
            .iter()
            .map(|&(a, b)| p.simples_between(a, b).len())
            .collect();
        assert_eq!(counts, vec![2, 1, 1, 2]);
        let r = validate(p, Tolerance::default()).unwrap();
        assert!(r.passed(), "{r}");
        assert!(r.max_residual() < 1e-8);
    }

    #[test]
    fn trivial_completion_relabels() {
        let base = Arc::new(fibonacci());
        let qs = vec![trivial_qsystem(&base, 0).unwrap()];
        let c = complete(&base, &qs, Tolerance::default(), 0).unwrap();
        let p = &c.presentation;
        assert_eq!(p.num_simples(), 2);
        let idx = |id: &str| p.simple_index(id).unwrap();
        for i in ["1", "tau"] {
            for j in ["1", "tau"] {
                for k in ["1", "tau"] {
                    let want = base.n(
                        base.simple_index(i).unwrap(),
                        base.simple_index(j).unwrap(),
                        base.simple_index(k).unwrap(),
                    );
                    assert_eq!(p.n(idx(i), idx(j), idx(k)), want);
                }
            }
        }
        assert!(validate(p, Tolerance::default()).unwrap().max_residual() < 1e-8);
    }

    #[test]
    fn realize_and_decompose_are_inverse_up_to_unitaries() {
        let c = Arc::new(z2());
        let p = c.presentation.clone();
        let r = Realize::new(c.clone());
        let d = Decompose::new(c.clone());
        let x = OneCell::from_mult(&p, 1, 1, vec![0, 0, 0, 0, 1, 2]).unwrap();
        let y = OneCell::from_mult(&p, 1, 0, vec![0, 0, 0, 1, 0, 0]).unwrap();
        let rx = r.one(&x).unwrap();
        assert_eq!(d.one(&rx).unwrap(), x);
        let t = r.tensorator(&x, &y).unwrap();
        assert!(unitarity(&*c.cat, &t).unwrap() < 1e-12);
        let f = r.two(&TwoCell::identity(&x)).unwrap();
        assert!(f.cell.distance(&TwoCell::identity(&rx.x)) < 1e-15);
        let back = d.two(&f).unwrap();
        assert!(back.distance(&TwoCell::identity(&x)) < 1e-12);
    }
}
