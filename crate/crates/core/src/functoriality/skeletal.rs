use std::collections::HashMap;
use std::sync::Arc;

use super::{Functor2, Transformation2};
use crate::category::chain;
use crate::error::{Error, Result};
use crate::linalg::CMat;
use crate::twocat::{OneCell, Presentation, TwoCell};

/// A dagger 2-functor between presentations, given on simples and extended
/// additively.
///
/// `F(X)` for `X = ⊕ s^{m_s}` contains the copies of each target simple in
/// the order (source simple, copy of it in `X`, copy in `F(s)`), so a 2-cell
/// with blocks `f_s` goes to the blocks `⊕_s f_s ⊗ id`.
#[derive(Clone, Debug)]
pub struct DagFunctor {
    pub name: String,
    pub src: Arc<Presentation>,
    pub tgt: Arc<Presentation>,
    pub obj_map: Vec<usize>,
    pub cell_map: Vec<OneCell>,
    /// `F²_{s,t}` for composable simples.
    pub f2: HashMap<(usize, usize), TwoCell>,
    /// `F¹_a` per object.
    pub f1: Vec<TwoCell>,
}

impl DagFunctor {
    /// Checks that every piece of data has the right shape.
    pub fn new(
        name: impl Into<String>,
        src: Arc<Presentation>,
        tgt: Arc<Presentation>,
        obj_map: Vec<usize>,
        cell_map: Vec<OneCell>,
        f2: HashMap<(usize, usize), TwoCell>,
        f1: Vec<TwoCell>,
    ) -> Result<Self> {
        if obj_map.len() != src.num_objects() || obj_map.iter().any(|&b| b >= tgt.num_objects()) {
            return Err(Error::Structural(
                "object map does not match the presentations".into(),
            ));
        }
        if cell_map.len() != src.num_simples() {
            return Err(Error::Structural(
                "cell map must have one entry per simple".into(),
            ));
        }
        if f1.len() != src.num_objects() {
            return Err(Error::Structural(
                "F¹ must have one entry per object".into(),
            ));
        }
        let f = Self {
            name: name.into(),
            src,
            tgt,
            obj_map,
            cell_map,
            f2,
            f1,
        };
        for (s, x) in f.src.simples().iter().enumerate() {
            let fx = &f.cell_map[s];
            if fx.src != f.obj_map[x.src]
                || fx.tgt != f.obj_map[x.tgt]
                || fx.mult.len() != f.tgt.num_simples()
            {
                return Err(Error::ObjectMismatch(format!(
                    "image of simple `{}` has the wrong endpoints",
                    x.id
                )));
            }
        }
        for (s, x) in f.src.simples().iter().enumerate() {
            for (t, y) in f.src.simples().iter().enumerate() {
                if x.tgt != y.src {
                    continue;
                }
                let cell = f.f2.get(&(s, t)).ok_or_else(|| {
                    Error::Structural(format!("missing F² for ({}, {})", x.id, y.id))
                })?;
                let dom = f.tgt.tensor(&f.cell_map[s], &f.cell_map[t])?;
                let cod = f.one_cell(
                    &f.src
                        .tensor(&OneCell::simple(&f.src, s), &OneCell::simple(&f.src, t))?,
                )?;
                if cell.dom != dom || cell.cod != cod {
                    return Err(Error::Shape(format!(
                        "F² for ({}, {}) has the wrong shape",
                        x.id, y.id
                    )));
                }
            }
        }
        for a in 0..f.src.num_objects() {
            let dom = OneCell::unit(&f.tgt, f.obj_map[a]);
            let cod = f.one_cell(&OneCell::unit(&f.src, a))?;
            if f.f1[a].dom != dom || f.f1[a].cod != cod {
                return Err(Error::Shape(format!(
                    "F¹ for object {a} has the wrong shape"
                )));
            }
        }
        Ok(f)
    }

    /// The identity functor with identity coheretors.
    pub fn identity(p: &Arc<Presentation>) -> Self {
        let cell_map = (0..p.num_simples())
            .map(|s| OneCell::simple(p, s))
            .collect();
        let mut f2 = HashMap::new();
        for (s, x) in p.simples().iter().enumerate() {
            for (t, y) in p.simples().iter().enumerate() {
                if x.tgt == y.src {
                    let st = p
                        .tensor(&OneCell::simple(p, s), &OneCell::simple(p, t))
                        .expect("composable");
                    f2.insert((s, t), TwoCell::identity(&st));
                }
            }
        }
        let f1 = (0..p.num_objects())
            .map(|a| TwoCell::identity(&OneCell::unit(p, a)))
            .collect();
        Self {
            name: format!("id_{}", p.name()),
            src: p.clone(),
            tgt: p.clone(),
            obj_map: (0..p.num_objects()).collect(),
            cell_map,
            f2,
            f1,
        }
    }

    /// A copy with `F²_{s,t}` replaced.
    pub fn with_f2(&self, s: usize, t: usize, cell: TwoCell) -> Result<Self> {
        let mut f2 = self.f2.clone();
        f2.insert((s, t), cell);
        Self::new(
            self.name.clone(),
            self.src.clone(),
            self.tgt.clone(),
            self.obj_map.clone(),
            self.cell_map.clone(),
            f2,
            self.f1.clone(),
        )
    }

    pub fn one_cell(&self, x: &OneCell) -> Result<OneCell> {
        let mut mult = vec![0; self.tgt.num_simples()];
        for (s, &m) in x.mult.iter().enumerate() {
            for (t, &n) in self.cell_map[s].mult.iter().enumerate() {
                mult[t] += m * n;
            }
        }
        OneCell::from_mult(&self.tgt, self.obj_map[x.src], self.obj_map[x.tgt], mult)
    }

    pub fn two_cell(&self, f: &TwoCell) -> Result<TwoCell> {
        let dom = self.one_cell(&f.dom)?;
        let cod = self.one_cell(&f.cod)?;
        let blocks = (0..self.tgt.num_simples())
            .map(|u| {
                let mut block = CMat::zeros(cod.mult[u], dom.mult[u]);
                let (mut r0, mut c0) = (0, 0);
                for (s, fs) in f.blocks.iter().enumerate() {
                    let n = self.cell_map[s].mult[u];
                    if n > 0 {
                        block.set_block(r0, c0, &fs.kron(&CMat::identity(n)));
                    }
                    r0 += fs.rows() * n;
                    c0 += fs.cols() * n;
                }
                block
            })
            .collect();
        TwoCell::new(dom, cod, blocks)
    }

    /// `F(ι_{s,a}) : F(s) ⇒ F(X)`.
    fn image_inclusion(&self, x: &OneCell, s: usize, a: usize) -> Result<TwoCell> {
        self.two_cell(&self.src.copy_inclusion(x, s, a))
    }

    /// `F²_{X,Y} = Σ F(ι ⊗ ι) ⋆ F²_{s,t} ⋆ (F(ι)† ⊗ F(ι)†)` over copies of
    /// simples in `X` and `Y`.
    pub fn tensorator_cell(&self, x: &OneCell, y: &OneCell) -> Result<TwoCell> {
        let (p, q) = (&*self.src, &*self.tgt);
        let dom = q.tensor(&self.one_cell(x)?, &self.one_cell(y)?)?;
        let cod = self.one_cell(&p.tensor(x, y)?)?;
        let mut out = TwoCell::zero(&dom, &cod);
        for (s, a) in x.summands() {
            let ix = p.copy_inclusion(x, s, a);
            let fix = self.image_inclusion(x, s, a)?;
            for (t, b) in y.summands() {
                let iy = p.copy_inclusion(y, t, b);
                let fiy = self.image_inclusion(y, t, b)?;
                let f2 = self
                    .f2
                    .get(&(s, t))
                    .ok_or_else(|| Error::Structural("missing F² entry".into()))?;
                let term = chain(
                    q,
                    &[
                        self.two_cell(&p.tensor2(&ix, &iy)?)?,
                        f2.clone(),
                        q.tensor2(&fix.dagger(), &fiy.dagger())?,
                    ],
                )?;
                out = out.add(&term)?;
            }
        }
        Ok(out)
    }
}

impl Functor2<Presentation, Presentation> for DagFunctor {
    fn obj(&self, a: &usize) -> Result<usize> {
        self.obj_map
            .get(*a)
            .copied()
            .ok_or_else(|| Error::UnknownObject(a.to_string()))
    }

    fn one(&self, x: &OneCell) -> Result<OneCell> {
        self.one_cell(x)
    }

    fn two(&self, f: &TwoCell) -> Result<TwoCell> {
        self.two_cell(f)
    }

    fn tensorator(&self, x: &OneCell, y: &OneCell) -> Result<TwoCell> {
        self.tensorator_cell(x, y)
    }

    fn unitor(&self, a: &usize) -> Result<TwoCell> {
        self.f1
            .get(*a)
            .cloned()
            .ok_or_else(|| Error::UnknownObject(a.to_string()))
    }
}

/// `G ∘ F` with `(G∘F)² = G(F²) ⋆ G²` and `(G∘F)¹ = G(F¹) ⋆ G¹`.
pub fn compose_functors(g: &DagFunctor, f: &DagFunctor) -> Result<DagFunctor> {
    if !Arc::ptr_eq(&f.tgt, &g.src)
        && (f.tgt.name() != g.src.name() || f.tgt.simples() != g.src.simples())
    {
        return Err(Error::ObjectMismatch(format!(
            "`{}` does not land in the source of `{}`",
            f.name, g.name
        )));
    }
    let obj_map = f.obj_map.iter().map(|&b| g.obj_map[b]).collect();
    let cell_map = f
        .cell_map
        .iter()
        .map(|x| g.one_cell(x))
        .collect::<Result<Vec<_>>>()?;
    let mut f2 = HashMap::new();
    for (&(s, t), cell) in &f.f2 {
        let gf2 = g
            .two_cell(cell)?
            .after(&g.tensorator_cell(&f.cell_map[s], &f.cell_map[t])?)?;
        f2.insert((s, t), gf2);
    }
    let f1 =
        f.f1.iter()
            .enumerate()
            .map(|(a, c)| g.two_cell(c)?.after(&g.f1[f.obj_map[a]]))
            .collect::<Result<Vec<_>>>()?;
    DagFunctor::new(
        format!("{}∘{}", g.name, f.name),
        f.src.clone(),
        g.tgt.clone(),
        obj_map,
        cell_map,
        f2,
        f1,
    )
}

/// Reads a skeletal functor off any functor between presentations: values
/// on simples, and `F²` re-expressed in the additive ordering through the
/// unitary `Σ ι_{k,c} ⋆ F(ι_{k,c})†`.
pub fn materialize<F>(
    name: impl Into<String>,
    src: &Arc<Presentation>,
    tgt: &Arc<Presentation>,
    f: &F,
) -> Result<DagFunctor>
where
    F: Functor2<Presentation, Presentation> + ?Sized,
{
    let obj_map = (0..src.num_objects())
        .map(|a| f.obj(&a))
        .collect::<Result<Vec<_>>>()?;
    let cell_map = (0..src.num_simples())
        .map(|s| f.one(&OneCell::simple(src, s)))
        .collect::<Result<Vec<_>>>()?;
    let probe = DagFunctor {
        name: String::new(),
        src: src.clone(),
        tgt: tgt.clone(),
        obj_map: obj_map.clone(),
        cell_map: cell_map.clone(),
        f2: HashMap::new(),
        f1: Vec::new(),
    };
    let mut f2 = HashMap::new();
    for (s, x) in src.simples().iter().enumerate() {
        for (t, y) in src.simples().iter().enumerate() {
            if x.tgt != y.src {
                continue;
            }
            let st = src.tensor(&OneCell::simple(src, s), &OneCell::simple(src, t))?;
            let direct = f.one(&st)?;
            let additive = probe.one_cell(&st)?;
            let mut w = TwoCell::zero(&direct, &additive);
            for (k, c) in st.summands() {
                let inc = src.copy_inclusion(&st, k, c);
                w = w.add(&probe.two_cell(&inc)?.after(&f.two(&inc)?.dagger())?)?;
            }
            f2.insert(
                (s, t),
                w.after(&f.tensorator(&OneCell::simple(src, s), &OneCell::simple(src, t))?)?,
            );
        }
    }
    let f1 = (0..src.num_objects())
        .map(|a| f.unitor(&a))
        .collect::<Result<Vec<_>>>()?;
    DagFunctor::new(name, src.clone(), tgt.clone(), obj_map, cell_map, f2, f1)
}

/// A transformation between skeletal functors, given on simples.
///
/// On a direct sum `X`, `φ_X = Σ (id ⊗ G(ι_{s,a})) ⋆ φ_s ⋆ (F(ι_{s,a})† ⊗ id)`.
#[derive(Clone, Debug)]
pub struct Transformation {
    pub name: String,
    pub f: Arc<DagFunctor>,
    pub g: Arc<DagFunctor>,
    /// `φ_c : F(c) → G(c)` per object.
    pub comp0: Vec<OneCell>,
    /// `φ_s : F(s)⊗φ_b ⇒ φ_a⊗G(s)` per simple.
    pub comp1: Vec<TwoCell>,
}

impl Transformation {
    pub fn new(
        name: impl Into<String>,
        f: Arc<DagFunctor>,
        g: Arc<DagFunctor>,
        comp0: Vec<OneCell>,
        comp1: Vec<TwoCell>,
    ) -> Result<Self> {
        let src = f.src.clone();
        let tgt = f.tgt.clone();
        if f.obj_map.len() != g.obj_map.len() || f.cell_map.len() != g.cell_map.len() {
            return Err(Error::ObjectMismatch(
                "functors have different sources".into(),
            ));
        }
        if comp0.len() != src.num_objects() || comp1.len() != src.num_simples() {
            return Err(Error::Structural(
                "one 1-cell per object and one 2-cell per simple are required".into(),
            ));
        }
        for (c, x) in comp0.iter().enumerate() {
            if x.src != f.obj_map[c] || x.tgt != g.obj_map[c] {
                return Err(Error::ObjectMismatch(format!(
                    "component at object {c} has the wrong endpoints"
                )));
            }
        }
        for (s, x) in src.simples().iter().enumerate() {
            let dom = tgt.tensor(&f.cell_map[s], &comp0[x.tgt])?;
            let cod = tgt.tensor(&comp0[x.src], &g.cell_map[s])?;
            if comp1[s].dom != dom || comp1[s].cod != cod {
                return Err(Error::Shape(format!(
                    "component at simple `{}` has the wrong shape",
                    x.id
                )));
            }
        }
        Ok(Self {
            name: name.into(),
            f,
            g,
            comp0,
            comp1,
        })
    }

    /// `id_F` with components `λ† ⋆ ρ`.
    pub fn identity(f: &Arc<DagFunctor>) -> Result<Self> {
        let tgt = &f.tgt;
        let comp0: Vec<OneCell> = f.obj_map.iter().map(|&b| OneCell::unit(tgt, b)).collect();
        let comp1 = f
            .cell_map
            .iter()
            .map(|x| tgt.lunitor(x)?.dagger().after(&tgt.runitor(x)?))
            .collect::<Result<Vec<_>>>()?;
        Self::new(format!("id_{}", f.name), f.clone(), f.clone(), comp0, comp1)
    }

    pub fn comp1_cell(&self, x: &OneCell) -> Result<TwoCell> {
        let (p, q) = (&*self.f.src, &*self.f.tgt);
        let (pa, pb) = (&self.comp0[x.src], &self.comp0[x.tgt]);
        let dom = q.tensor(&self.f.one_cell(x)?, pb)?;
        let cod = q.tensor(pa, &self.g.one_cell(x)?)?;
        let mut out = TwoCell::zero(&dom, &cod);
        for (s, a) in x.summands() {
            let inc = p.copy_inclusion(x, s, a);
            let gi = self.g.two_cell(&inc)?;
            let fi = self.f.two_cell(&inc)?;
            let term = chain(
                q,
                &[
                    q.tensor2(&TwoCell::identity(pa), &gi)?,
                    self.comp1[s].clone(),
                    q.tensor2(&fi.dagger(), &TwoCell::identity(pb))?,
                ],
            )?;
            out = out.add(&term)?;
        }
        Ok(out)
    }
}

impl Transformation2<Presentation, Presentation> for Transformation {
    fn comp0(&self, c: &usize) -> Result<OneCell> {
        self.comp0
            .get(*c)
            .cloned()
            .ok_or_else(|| Error::UnknownObject(c.to_string()))
    }

    fn comp1(&self, x: &OneCell) -> Result<TwoCell> {
        self.comp1_cell(x)
    }
}

/// Largest entrywise difference between two skeletal functors' data.
pub fn functor_deviation(a: &DagFunctor, b: &DagFunctor) -> f64 {
    if a.obj_map != b.obj_map || a.cell_map != b.cell_map || a.f2.len() != b.f2.len() {
        return f64::INFINITY;
    }
    let mut d = 0.0f64;
    for (k, c) in &a.f2 {
        d = d.max(b.f2.get(k).map_or(f64::INFINITY, |e| c.distance(e)));
    }
    for (x, y) in a.f1.iter().zip(&b.f1) {
        d = d.max(x.distance(y));
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functoriality::check_functor;
    use crate::linalg::{Tolerance, C64};
    use crate::twocat::{fibonacci, vec_z2};

    #[test]
    fn identity_functor_is_exact() {
        for p in [Arc::new(vec_z2()), Arc::new(fibonacci())] {
            let id = DagFunctor::identity(&p);
            let r = check_functor(&*p, &*p, &id, Tolerance::default()).unwrap();
            assert!(r.passed(), "{r}");
            assert!(r.max_residual() < 1e-12);
        }
    }

    #[test]
    fn additive_extension_of_two_cells() {
        let p = Arc::new(vec_z2());
        let id = DagFunctor::identity(&p);
        let x = OneCell::from_mult(&p, 0, 0, vec![2, 1]).unwrap();
        let f = TwoCell::new(
            x.clone(),
            x.clone(),
            vec![
                CMat::from_real(2, 2, &[1.0, 2.0, 3.0, 4.0]).unwrap(),
                CMat::scalar(C64::new(0.0, 1.0)),
            ],
        )
        .unwrap();
        assert_eq!(id.two_cell(&f).unwrap(), f);
        let q = OneCell::from_mult(&p, 0, 0, vec![1, 1]).unwrap();
        let t = id.tensorator_cell(&q, &q).unwrap();
        assert!(t.distance(&TwoCell::identity(&t.dom)) < 1e-15);
    }

    #[test]
    fn composition_with_identity() {
        let p = Arc::new(fibonacci());
        let id = DagFunctor::identity(&p);
        let c = compose_functors(&id, &id).unwrap();
        assert_eq!(functor_deviation(&c, &id), 0.0);
    }
}
