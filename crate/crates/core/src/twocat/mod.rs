//! Finitely presented unitary 2-categories.
//!
//! A [`Presentation`] lists objects, simple 1-cells with their endpoints, a
//! designated unit simple per object, fusion multiplicities `N[i][j][k]` and
//! one unitary F-matrix per composable triple `(i, j, k)` and target `l`.
//!
//! 1-cells are formal direct sums of simples ([`OneCell`]); 2-cells are
//! block matrices indexed by simples ([`TwoCell`]).
//!
//! # Ordering conventions
//!
//! The copies of `k` inside `X ⊗ Y` are listed lexicographically by
//! `(i, a, j, b, μ)`: simple `i` of `X`, its copy `a`, simple `j` of `Y`, its
//! copy `b`, and fusion channel `μ < N[i][j][k]`.
//!
//! Rows of `F[i,j,k;l]` are indexed by left trees `(m, α, β)` with
//! `α < N[i][j][m]`, `β < N[m][k][l]`; columns by right trees `(n, γ, δ)` with
//! `γ < N[j][k][n]`, `δ < N[i][n][l]`, both lexicographic. The associator sends
//! the left tree `(m, α, β)` to `Σ F[(m,α,β),(n,γ,δ)]` times the right tree
//! `(n, γ, δ)`.

mod bundled;
mod calculus;
mod validate;

use std::collections::HashMap;

pub use bundled::{fibonacci, ising, vec, vec_z2, vec_z3, vec_zn};
pub use calculus::DirectSum;
pub use validate::validate;

use crate::error::{Error, Result};
use crate::linalg::{CMat, C64, ONE};

/// A simple 1-cell `src → tgt`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Simple {
    pub id: String,
    pub src: usize,
    pub tgt: usize,
}

pub type TreeBasis = Vec<(usize, usize, usize)>;

/// Raw input for [`Presentation::new`].
#[derive(Clone, Debug, Default)]
pub struct PresentationData {
    pub name: String,
    pub objects: Vec<String>,
    pub simples: Vec<Simple>,
    /// object index → simple index
    pub units: Vec<usize>,
    /// sparse `(i, j, k, N)` entries; unlisted triples are zero
    pub fusion: Vec<(usize, usize, usize, usize)>,
    pub fsymbols: HashMap<(usize, usize, usize, usize), CMat>,
    /// per-simple left/right unitor scalars; defaults to 1
    pub lunit: Option<Vec<C64>>,
    pub runit: Option<Vec<C64>>,
}

/// A finitely presented unitary 2-category.
#[derive(Clone, Debug)]
pub struct Presentation {
    name: String,
    objects: Vec<String>,
    simples: Vec<Simple>,
    units: Vec<usize>,
    fusion: Vec<usize>,
    fsym: HashMap<(usize, usize, usize, usize), CMat>,
    pub(crate) trees: HashMap<(usize, usize, usize, usize), (TreeBasis, TreeBasis)>,
    lunit: Vec<C64>,
    runit: Vec<C64>,
}

impl Presentation {
    /// Builds a presentation, rejecting structural defects: dangling indices,
    /// fusion between non-composable simples, non-endo units, missing F data
    /// and F matrices whose shape disagrees with the fusion-tree bases.
    pub fn new(data: PresentationData) -> Result<Self> {
        let fsymbols = data.fsymbols.clone();
        let mut p = Self::skeleton(data)?;
        for (key, m) in &fsymbols {
            let Some((l, r)) = p.trees.get(key) else {
                return Err(Error::Structural(format!(
                    "F entry for {} given but the triple has no fusion trees",
                    p.describe_key(*key)
                )));
            };
            if m.shape() != (l.len(), r.len()) {
                return Err(Error::Structural(format!(
                    "F entry for {} has shape {}x{}, expected {}x{}",
                    p.describe_key(*key),
                    m.rows(),
                    m.cols(),
                    l.len(),
                    r.len()
                )));
            }
            if !m.is_finite() {
                return Err(Error::NonFinite);
            }
        }
        let mut missing: Vec<_> = p
            .trees
            .keys()
            .filter(|k| !fsymbols.contains_key(k))
            .copied()
            .collect();
        missing.sort();
        if let Some(&key) = missing.first() {
            return Err(Error::Structural(format!(
                "missing F entry for {} ({} missing in total)",
                p.describe_key(key),
                missing.len()
            )));
        }
        p.fsym = fsymbols;
        Ok(p)
    }

    /// Everything except the F data: fusion trees are enumerated but no
    /// F matrix is attached.
    pub(crate) fn skeleton(data: PresentationData) -> Result<Self> {
        let PresentationData {
            name,
            objects,
            simples,
            units,
            fusion,
            lunit,
            runit,
            ..
        } = data;
        if objects.is_empty() {
            return Err(Error::Structural("presentation has no objects".into()));
        }
        let no = objects.len();
        let ns = simples.len();
        for s in &simples {
            if s.src >= no || s.tgt >= no {
                return Err(Error::Structural(format!(
                    "simple `{}` has an endpoint out of range",
                    s.id
                )));
            }
        }
        let mut seen = std::collections::HashSet::new();
        for s in &simples {
            if !seen.insert(s.id.as_str()) {
                return Err(Error::Structural(format!("duplicate simple id `{}`", s.id)));
            }
        }
        if units.len() != no {
            return Err(Error::Structural(format!(
                "expected {no} unit simples, got {}",
                units.len()
            )));
        }
        for (a, &u) in units.iter().enumerate() {
            if u >= ns || simples[u].src != a || simples[u].tgt != a {
                return Err(Error::Structural(format!(
                    "unit of object `{}` is not an endo-simple of it",
                    objects[a]
                )));
            }
        }
        let mut n = vec![0usize; ns * ns * ns];
        for &(i, j, k, m) in &fusion {
            if i >= ns || j >= ns || k >= ns {
                return Err(Error::Structural(format!(
                    "fusion entry ({i},{j},{k}) out of range"
                )));
            }
            if m > 0 {
                let (si, sj, sk) = (&simples[i], &simples[j], &simples[k]);
                if si.tgt != sj.src || sk.src != si.src || sk.tgt != sj.tgt {
                    return Err(Error::Structural(format!(
                        "fusion {} ⊗ {} → {} violates endpoints",
                        si.id, sj.id, sk.id
                    )));
                }
            }
            n[(i * ns + j) * ns + k] = m;
        }
        let lunit = lunit.unwrap_or_else(|| vec![ONE; ns]);
        let runit = runit.unwrap_or_else(|| vec![ONE; ns]);
        if lunit.len() != ns || runit.len() != ns {
            return Err(Error::Structural(
                "unitor data must have one entry per simple".into(),
            ));
        }
        if lunit
            .iter()
            .chain(&runit)
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite);
        }
        let mut p = Self {
            name,
            objects,
            simples,
            units,
            fusion: n,
            fsym: HashMap::new(),
            trees: HashMap::new(),
            lunit,
            runit,
        };
        p.build_trees()?;
        Ok(p)
    }

    fn build_trees(&mut self) -> Result<()> {
        let ns = self.simples.len();
        for i in 0..ns {
            for j in 0..ns {
                if self.simples[i].tgt != self.simples[j].src {
                    continue;
                }
                for k in 0..ns {
                    if self.simples[j].tgt != self.simples[k].src {
                        continue;
                    }
                    for l in 0..ns {
                        let mut left = Vec::new();
                        for m in 0..ns {
                            for a in 0..self.n(i, j, m) {
                                for b in 0..self.n(m, k, l) {
                                    left.push((m, a, b));
                                }
                            }
                        }
                        let mut right = Vec::new();
                        for nn in 0..ns {
                            for g in 0..self.n(j, k, nn) {
                                for d in 0..self.n(i, nn, l) {
                                    right.push((nn, g, d));
                                }
                            }
                        }
                        if left.len() != right.len() {
                            return Err(Error::Structural(format!(
                                "fusion trees for {} do not match: {} left vs {} right",
                                self.describe_key((i, j, k, l)),
                                left.len(),
                                right.len()
                            )));
                        }
                        if !left.is_empty() {
                            self.trees.insert((i, j, k, l), (left, right));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub(crate) fn describe_key(&self, (i, j, k, l): (usize, usize, usize, usize)) -> String {
        format!(
            "({}, {}, {}; {})",
            self.simples[i].id, self.simples[j].id, self.simples[k].id, self.simples[l].id
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn simples(&self) -> &[Simple] {
        &self.simples
    }

    pub fn num_simples(&self) -> usize {
        self.simples.len()
    }

    pub fn object_index(&self, name: &str) -> Result<usize> {
        self.objects
            .iter()
            .position(|o| o == name)
            .ok_or_else(|| Error::UnknownObject(name.into()))
    }

    pub fn simple_index(&self, id: &str) -> Result<usize> {
        self.simples
            .iter()
            .position(|s| s.id == id)
            .ok_or_else(|| Error::UnknownSimple(id.into()))
    }

    pub fn unit_simple(&self, a: usize) -> usize {
        self.units[a]
    }

    pub fn units(&self) -> &[usize] {
        &self.units
    }

    /// Fusion multiplicity `N[i][j][k]`.
    pub fn n(&self, i: usize, j: usize, k: usize) -> usize {
        let ns = self.simples.len();
        self.fusion[(i * ns + j) * ns + k]
    }

    pub fn fsymbol(&self, i: usize, j: usize, k: usize, l: usize) -> Option<&CMat> {
        self.fsym.get(&(i, j, k, l))
    }

    pub fn fsymbols(&self) -> &HashMap<(usize, usize, usize, usize), CMat> {
        &self.fsym
    }

    /// Left and right fusion-tree bases of `(i, j, k; l)`.
    pub fn trees(&self, i: usize, j: usize, k: usize, l: usize) -> Option<&(TreeBasis, TreeBasis)> {
        self.trees.get(&(i, j, k, l))
    }

    pub fn lunit(&self, s: usize) -> C64 {
        self.lunit[s]
    }

    pub fn runit(&self, s: usize) -> C64 {
        self.runit[s]
    }

    /// Simples `a → b`.
    pub fn simples_between(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.simples.len())
            .filter(|&s| self.simples[s].src == a && self.simples[s].tgt == b)
            .collect()
    }

    /// Replaces one F matrix, keeping its shape.
    pub fn with_fsymbol(&self, key: (usize, usize, usize, usize), m: CMat) -> Result<Self> {
        let old = self.fsym.get(&key).ok_or_else(|| {
            Error::Structural(format!("no F entry for {}", self.describe_key(key)))
        })?;
        if old.shape() != m.shape() {
            return Err(Error::Shape("replacement F matrix changes shape".into()));
        }
        let mut out = self.clone();
        out.fsym.insert(key, m);
        Ok(out)
    }

    pub fn to_data(&self) -> PresentationData {
        let ns = self.simples.len();
        let mut fusion = Vec::new();
        for i in 0..ns {
            for j in 0..ns {
                for k in 0..ns {
                    let m = self.n(i, j, k);
                    if m > 0 {
                        fusion.push((i, j, k, m));
                    }
                }
            }
        }
        PresentationData {
            name: self.name.clone(),
            objects: self.objects.clone(),
            simples: self.simples.clone(),
            units: self.units.clone(),
            fusion,
            fsymbols: self.fsym.clone(),
            lunit: Some(self.lunit.clone()),
            runit: Some(self.runit.clone()),
        }
    }
}

/// A 1-cell: a formal direct sum of simples, `mult[s]` copies of simple `s`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OneCell {
    pub src: usize,
    pub tgt: usize,
    pub mult: Vec<usize>,
}

impl OneCell {
    /// The zero 1-cell `src → tgt`.
    pub fn zero(p: &Presentation, src: usize, tgt: usize) -> Self {
        Self {
            src,
            tgt,
            mult: vec![0; p.num_simples()],
        }
    }

    pub fn simple(p: &Presentation, s: usize) -> Self {
        let mut mult = vec![0; p.num_simples()];
        mult[s] = 1;
        Self {
            src: p.simples[s].src,
            tgt: p.simples[s].tgt,
            mult,
        }
    }

    pub fn unit(p: &Presentation, a: usize) -> Self {
        Self::simple(p, p.units[a])
    }

    /// Builds a 1-cell from a multiplicity map, checking endpoints.
    pub fn from_mult(p: &Presentation, src: usize, tgt: usize, mult: Vec<usize>) -> Result<Self> {
        if mult.len() != p.num_simples() {
            return Err(Error::Shape(format!(
                "multiplicity vector has length {}",
                mult.len()
            )));
        }
        if src >= p.num_objects() || tgt >= p.num_objects() {
            return Err(Error::ObjectMismatch("endpoint out of range".into()));
        }
        for (s, &m) in mult.iter().enumerate() {
            if m > 0 && (p.simples[s].src != src || p.simples[s].tgt != tgt) {
                return Err(Error::ObjectMismatch(format!(
                    "simple `{}` does not run {} → {}",
                    p.simples[s].id, p.objects[src], p.objects[tgt]
                )));
            }
        }
        Ok(Self { src, tgt, mult })
    }

    /// Total number of simple summands.
    pub fn rank(&self) -> usize {
        self.mult.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rank() == 0
    }

    /// `(s, a)` for every summand, ordered by simple then copy.
    pub fn summands(&self) -> Vec<(usize, usize)> {
        self.mult
            .iter()
            .enumerate()
            .flat_map(|(s, &m)| (0..m).map(move |a| (s, a)))
            .collect()
    }
}

/// A 2-cell: one `cod.mult[s] × dom.mult[s]` block per simple.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoCell {
    pub dom: OneCell,
    pub cod: OneCell,
    pub blocks: Vec<CMat>,
}

impl TwoCell {
    pub fn zero(dom: &OneCell, cod: &OneCell) -> Self {
        let blocks = dom
            .mult
            .iter()
            .zip(&cod.mult)
            .map(|(&d, &c)| CMat::zeros(c, d))
            .collect();
        Self {
            dom: dom.clone(),
            cod: cod.clone(),
            blocks,
        }
    }

    pub fn identity(x: &OneCell) -> Self {
        Self {
            dom: x.clone(),
            cod: x.clone(),
            blocks: x.mult.iter().map(|&m| CMat::identity(m)).collect(),
        }
    }

    /// Builds a 2-cell, checking block shapes and endpoints.
    pub fn new(dom: OneCell, cod: OneCell, blocks: Vec<CMat>) -> Result<Self> {
        if dom.src != cod.src || dom.tgt != cod.tgt {
            return Err(Error::ObjectMismatch(
                "2-cell between 1-cells with different endpoints".into(),
            ));
        }
        if blocks.len() != dom.mult.len() || cod.mult.len() != dom.mult.len() {
            return Err(Error::Shape(
                "block count does not match the number of simples".into(),
            ));
        }
        for (s, b) in blocks.iter().enumerate() {
            if b.shape() != (cod.mult[s], dom.mult[s]) {
                return Err(Error::Shape(format!(
                    "block {s} has shape {}x{}, expected {}x{}",
                    b.rows(),
                    b.cols(),
                    cod.mult[s],
                    dom.mult[s]
                )));
            }
            if !b.is_finite() {
                return Err(Error::NonFinite);
            }
        }
        Ok(Self { dom, cod, blocks })
    }

    /// Scalar multiple of the identity on a simple 1-cell's block structure.
    pub fn scalar_on(x: &OneCell, z: C64) -> Self {
        Self {
            dom: x.clone(),
            cod: x.clone(),
            blocks: x.mult.iter().map(|&m| CMat::identity(m).scale(z)).collect(),
        }
    }

    pub fn dagger(&self) -> Self {
        Self {
            dom: self.cod.clone(),
            cod: self.dom.clone(),
            blocks: self.blocks.iter().map(CMat::adjoint).collect(),
        }
    }

    /// `self ⋆ f`: first `f`, then `self`.
    pub fn after(&self, f: &TwoCell) -> Result<Self> {
        if f.cod != self.dom {
            return Err(Error::DomainMismatch(
                "codomain of the first 2-cell is not the domain of the second".into(),
            ));
        }
        let blocks = self
            .blocks
            .iter()
            .zip(&f.blocks)
            .map(|(g, f)| g * f)
            .collect();
        Ok(Self {
            dom: f.dom.clone(),
            cod: self.cod.clone(),
            blocks,
        })
    }

    pub fn add(&self, other: &TwoCell) -> Result<Self> {
        self.check_parallel(other)?;
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self {
            dom: self.dom.clone(),
            cod: self.cod.clone(),
            blocks,
        })
    }

    pub fn sub(&self, other: &TwoCell) -> Result<Self> {
        self.check_parallel(other)?;
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self {
            dom: self.dom.clone(),
            cod: self.cod.clone(),
            blocks,
        })
    }

    pub fn scale(&self, z: C64) -> Self {
        Self {
            dom: self.dom.clone(),
            cod: self.cod.clone(),
            blocks: self.blocks.iter().map(|b| b.scale(z)).collect(),
        }
    }

    fn check_parallel(&self, other: &TwoCell) -> Result<()> {
        if self.dom != other.dom || self.cod != other.cod {
            return Err(Error::DomainMismatch("2-cells are not parallel".into()));
        }
        Ok(())
    }

    /// Entrywise distance; infinite for non-parallel cells.
    pub fn distance(&self, other: &TwoCell) -> f64 {
        if self.dom != other.dom || self.cod != other.cod {
            return f64::INFINITY;
        }
        self.blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| a.max_abs_diff(b))
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.blocks.iter().map(CMat::max_abs).fold(0.0, f64::max)
    }

    pub fn op_norm(&self) -> f64 {
        self.blocks.iter().map(CMat::op_norm).fold(0.0, f64::max)
    }

    /// Unweighted block trace `Σ_s tr(block_s)`.
    pub fn trace(&self) -> C64 {
        self.blocks.iter().map(CMat::trace).sum()
    }

    /// Hilbert-Schmidt inner product `Σ_s tr(self_s^† other_s)`.
    pub fn inner(&self, other: &TwoCell) -> C64 {
        self.blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| a.inner(b))
            .sum()
    }

    /// Flattens all blocks, block by block in row-major order.
    pub fn to_vec(&self) -> Vec<C64> {
        self.blocks
            .iter()
            .flat_map(|b| b.as_slice().iter().copied())
            .collect()
    }

    /// Inverse of [`TwoCell::to_vec`].
    pub fn from_vec(dom: &OneCell, cod: &OneCell, v: &[C64]) -> Result<Self> {
        let mut off = 0;
        let mut blocks = Vec::with_capacity(dom.mult.len());
        for (&d, &c) in dom.mult.iter().zip(&cod.mult) {
            let len = d * c;
            let slice = v
                .get(off..off + len)
                .ok_or_else(|| Error::Shape("vector too short".into()))?;
            blocks.push(CMat::from_vec(c, d, slice.to_vec())?);
            off += len;
        }
        if off != v.len() {
            return Err(Error::Shape("vector too long".into()));
        }
        Self::new(dom.clone(), cod.clone(), blocks)
    }

    /// Number of scalar entries in the block data.
    pub fn hom_dim(dom: &OneCell, cod: &OneCell) -> usize {
        dom.mult.iter().zip(&cod.mult).map(|(d, c)| d * c).sum()
    }
}
