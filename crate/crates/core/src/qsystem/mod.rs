//! Q-systems, bimodules and the completion `QSys(C)`.
//!
//! A Q-system `(Q, m, i)` on an object `b` is an algebra with multiplication
//! `m : Q⊗Q ⇒ Q` and unit `i : 1_b ⇒ Q` that is associative, unital,
//! Frobenius and separable (`m ⋆ m† = id`). A `P–Q` bimodule carries actions
//! `λ : P⊗X ⇒ X` and `ρ : X⊗Q ⇒ X` satisfying the analogous axioms.
//!
//! The relative tensor product `X ⊗_Q Y` is the orthogonal splitting of the
//! separability projector `p = (id_X ⊗ λ_Y) ⋆ α ⋆ (ρ_X† ⊗ id_Y)`.

mod cat;
mod checks;
mod completion;
mod condensation;
mod intertwiners;
mod reltensor;
mod search;
mod simples;

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

pub use cat::{Intertwiner, QSysCat};
pub use checks::{check_bimodule, check_intertwiner, check_qsystem, unit_scalar};
pub use completion::{complete, Completion, Decompose, Realize};
pub use condensation::{condensation_from_qsystem, Condensation};
pub use intertwiners::intertwiner_space;
pub use reltensor::{
    qsys_associator, rel_tensor, sep_projector, unitor_left, unitor_right, RelTensor,
};
pub use search::{find_qsystems, SearchOptions, SearchResult};
pub use simples::simple_bimodules;

use crate::error::{Error, Result};
use crate::twocat::{OneCell, Presentation, TwoCell};

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

fn fresh_id() -> u64 {
    NEXT_ID.fetch_add(1, Ordering::Relaxed)
}

/// Q-systems are compared by data at this entrywise distance.
pub(crate) const SAME_DATA: f64 = 1e-12;

/// An algebra `(Q, m, i)` on `base`.
#[derive(Debug)]
pub struct QSystem {
    pub name: String,
    pub base: usize,
    pub q: OneCell,
    pub m: TwoCell,
    pub i: TwoCell,
    id: u64,
}

impl QSystem {
    /// Checks shapes only; the axioms are checked by [`check_qsystem`].
    pub fn new(
        p: &Presentation,
        name: impl Into<String>,
        base: usize,
        q: OneCell,
        m: TwoCell,
        i: TwoCell,
    ) -> Result<Arc<Self>> {
        if base >= p.num_objects() {
            return Err(Error::UnknownObject(base.to_string()));
        }
        if q.src != base || q.tgt != base {
            return Err(Error::ObjectMismatch(
                "Q-system 1-cell must be an endomorphism of its base".into(),
            ));
        }
        let qq = p.tensor(&q, &q)?;
        if m.dom != qq || m.cod != q {
            return Err(Error::Shape("m must be a 2-cell Q⊗Q ⇒ Q".into()));
        }
        if i.dom != OneCell::unit(p, base) || i.cod != q {
            return Err(Error::Shape("i must be a 2-cell 1 ⇒ Q".into()));
        }
        Ok(Arc::new(Self {
            name: name.into(),
            base,
            q,
            m,
            i,
            id: fresh_id(),
        }))
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    /// Same base, same 1-cell, and `m`, `i` equal within `1e-12`.
    pub fn same_as(&self, other: &QSystem) -> bool {
        self.id == other.id
            || (self.base == other.base
                && self.q == other.q
                && self.m.distance(&other.m) <= SAME_DATA
                && self.i.distance(&other.i) <= SAME_DATA)
    }
}

/// The trivial Q-system `(1_b, λ_{1_b}, id)`.
pub fn trivial_qsystem(p: &Presentation, b: usize) -> Result<Arc<QSystem>> {
    if b >= p.num_objects() {
        return Err(Error::UnknownObject(b.to_string()));
    }
    let one = OneCell::unit(p, b);
    let m = p.lunitor(&one)?;
    QSystem::new(
        p,
        format!("1_{}", p.objects()[b]),
        b,
        one.clone(),
        m,
        TwoCell::identity(&one),
    )
}

/// A `P–Q` bimodule `(X, λ, ρ)`.
#[derive(Debug)]
pub struct Bimodule {
    pub label: String,
    pub left: Arc<QSystem>,
    pub right: Arc<QSystem>,
    pub x: OneCell,
    pub lam: TwoCell,
    pub rho: TwoCell,
    id: u64,
}

impl Bimodule {
    /// Checks shapes only; the axioms are checked by [`check_bimodule`].
    pub fn new(
        p: &Presentation,
        label: impl Into<String>,
        left: Arc<QSystem>,
        right: Arc<QSystem>,
        x: OneCell,
        lam: TwoCell,
        rho: TwoCell,
    ) -> Result<Arc<Self>> {
        if x.src != left.base || x.tgt != right.base {
            return Err(Error::ObjectMismatch(
                "bimodule endpoints differ from the Q-system bases".into(),
            ));
        }
        if lam.dom != p.tensor(&left.q, &x)? || lam.cod != x {
            return Err(Error::Shape("λ must be a 2-cell P⊗X ⇒ X".into()));
        }
        if rho.dom != p.tensor(&x, &right.q)? || rho.cod != x {
            return Err(Error::Shape("ρ must be a 2-cell X⊗Q ⇒ X".into()));
        }
        Ok(Arc::new(Self {
            label: label.into(),
            left,
            right,
            x,
            lam,
            rho,
            id: fresh_id(),
        }))
    }

    pub(crate) fn new_unchecked(
        label: String,
        left: Arc<QSystem>,
        right: Arc<QSystem>,
        x: OneCell,
        lam: TwoCell,
        rho: TwoCell,
    ) -> Arc<Self> {
        Arc::new(Self {
            label,
            left,
            right,
            x,
            lam,
            rho,
            id: fresh_id(),
        })
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    /// The actions moved along a unitary `u ∈ End(X)`:
    /// `λ′ = u ⋆ λ ⋆ (id ⊗ u†)` and `ρ′ = u ⋆ ρ ⋆ (u† ⊗ id)`.
    pub fn conjugate(&self, p: &Presentation, u: &TwoCell) -> Result<Arc<Self>> {
        if u.dom != self.x || u.cod != self.x {
            return Err(Error::Shape(
                "the gauge must be an endomorphism of X".into(),
            ));
        }
        let ud = u.dagger();
        let lam = u
            .after(&self.lam)?
            .after(&p.tensor2(&TwoCell::identity(&self.left.q), &ud)?)?;
        let rho = u
            .after(&self.rho)?
            .after(&p.tensor2(&ud, &TwoCell::identity(&self.right.q))?)?;
        Self::new(
            p,
            self.label.clone(),
            self.left.clone(),
            self.right.clone(),
            self.x.clone(),
            lam,
            rho,
        )
    }

    /// Same Q-systems, same 1-cell and actions equal within `1e-12`.
    pub fn same_as(&self, other: &Bimodule) -> bool {
        self.id == other.id
            || (self.left.same_as(&other.left)
                && self.right.same_as(&other.right)
                && self.x == other.x
                && self.lam.distance(&other.lam) <= SAME_DATA
                && self.rho.distance(&other.rho) <= SAME_DATA)
    }
}

/// `Q` as a bimodule over itself, with both actions given by `m`.
pub fn unit_bimodule(q: &Arc<QSystem>) -> Arc<Bimodule> {
    Bimodule::new_unchecked(
        q.name.clone(),
        q.clone(),
        q.clone(),
        q.q.clone(),
        q.m.clone(),
        q.m.clone(),
    )
}

/// A 1-cell `X` between trivial Q-systems, acting by unitors.
pub fn trivial_bimodule(
    p: &Presentation,
    left: Arc<QSystem>,
    right: Arc<QSystem>,
    x: &OneCell,
) -> Result<Arc<Bimodule>> {
    let lam = p.lunitor(x)?;
    let rho = p.runitor(x)?;
    Bimodule::new(p, p_label(p, x), left, right, x.clone(), lam, rho)
}

fn p_label(p: &Presentation, x: &OneCell) -> String {
    use crate::category::TwoCategory;
    p.one_label(x)
}

/// The group algebra on all endo-simples of `base`, for pointed presentations
/// with trivial F data: every component of `m` is `scale / √n` and `i` is
/// `√n`, where `n` is the number of simples.
pub fn group_algebra(p: &Presentation, base: usize, scale: f64) -> Result<Arc<QSystem>> {
    use crate::linalg::{CMat, C64};
    let simples = p.simples_between(base, base);
    let n = simples.len() as f64;
    let mut mult = vec![0; p.num_simples()];
    for &s in &simples {
        mult[s] = 1;
    }
    let q = OneCell::from_mult(p, base, base, mult)?;
    let qq = p.tensor(&q, &q)?;
    let c = C64::new(scale / n.sqrt(), 0.0);
    let blocks = (0..p.num_simples())
        .map(|k| CMat::from_fn(q.mult[k], qq.mult[k], |_, _| c))
        .collect();
    let m = TwoCell::new(qq, q.clone(), blocks)?;
    let unit = OneCell::unit(p, base);
    let mut i = TwoCell::zero(&unit, &q);
    i.blocks[p.unit_simple(base)][(0, 0)] = C64::new(n.sqrt(), 0.0);
    QSystem::new(p, format!("C[{}]", p.objects()[base]), base, q, m, i)
}
