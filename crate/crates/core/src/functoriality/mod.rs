//! Dagger 2-functors, transformations and modifications, and their transport
//! through Q-system completion.
//!
//! The traits [`Functor2`] and [`Transformation2`] are written against
//! [`TwoCategory`], so one set of checkers covers skeletal presentations and
//! realized completions. Modifications are plain component lists
//! ([`Modification`]) indexed by the objects of the source category.
//!
//! Conventions: `F²_{X,Y} : F(X)⊗F(Y) ⇒ F(X⊗Y)`, `F¹_a : 1_{F(a)} ⇒ F(1_a)`,
//! and a transformation `φ : F ⇒ G` has 1-cells `φ_c : F(c) → G(c)` and
//! 2-cells `φ_X : F(X)⊗φ_b ⇒ φ_a⊗G(X)` for `X : a → b`.

mod bundled;
mod checks;
mod fun;
mod skeletal;
mod transport;

use crate::category::TwoCategory;
use crate::error::{Error, Result};

pub use bundled::{forget_z2, inclusion_vec_z2, sign_z2, Suite, SUITES};
pub use checks::{check_functor, check_modification, check_transformation};
pub use fun::{
    fun_associator, fun_left_unitor, fun_right_unitor, hcompose_trans, interchanger, whisker_left,
    whisker_right, Composite, FunTensor, HCompose, IdentityTransformation, Whiskered, WhiskeredBy,
};
pub use skeletal::{compose_functors, functor_deviation, materialize, DagFunctor, Transformation};
pub use transport::{
    image_qsystems, iota, psi_f, qsys_associativity_square, qsys_functor_skeletal,
    qsys_modification, qsys_tensorator, verify_strict_1_functoriality, Ambient, PsiF, QSysFunctor,
    QSysTransformation,
};

pub type Obj<C> = <C as TwoCategory>::Obj;
pub type One<C> = <C as TwoCategory>::One;
pub type Two<C> = <C as TwoCategory>::Two;

/// A 2-functor `A → B` with coheretors.
pub trait Functor2<A: TwoCategory, B: TwoCategory> {
    fn obj(&self, a: &Obj<A>) -> Result<Obj<B>>;
    fn one(&self, x: &One<A>) -> Result<One<B>>;
    fn two(&self, f: &Two<A>) -> Result<Two<B>>;
    /// `F²_{X,Y} : F(X)⊗F(Y) ⇒ F(X⊗Y)`.
    fn tensorator(&self, x: &One<A>, y: &One<A>) -> Result<Two<B>>;
    /// `F¹_a : 1_{F(a)} ⇒ F(1_a)`.
    fn unitor(&self, a: &Obj<A>) -> Result<Two<B>>;
}

/// A 2-transformation between two functors `A → B`.
pub trait Transformation2<A: TwoCategory, B: TwoCategory> {
    /// `φ_c : F(c) → G(c)`.
    fn comp0(&self, c: &Obj<A>) -> Result<One<B>>;
    /// `φ_X : F(X)⊗φ_b ⇒ φ_a⊗G(X)`, defined on every 1-cell.
    fn comp1(&self, x: &One<A>) -> Result<Two<B>>;
}

/// A modification: one 2-cell `n_a : φ_a ⇒ ψ_a` per object of the source,
/// in the order of `objects()`.
#[derive(Clone, Debug)]
pub struct Modification<B: TwoCategory> {
    pub comps: Vec<Two<B>>,
}

impl<B: TwoCategory> Modification<B> {
    pub fn new(comps: Vec<Two<B>>) -> Self {
        Self { comps }
    }

    /// The component at the object in position `a`.
    pub fn at(&self, a: usize) -> Result<&Two<B>> {
        self.comps
            .get(a)
            .ok_or_else(|| Error::UnknownObject(a.to_string()))
    }

    /// `(n′ ⋆ n)_a = n′_a ⋆ n_a`.
    pub fn vcompose(b: &B, outer: &Self, inner: &Self) -> Result<Self> {
        Self::zip(outer, inner, |x, y| b.vcomp(x, y))
    }

    /// `(n ⊗ t)_a = n_a ⊗ t_a`.
    pub fn hcompose(b: &B, n: &Self, t: &Self) -> Result<Self> {
        Self::zip(n, t, |x, y| b.hcomp(x, y))
    }

    /// `(n†)_a = (n_a)†`.
    pub fn dagger(&self, b: &B) -> Self {
        Self {
            comps: self.comps.iter().map(|c| b.dagger(c)).collect(),
        }
    }

    /// `‖n‖ = max_a ‖n_a‖`.
    pub fn norm(&self, b: &B) -> f64 {
        self.comps.iter().map(|c| b.op_norm(c)).fold(0.0, f64::max)
    }

    /// Largest componentwise distance.
    pub fn distance(&self, b: &B, other: &Self) -> f64 {
        if self.comps.len() != other.comps.len() {
            return f64::INFINITY;
        }
        self.comps
            .iter()
            .zip(&other.comps)
            .map(|(x, y)| b.distance(x, y))
            .fold(0.0, f64::max)
    }

    fn zip(n: &Self, t: &Self, f: impl Fn(&Two<B>, &Two<B>) -> Result<Two<B>>) -> Result<Self> {
        if n.comps.len() != t.comps.len() {
            return Err(Error::DomainMismatch(
                "modifications have different index sets".into(),
            ));
        }
        Ok(Self {
            comps: n
                .comps
                .iter()
                .zip(&t.comps)
                .map(|(x, y)| f(x, y))
                .collect::<Result<_>>()?,
        })
    }
}

/// Position of `a` among `c.objects()`.
pub(crate) fn obj_index<C: TwoCategory>(c: &C, a: &Obj<C>) -> Result<usize> {
    c.objects()
        .iter()
        .position(|o| c.same_obj(o, a))
        .ok_or_else(|| Error::UnknownObject(c.obj_label(a)))
}
