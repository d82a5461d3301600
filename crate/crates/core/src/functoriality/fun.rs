use super::{Functor2, Modification, Obj, One, Transformation2, Two};
use crate::category::{chain, TwoCategory};
use crate::error::Result;

/// `G ∘ F` with `(G∘F)² = G(F²) ⋆ G²` and `(G∘F)¹ = G(F¹) ⋆ G¹`.
pub struct Composite<'a, A: TwoCategory, B: TwoCategory, C: TwoCategory> {
    pub g: &'a dyn Functor2<B, C>,
    pub f: &'a dyn Functor2<A, B>,
    pub c: &'a C,
}

impl<A: TwoCategory, B: TwoCategory, C: TwoCategory> Functor2<A, C> for Composite<'_, A, B, C> {
    fn obj(&self, a: &Obj<A>) -> Result<Obj<C>> {
        self.g.obj(&self.f.obj(a)?)
    }

    fn one(&self, x: &One<A>) -> Result<One<C>> {
        self.g.one(&self.f.one(x)?)
    }

    fn two(&self, h: &Two<A>) -> Result<Two<C>> {
        self.g.two(&self.f.two(h)?)
    }

    fn tensorator(&self, x: &One<A>, y: &One<A>) -> Result<Two<C>> {
        let inner = self.g.two(&self.f.tensorator(x, y)?)?;
        self.c.vcomp(
            &inner,
            &self.g.tensorator(&self.f.one(x)?, &self.f.one(y)?)?,
        )
    }

    fn unitor(&self, a: &Obj<A>) -> Result<Two<C>> {
        let inner = self.g.two(&self.f.unitor(a)?)?;
        self.c.vcomp(&inner, &self.g.unitor(&self.f.obj(a)?)?)
    }
}

/// `id_F` with `(id_F)_c = 1_{F(c)}` and `(id_F)_X = λ† ⋆ ρ`.
pub struct IdentityTransformation<'a, A: TwoCategory, B: TwoCategory> {
    pub f: &'a dyn Functor2<A, B>,
    pub b: &'a B,
}

impl<A: TwoCategory, B: TwoCategory> Transformation2<A, B> for IdentityTransformation<'_, A, B> {
    fn comp0(&self, c: &Obj<A>) -> Result<One<B>> {
        self.b.unit(&self.f.obj(c)?)
    }

    fn comp1(&self, x: &One<A>) -> Result<Two<B>> {
        let fx = self.f.one(x)?;
        self.b
            .vcomp(&self.b.dagger(&self.b.lunitor(&fx)?), &self.b.runitor(&fx)?)
    }
}

/// `G ∘ φ` for `φ : F ⇒ F′`: `(G∘φ)_a = G(φ_a)` and
/// `(G∘φ)_X = (G²_{φ_a,F′X})† ⋆ G(φ_X) ⋆ G²_{FX,φ_b}`.
pub struct Whiskered<'a, A: TwoCategory, B: TwoCategory, C: TwoCategory> {
    pub g: &'a dyn Functor2<B, C>,
    pub phi: &'a dyn Transformation2<A, B>,
    pub f: &'a dyn Functor2<A, B>,
    pub fp: &'a dyn Functor2<A, B>,
    pub a: &'a A,
    pub c: &'a C,
}

impl<A: TwoCategory, B: TwoCategory, C: TwoCategory> Transformation2<A, C>
    for Whiskered<'_, A, B, C>
{
    fn comp0(&self, o: &Obj<A>) -> Result<One<C>> {
        self.g.one(&self.phi.comp0(o)?)
    }

    fn comp1(&self, x: &One<A>) -> Result<Two<C>> {
        let pa = self.phi.comp0(&self.a.src(x))?;
        let pb = self.phi.comp0(&self.a.tgt(x))?;
        chain(
            self.c,
            &[
                self.c.dagger(&self.g.tensorator(&pa, &self.fp.one(x)?)?),
                self.g.two(&self.phi.comp1(x)?)?,
                self.g.tensorator(&self.f.one(x)?, &pb)?,
            ],
        )
    }
}

/// `γ ∘ F`: `(γ∘F)_a = γ_{F(a)}` and `(γ∘F)_X = γ_{F(X)}`.
pub struct WhiskeredBy<'a, A: TwoCategory, B: TwoCategory, C: TwoCategory> {
    pub gamma: &'a dyn Transformation2<B, C>,
    pub f: &'a dyn Functor2<A, B>,
}

impl<A: TwoCategory, B: TwoCategory, C: TwoCategory> Transformation2<A, C>
    for WhiskeredBy<'_, A, B, C>
{
    fn comp0(&self, o: &Obj<A>) -> Result<One<C>> {
        self.gamma.comp0(&self.f.obj(o)?)
    }

    fn comp1(&self, x: &One<A>) -> Result<Two<C>> {
        self.gamma.comp1(&self.f.one(x)?)
    }
}

pub fn whisker_left<'a, A: TwoCategory, B: TwoCategory, C: TwoCategory>(
    a: &'a A,
    c: &'a C,
    g: &'a dyn Functor2<B, C>,
    f: &'a dyn Functor2<A, B>,
    fp: &'a dyn Functor2<A, B>,
    phi: &'a dyn Transformation2<A, B>,
) -> Whiskered<'a, A, B, C> {
    Whiskered {
        g,
        phi,
        f,
        fp,
        a,
        c,
    }
}

pub fn whisker_right<'a, A: TwoCategory, B: TwoCategory, C: TwoCategory>(
    gamma: &'a dyn Transformation2<B, C>,
    f: &'a dyn Functor2<A, B>,
) -> WhiskeredBy<'a, A, B, C> {
    WhiskeredBy { gamma, f }
}

/// `φ ⊗ ψ` for `φ : F ⇒ G`, `ψ : G ⇒ H`, with `(φ⊗ψ)_c = φ_c ⊗ ψ_c` and
/// `(φ⊗ψ)_X = α† ⋆ (id ⊗ ψ_X) ⋆ α ⋆ (φ_X ⊗ id) ⋆ α†`.
pub struct FunTensor<'a, A: TwoCategory, B: TwoCategory> {
    pub f: &'a dyn Functor2<A, B>,
    pub g: &'a dyn Functor2<A, B>,
    pub h: &'a dyn Functor2<A, B>,
    pub phi: &'a dyn Transformation2<A, B>,
    pub psi: &'a dyn Transformation2<A, B>,
    pub a: &'a A,
    pub b: &'a B,
}

impl<A: TwoCategory, B: TwoCategory> Transformation2<A, B> for FunTensor<'_, A, B> {
    fn comp0(&self, o: &Obj<A>) -> Result<One<B>> {
        self.b.tensor(&self.phi.comp0(o)?, &self.psi.comp0(o)?)
    }

    fn comp1(&self, x: &One<A>) -> Result<Two<B>> {
        tensor_comp1(
            self.a, self.b, self.f, self.g, self.h, self.phi, self.psi, x,
        )
    }
}

#[allow(clippy::too_many_arguments)]
fn tensor_comp1<A: TwoCategory, B: TwoCategory>(
    a: &A,
    b: &B,
    f: &dyn Functor2<A, B>,
    g: &dyn Functor2<A, B>,
    h: &dyn Functor2<A, B>,
    phi: &dyn Transformation2<A, B>,
    psi: &dyn Transformation2<A, B>,
    x: &One<A>,
) -> Result<Two<B>> {
    let (sa, ta) = (a.src(x), a.tgt(x));
    let (pa, pb) = (phi.comp0(&sa)?, phi.comp0(&ta)?);
    let (qa, qb) = (psi.comp0(&sa)?, psi.comp0(&ta)?);
    let (fx, gx, hx) = (f.one(x)?, g.one(x)?, h.one(x)?);
    chain(
        b,
        &[
            b.dagger(&b.associator(&pa, &qa, &hx)?),
            b.hcomp(&b.id2(&pa), &psi.comp1(x)?)?,
            b.associator(&pa, &gx, &qb)?,
            b.hcomp(&phi.comp1(x)?, &b.id2(&qb))?,
            b.dagger(&b.associator(&fx, &pb, &qb)?),
        ],
    )
}

/// The cubical composite `γ ∘ φ = (G∘φ) ⊗ (γ∘F′)` of `φ : F ⇒ F′`
/// (`A → B`) and `γ : G ⇒ G′` (`B → C`), a transformation
/// `G∘F ⇒ G′∘F′`.
pub struct HCompose<'a, A: TwoCategory, B: TwoCategory, C: TwoCategory> {
    pub f: &'a dyn Functor2<A, B>,
    pub fp: &'a dyn Functor2<A, B>,
    pub g: &'a dyn Functor2<B, C>,
    pub gp: &'a dyn Functor2<B, C>,
    pub phi: &'a dyn Transformation2<A, B>,
    pub gamma: &'a dyn Transformation2<B, C>,
    pub a: &'a A,
    pub c: &'a C,
}

pub fn hcompose_trans<'a, A: TwoCategory, B: TwoCategory, C: TwoCategory>(
    a: &'a A,
    c: &'a C,
    (f, fp, phi): (
        &'a dyn Functor2<A, B>,
        &'a dyn Functor2<A, B>,
        &'a dyn Transformation2<A, B>,
    ),
    (g, gp, gamma): (
        &'a dyn Functor2<B, C>,
        &'a dyn Functor2<B, C>,
        &'a dyn Transformation2<B, C>,
    ),
) -> HCompose<'a, A, B, C> {
    HCompose {
        f,
        fp,
        g,
        gp,
        phi,
        gamma,
        a,
        c,
    }
}

impl<A: TwoCategory, B: TwoCategory, C: TwoCategory> Transformation2<A, C>
    for HCompose<'_, A, B, C>
{
    fn comp0(&self, o: &Obj<A>) -> Result<One<C>> {
        let left = self.g.one(&self.phi.comp0(o)?)?;
        self.c.tensor(&left, &self.gamma.comp0(&self.fp.obj(o)?)?)
    }

    fn comp1(&self, x: &One<A>) -> Result<Two<C>> {
        let gf = Composite {
            g: self.g,
            f: self.f,
            c: self.c,
        };
        let gfp = Composite {
            g: self.g,
            f: self.fp,
            c: self.c,
        };
        let gpfp = Composite {
            g: self.gp,
            f: self.fp,
            c: self.c,
        };
        let left = Whiskered {
            g: self.g,
            phi: self.phi,
            f: self.f,
            fp: self.fp,
            a: self.a,
            c: self.c,
        };
        let right = WhiskeredBy {
            gamma: self.gamma,
            f: self.fp,
        };
        tensor_comp1(self.a, self.c, &gf, &gfp, &gpfp, &left, &right, x)
    }
}

/// `χ^{φ,γ} : (G∘φ)⊗(γ∘F′) ⇛ (γ∘F)⊗(G′∘φ)` with components `γ_{φ_a}`.
pub fn interchanger<A: TwoCategory, B: TwoCategory, C: TwoCategory>(
    a: &A,
    phi: &dyn Transformation2<A, B>,
    gamma: &dyn Transformation2<B, C>,
) -> Result<Modification<C>> {
    let comps = a
        .objects()
        .iter()
        .map(|o| gamma.comp1(&phi.comp0(o)?))
        .collect::<Result<_>>()?;
    Ok(Modification::new(comps))
}

/// `α_{φ,ψ,γ} : (φ⊗ψ)⊗γ ⇛ φ⊗(ψ⊗γ)`, componentwise.
pub fn fun_associator<A: TwoCategory, B: TwoCategory>(
    a: &A,
    b: &B,
    phi: &dyn Transformation2<A, B>,
    psi: &dyn Transformation2<A, B>,
    gamma: &dyn Transformation2<A, B>,
) -> Result<Modification<B>> {
    let comps = a
        .objects()
        .iter()
        .map(|o| b.associator(&phi.comp0(o)?, &psi.comp0(o)?, &gamma.comp0(o)?))
        .collect::<Result<_>>()?;
    Ok(Modification::new(comps))
}

/// `λ_φ : id_F ⊗ φ ⇛ φ`, componentwise.
pub fn fun_left_unitor<A: TwoCategory, B: TwoCategory>(
    a: &A,
    b: &B,
    phi: &dyn Transformation2<A, B>,
) -> Result<Modification<B>> {
    let comps = a
        .objects()
        .iter()
        .map(|o| b.lunitor(&phi.comp0(o)?))
        .collect::<Result<_>>()?;
    Ok(Modification::new(comps))
}

/// `ρ_φ : φ ⊗ id_G ⇛ φ`, componentwise.
pub fn fun_right_unitor<A: TwoCategory, B: TwoCategory>(
    a: &A,
    b: &B,
    phi: &dyn Transformation2<A, B>,
) -> Result<Modification<B>> {
    let comps = a
        .objects()
        .iter()
        .map(|o| b.runitor(&phi.comp0(o)?))
        .collect::<Result<_>>()?;
    Ok(Modification::new(comps))
}
