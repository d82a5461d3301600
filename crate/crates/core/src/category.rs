//! The interface shared by skeletal presentations and Q-system completions.
//!
//! Functors, transformations and modifications in [`crate::functoriality`]
//! are written against [`TwoCategory`], so the same checkers run on
//! presentations and on realized completions.

use std::fmt::Debug;

use crate::error::{Error, Result};
use crate::linalg::C64;
use crate::twocat::{OneCell, Presentation, TwoCell};

/// A (strictly typed) unitary 2-category with linear hom spaces.
///
/// Composition conventions: `vcomp(g, f)` is `g ⋆ f` (first `f`), and
/// `tensor(x, y)` is `x ⊗ y` with `x : a → b` and `y : b → c`.
pub trait TwoCategory {
    type Obj: Clone + Debug;
    type One: Clone + Debug;
    type Two: Clone + Debug;

    fn objects(&self) -> Vec<Self::Obj>;
    /// Representatives of the simple 1-cells `a → b`.
    fn simples(&self, a: &Self::Obj, b: &Self::Obj) -> Result<Vec<Self::One>>;
    fn same_obj(&self, a: &Self::Obj, b: &Self::Obj) -> bool;
    fn obj_label(&self, a: &Self::Obj) -> String;
    fn one_label(&self, x: &Self::One) -> String;

    fn src(&self, x: &Self::One) -> Self::Obj;
    fn tgt(&self, x: &Self::One) -> Self::Obj;
    fn unit(&self, a: &Self::Obj) -> Result<Self::One>;
    fn tensor(&self, x: &Self::One, y: &Self::One) -> Result<Self::One>;

    fn dom(&self, f: &Self::Two) -> Self::One;
    fn cod(&self, f: &Self::Two) -> Self::One;
    fn id2(&self, x: &Self::One) -> Self::Two;
    fn zero2(&self, x: &Self::One, y: &Self::One) -> Self::Two;
    fn vcomp(&self, g: &Self::Two, f: &Self::Two) -> Result<Self::Two>;
    fn hcomp(&self, f: &Self::Two, g: &Self::Two) -> Result<Self::Two>;
    fn dagger(&self, f: &Self::Two) -> Self::Two;
    fn add(&self, f: &Self::Two, g: &Self::Two) -> Result<Self::Two>;
    fn scale(&self, f: &Self::Two, z: C64) -> Self::Two;

    fn associator(&self, x: &Self::One, y: &Self::One, z: &Self::One) -> Result<Self::Two>;
    fn lunitor(&self, x: &Self::One) -> Result<Self::Two>;
    fn runitor(&self, x: &Self::One) -> Result<Self::Two>;

    /// Entrywise distance; infinite for non-parallel 2-cells.
    fn distance(&self, f: &Self::Two, g: &Self::Two) -> f64;
    fn op_norm(&self, f: &Self::Two) -> f64;
    /// Orthonormal basis of `Hom(x, y)`.
    fn hom_basis(&self, x: &Self::One, y: &Self::One) -> Result<Vec<Self::Two>>;
}

/// `fs[0] ⋆ fs[1] ⋆ … ⋆ fs[n-1]`: the last cell is applied first.
pub fn chain<C: TwoCategory + ?Sized>(c: &C, fs: &[C::Two]) -> Result<C::Two> {
    let (last, rest) = fs
        .split_last()
        .ok_or_else(|| Error::Shape("empty composite".into()))?;
    let mut acc = last.clone();
    for g in rest.iter().rev() {
        acc = c.vcomp(g, &acc)?;
    }
    Ok(acc)
}

/// `max(|f† ⋆ f − id|, |f ⋆ f† − id|)`.
pub fn unitarity<C: TwoCategory + ?Sized>(c: &C, f: &C::Two) -> Result<f64> {
    let fd = c.dagger(f);
    let a = c.distance(&c.vcomp(&fd, f)?, &c.id2(&c.dom(f)));
    let b = c.distance(&c.vcomp(f, &fd)?, &c.id2(&c.cod(f)));
    Ok(a.max(b))
}

/// Distance between the two associator composites
/// `((WX)Y)Z ⇒ W(X(YZ))`.
pub fn pentagon<C: TwoCategory + ?Sized>(
    c: &C,
    w: &C::One,
    x: &C::One,
    y: &C::One,
    z: &C::One,
) -> Result<f64> {
    let (wx, xy, yz) = (c.tensor(w, x)?, c.tensor(x, y)?, c.tensor(y, z)?);
    let lhs = c.vcomp(&c.associator(w, x, &yz)?, &c.associator(&wx, y, z)?)?;
    let rhs = chain(
        c,
        &[
            c.hcomp(&c.id2(w), &c.associator(x, y, z)?)?,
            c.associator(w, &xy, z)?,
            c.hcomp(&c.associator(w, x, y)?, &c.id2(z))?,
        ],
    )?;
    Ok(c.distance(&lhs, &rhs))
}

/// Distance between `(id_X ⊗ λ_Y) ⋆ α_{X,1,Y}` and `ρ_X ⊗ id_Y`.
pub fn triangle<C: TwoCategory + ?Sized>(c: &C, x: &C::One, y: &C::One) -> Result<f64> {
    let one = c.unit(&c.tgt(x))?;
    let lhs = c.vcomp(
        &c.hcomp(&c.id2(x), &c.lunitor(y)?)?,
        &c.associator(x, &one, y)?,
    )?;
    let rhs = c.hcomp(&c.runitor(x)?, &c.id2(y))?;
    Ok(c.distance(&lhs, &rhs))
}

/// Sum of a non-empty list of parallel 2-cells, or the zero cell `x ⇒ y`.
pub fn sum<C: TwoCategory + ?Sized>(
    c: &C,
    x: &C::One,
    y: &C::One,
    fs: &[C::Two],
) -> Result<C::Two> {
    let mut acc = c.zero2(x, y);
    for f in fs {
        acc = c.add(&acc, f)?;
    }
    Ok(acc)
}

impl TwoCategory for Presentation {
    type Obj = usize;
    type One = OneCell;
    type Two = TwoCell;

    fn objects(&self) -> Vec<usize> {
        (0..self.num_objects()).collect()
    }

    fn simples(&self, a: &usize, b: &usize) -> Result<Vec<OneCell>> {
        Ok(self
            .simples_between(*a, *b)
            .into_iter()
            .map(|s| OneCell::simple(self, s))
            .collect())
    }

    fn same_obj(&self, a: &usize, b: &usize) -> bool {
        a == b
    }

    fn obj_label(&self, a: &usize) -> String {
        self.objects()[*a].clone()
    }

    fn one_label(&self, x: &OneCell) -> String {
        let parts: Vec<String> = x
            .mult
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(s, &m)| {
                let id = &self.simples()[s].id;
                if m == 1 {
                    id.clone()
                } else {
                    format!("{m}{id}")
                }
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("+")
        }
    }

    fn src(&self, x: &OneCell) -> usize {
        x.src
    }

    fn tgt(&self, x: &OneCell) -> usize {
        x.tgt
    }

    fn unit(&self, a: &usize) -> Result<OneCell> {
        if *a >= self.num_objects() {
            return Err(Error::UnknownObject(a.to_string()));
        }
        Ok(OneCell::unit(self, *a))
    }

    fn tensor(&self, x: &OneCell, y: &OneCell) -> Result<OneCell> {
        Presentation::tensor(self, x, y)
    }

    fn dom(&self, f: &TwoCell) -> OneCell {
        f.dom.clone()
    }

    fn cod(&self, f: &TwoCell) -> OneCell {
        f.cod.clone()
    }

    fn id2(&self, x: &OneCell) -> TwoCell {
        TwoCell::identity(x)
    }

    fn zero2(&self, x: &OneCell, y: &OneCell) -> TwoCell {
        TwoCell::zero(x, y)
    }

    fn vcomp(&self, g: &TwoCell, f: &TwoCell) -> Result<TwoCell> {
        g.after(f)
    }

    fn hcomp(&self, f: &TwoCell, g: &TwoCell) -> Result<TwoCell> {
        self.tensor2(f, g)
    }

    fn dagger(&self, f: &TwoCell) -> TwoCell {
        f.dagger()
    }

    fn add(&self, f: &TwoCell, g: &TwoCell) -> Result<TwoCell> {
        f.add(g)
    }

    fn scale(&self, f: &TwoCell, z: C64) -> TwoCell {
        f.scale(z)
    }

    fn associator(&self, x: &OneCell, y: &OneCell, z: &OneCell) -> Result<TwoCell> {
        Presentation::associator(self, x, y, z)
    }

    fn lunitor(&self, x: &OneCell) -> Result<TwoCell> {
        Presentation::lunitor(self, x)
    }

    fn runitor(&self, x: &OneCell) -> Result<TwoCell> {
        Presentation::runitor(self, x)
    }

    fn distance(&self, f: &TwoCell, g: &TwoCell) -> f64 {
        f.distance(g)
    }

    fn op_norm(&self, f: &TwoCell) -> f64 {
        f.op_norm()
    }

    fn hom_basis(&self, x: &OneCell, y: &OneCell) -> Result<Vec<TwoCell>> {
        Ok(Presentation::hom_basis(self, x, y))
    }
}
