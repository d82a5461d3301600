//! From core values to JSON documents.

use std::collections::BTreeMap;

use qsys_core::functoriality::{DagFunctor, Modification, Transformation};
use qsys_core::qsystem::{Bimodule, QSystem};
use qsys_core::{CMat, OneCell, Presentation, TwoCell, C64};

use crate::schema::*;

fn complex(z: C64) -> Complex {
    [z.re, z.im]
}

pub fn matrix_json(m: &CMat) -> Matrix {
    (0..m.rows())
        .map(|r| m.row(r).iter().map(|&z| complex(z)).collect())
        .collect()
}

pub fn mult_json(p: &Presentation, x: &OneCell) -> MultMap {
    x.mult
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(s, &k)| (p.simples()[s].id.clone(), k))
        .collect()
}

/// Non-empty blocks, keyed by simple id.
pub fn blocks_json(p: &Presentation, f: &TwoCell) -> Blocks {
    f.blocks
        .iter()
        .enumerate()
        .filter(|(_, b)| b.rows() > 0 && b.cols() > 0)
        .map(|(s, b)| (p.simples()[s].id.clone(), matrix_json(b)))
        .collect()
}

/// A document holding only the presentation. F entries are sorted by
/// simple indices.
pub fn document_from_presentation(p: &Presentation) -> Document {
    let data = p.to_data();
    let id = |s: usize| data.simples[s].id.clone();
    let simples = data
        .simples
        .iter()
        .map(|s| SimpleJson {
            id: s.id.clone(),
            src: data.objects[s.src].clone(),
            tgt: data.objects[s.tgt].clone(),
        })
        .collect();
    let units = data
        .objects
        .iter()
        .zip(&data.units)
        .map(|(o, &u)| (o.clone(), id(u)))
        .collect();
    let fusion = data
        .fusion
        .iter()
        .map(|&(i, j, k, mult)| FusionJson {
            i: id(i),
            j: id(j),
            k: id(k),
            mult,
        })
        .collect();
    let mut keys: Vec<_> = data.fsymbols.keys().copied().collect();
    keys.sort_unstable();
    let fsymbols = keys
        .into_iter()
        .map(|key @ (i, j, k, l)| FSymbolJson {
            i: id(i),
            j: id(j),
            k: id(k),
            l: id(l),
            matrix: matrix_json(&data.fsymbols[&key]),
        })
        .collect();
    let one = C64::new(1.0, 0.0);
    let side = |v: &Option<Vec<C64>>| -> BTreeMap<String, Complex> {
        v.iter()
            .flatten()
            .enumerate()
            .filter(|(_, &z)| z != one)
            .map(|(s, &z)| (id(s), complex(z)))
            .collect()
    };
    let (left, right) = (side(&data.lunit), side(&data.runit));
    let unitors = if left.is_empty() && right.is_empty() {
        None
    } else {
        Some(UnitorsJson { left, right })
    };
    Document {
        schema_version: SCHEMA_VERSION.into(),
        name: data.name.clone(),
        objects: data.objects.clone(),
        simples,
        units,
        fusion,
        fsymbols,
        unitors,
        qsystems: vec![],
        bimodules: vec![],
        functors: vec![],
        transformations: vec![],
        modifications: vec![],
    }
}

pub fn qsystem_json(p: &Presentation, q: &QSystem) -> QSystemJson {
    QSystemJson {
        name: q.name.clone(),
        base: p.objects()[q.base].clone(),
        q: mult_json(p, &q.q),
        m: blocks_json(p, &q.m),
        i: blocks_json(p, &q.i),
    }
}

pub fn bimodule_json(p: &Presentation, x: &Bimodule) -> BimoduleJson {
    BimoduleJson {
        name: x.label.clone(),
        left: x.left.name.clone(),
        right: x.right.name.clone(),
        x: mult_json(p, &x.x),
        lam: blocks_json(p, &x.lam),
        rho: blocks_json(p, &x.rho),
    }
}

/// Coheretors equal to the identity are left out.
pub fn functor_json(f: &DagFunctor, target: Option<String>) -> FunctorJson {
    let (src, tgt) = (&*f.src, &*f.tgt);
    let obj_map = src
        .objects()
        .iter()
        .zip(&f.obj_map)
        .map(|(o, &b)| (o.clone(), tgt.objects()[b].clone()))
        .collect();
    let cell_map = src
        .simples()
        .iter()
        .zip(&f.cell_map)
        .map(|(s, x)| (s.id.clone(), mult_json(tgt, x)))
        .collect();
    let mut keys: Vec<_> = f.f2.keys().copied().collect();
    keys.sort_unstable();
    let f2 = keys
        .into_iter()
        .filter(|k| !is_identity(&f.f2[k]))
        .map(|(s, t)| F2Json {
            s: src.simples()[s].id.clone(),
            t: src.simples()[t].id.clone(),
            blocks: blocks_json(tgt, &f.f2[&(s, t)]),
        })
        .collect();
    let f1 = src
        .objects()
        .iter()
        .zip(&f.f1)
        .filter(|(_, c)| !is_identity(c))
        .map(|(o, c)| (o.clone(), blocks_json(tgt, c)))
        .collect();
    FunctorJson {
        name: f.name.clone(),
        target,
        obj_map,
        cell_map,
        f2,
        f1,
    }
}

fn is_identity(c: &TwoCell) -> bool {
    c.dom == c.cod && *c == TwoCell::identity(&c.dom)
}

pub fn transformation_json(t: &Transformation) -> TransformationJson {
    let (src, tgt) = (&*t.f.src, &*t.f.tgt);
    TransformationJson {
        name: t.name.clone(),
        source: t.f.name.clone(),
        target: t.g.name.clone(),
        comp0: src
            .objects()
            .iter()
            .zip(&t.comp0)
            .map(|(o, x)| (o.clone(), mult_json(tgt, x)))
            .collect(),
        comp1: src
            .simples()
            .iter()
            .zip(&t.comp1)
            .map(|(s, c)| (s.id.clone(), blocks_json(tgt, c)))
            .collect(),
    }
}

pub fn modification_json(
    name: &str,
    phi: &Transformation,
    psi: &Transformation,
    n: &Modification<Presentation>,
) -> ModificationJson {
    let (src, tgt) = (&*phi.f.src, &*phi.f.tgt);
    ModificationJson {
        name: name.into(),
        source: phi.name.clone(),
        target: psi.name.clone(),
        comps: src
            .objects()
            .iter()
            .zip(&n.comps)
            .map(|(o, c)| (o.clone(), blocks_json(tgt, c)))
            .collect(),
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json_string<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("schema types serialize");
    s.push('\n');
    s
}
