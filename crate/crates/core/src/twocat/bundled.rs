//! Bundled single-object presentations.

use std::collections::HashMap;

use super::{Presentation, PresentationData, Simple};
use crate::linalg::CMat;

type Key = (usize, usize, usize, usize);

/// Fills every F entry: 1×1 trees get `[1]` unless overridden, larger ones
/// must be overridden.
fn build(
    name: &str,
    ids: &[&str],
    fusion: Vec<(usize, usize, usize, usize)>,
    overrides: Vec<(Key, CMat)>,
) -> Presentation {
    let simples: Vec<Simple> = ids
        .iter()
        .map(|id| Simple {
            id: (*id).into(),
            src: 0,
            tgt: 0,
        })
        .collect();
    let data = PresentationData {
        name: name.into(),
        objects: vec!["*".into()],
        simples,
        units: vec![0],
        fusion,
        ..Default::default()
    };
    let trees = Presentation::skeleton(data.clone())
        .expect("bundled fusion rules are consistent")
        .trees;
    let mut fsymbols: HashMap<Key, CMat> = overrides.into_iter().collect();
    for (key, (left, _)) in &trees {
        if !fsymbols.contains_key(key) {
            assert_eq!(
                left.len(),
                1,
                "bundled presentation `{name}` lacks a multi-dimensional F entry"
            );
            fsymbols.insert(*key, CMat::identity(1));
        }
    }
    Presentation::new(PresentationData { fsymbols, ..data })
        .expect("bundled presentation is well formed")
}

/// Finite-dimensional Hilbert spaces: one object, one simple.
pub fn vec() -> Presentation {
    build("Vec", &["1"], vec![(0, 0, 0, 1)], vec![])
}

/// Pointed presentation of `Z/n`-graded vector spaces with trivial F.
pub fn vec_zn(n: usize) -> Presentation {
    assert!(n >= 1);
    let ids: Vec<String> = (0..n)
        .map(|k| match k {
            0 => "1".to_string(),
            1 => "g".to_string(),
            _ => format!("g{k}"),
        })
        .collect();
    let refs: Vec<&str> = ids.iter().map(String::as_str).collect();
    let mut fusion = Vec::new();
    for i in 0..n {
        for j in 0..n {
            fusion.push((i, j, (i + j) % n, 1));
        }
    }
    build(&format!("Vec_Z{n}"), &refs, fusion, vec![])
}

pub fn vec_z2() -> Presentation {
    vec_zn(2)
}

pub fn vec_z3() -> Presentation {
    vec_zn(3)
}

/// Fibonacci: `τ ⊗ τ = 1 ⊕ τ`.
pub fn fibonacci() -> Presentation {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let a = 1.0 / phi;
    let b = phi.powf(-0.5);
    let f = CMat::from_real(2, 2, &[a, b, b, -a]).unwrap();
    let fusion = vec![
        (0, 0, 0, 1),
        (0, 1, 1, 1),
        (1, 0, 1, 1),
        (1, 1, 0, 1),
        (1, 1, 1, 1),
    ];
    build("Fibonacci", &["1", "tau"], fusion, vec![((1, 1, 1, 1), f)])
}

/// Ising: simples `1, σ, ψ` with `σ ⊗ σ = 1 ⊕ ψ`.
pub fn ising() -> Presentation {
    let s = 0.5f64.sqrt();
    let fsss = CMat::from_real(2, 2, &[s, s, s, -s]).unwrap();
    let minus = CMat::from_real(1, 1, &[-1.0]).unwrap();
    let fusion = vec![
        (0, 0, 0, 1),
        (0, 1, 1, 1),
        (0, 2, 2, 1),
        (1, 0, 1, 1),
        (2, 0, 2, 1),
        (1, 1, 0, 1),
        (1, 1, 2, 1),
        (1, 2, 1, 1),
        (2, 1, 1, 1),
        (2, 2, 0, 1),
    ];
    build(
        "Ising",
        &["1", "sigma", "psi"],
        fusion,
        vec![
            ((1, 1, 1, 1), fsss),
            ((1, 2, 1, 2), minus.clone()),
            ((2, 1, 2, 1), minus),
        ],
    )
}
