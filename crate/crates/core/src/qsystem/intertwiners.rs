use super::checks::equivariance_defects;
use super::Bimodule;
use crate::error::{Error, Result};
use crate::linalg::{null_space, CMat};
use crate::twocat::{Presentation, TwoCell};

/// Singular values of the equivariance system below this count as zero.
pub(crate) const KERNEL_THRESHOLD: f64 = 1e-7;

/// Orthonormal basis (Hilbert–Schmidt) of the bimodule intertwiners `X ⇒ Y`.
///
/// Solves both equivariance equations as one linear system on the block
/// entries of `Hom(X, Y)`; the basis is a deterministic function of the input.
pub fn intertwiner_space(p: &Presentation, x: &Bimodule, y: &Bimodule) -> Result<Vec<TwoCell>> {
    if !x.left.same_as(&y.left) || !x.right.same_as(&y.right) {
        return Err(Error::QSystemMismatch(
            "intertwiners between bimodules over different Q-systems".into(),
        ));
    }
    if x.x.src != y.x.src || x.x.tgt != y.x.tgt {
        return Ok(Vec::new());
    }
    let basis = p.hom_basis(&x.x, &y.x);
    if basis.is_empty() {
        return Ok(Vec::new());
    }
    let mut cols = Vec::with_capacity(basis.len());
    for f in &basis {
        let (l, r) = equivariance_defects(p, f, x, y)?;
        let mut v = l.to_vec();
        v.extend(r.to_vec());
        cols.push(v);
    }
    let rows = cols[0].len();
    let m = CMat::from_fn(rows, cols.len(), |r, c| cols[c][r]);
    null_space(&m, KERNEL_THRESHOLD)
        .into_iter()
        .map(|v| TwoCell::from_vec(&x.x, &y.x, &v))
        .collect()
}
