use std::sync::Arc;

use super::checks::check_intertwiner;
use super::intertwiners::intertwiner_space;
use super::{unit_bimodule, Bimodule, QSystem};
use crate::error::{Error, Result};
use crate::linalg::{eigh, polar_unitary, random_hermitian, CMat, Tolerance};
use crate::twocat::{OneCell, Presentation, TwoCell};

/// Maximum number of seeds tried per free bimodule.
pub(crate) const MAX_ATTEMPTS: usize = 16;
const CLUSTER_GAP: f64 = 1e-6;
const SEPARATION: f64 = 1e-4;

/// Representatives of the isomorphism classes of simple `P–Q` bimodules.
///
/// Every simple bimodule is a summand of a free one `(P⊗Z)⊗Q` with `Z` an
/// ambient simple. Each free bimodule is cut into minimal projections by
/// diagonalising a seeded random Hermitian element of its endomorphism
/// algebra; the pieces are deduplicated up to unitary intertwiners. When
/// `P` and `Q` agree the unit bimodule comes first.
pub fn simple_bimodules(
    p: &Presentation,
    pq: &Arc<QSystem>,
    qq: &Arc<QSystem>,
    tol: Tolerance,
    seed: u64,
) -> Result<Vec<Arc<Bimodule>>> {
    let mut reps: Vec<Arc<Bimodule>> = Vec::new();
    if pq.same_as(qq) {
        let unit = unit_bimodule(pq);
        if intertwiner_space(p, &unit, &unit)?.len() != 1 {
            return Err(Error::NonSimpleUnit(pq.name.clone()));
        }
        reps.push(unit);
    }
    for z in p.simples_between(pq.base, qq.base) {
        let free = free_bimodule(p, pq, qq, &OneCell::simple(p, z))?;
        for piece in minimal_pieces(p, &free, tol, seed)? {
            if !is_known(p, &reps, &piece, tol)? {
                reps.push(piece);
            }
        }
    }
    for (k, r) in reps.iter_mut().enumerate() {
        if pq.same_as(qq) && k == 0 {
            continue;
        }
        *r = Bimodule::new_unchecked(
            format!("{}|{}#{k}", pq.name, qq.name),
            r.left.clone(),
            r.right.clone(),
            r.x.clone(),
            r.lam.clone(),
            r.rho.clone(),
        );
    }
    Ok(reps)
}

/// `(P⊗Z)⊗Q` with actions `((m⊗id)⊗id)(α†⊗id)α†` and `(id⊗m)α`.
pub(crate) fn free_bimodule(
    p: &Presentation,
    pq: &Arc<QSystem>,
    qq: &Arc<QSystem>,
    z: &OneCell,
) -> Result<Arc<Bimodule>> {
    let (pc, qc) = (&pq.q, &qq.q);
    let pz = p.tensor(pc, z)?;
    let x = p.tensor(&pz, qc)?;
    let (idz, idq) = (TwoCell::identity(z), TwoCell::identity(qc));
    let lam = p
        .tensor2(&p.tensor2(&pq.m, &idz)?, &idq)?
        .after(&p.tensor2(&p.associator(pc, pc, z)?.dagger(), &idq)?)?
        .after(&p.associator(pc, &pz, qc)?.dagger())?;
    let rho = p
        .tensor2(&TwoCell::identity(&pz), &qq.m)?
        .after(&p.associator(&pz, qc, qc)?)?;
    Ok(Bimodule::new_unchecked(
        String::new(),
        pq.clone(),
        qq.clone(),
        x,
        lam,
        rho,
    ))
}

/// Splits `x` into minimal subbimodules, retrying with successive seeds when
/// the random element has a near-degenerate spectrum.
pub(crate) fn minimal_pieces(
    p: &Presentation,
    x: &Arc<Bimodule>,
    tol: Tolerance,
    seed: u64,
) -> Result<Vec<Arc<Bimodule>>> {
    let end = intertwiner_space(p, x, x)?;
    if end.is_empty() {
        return Ok(Vec::new());
    }
    if end.len() == 1 {
        return Ok(vec![x.clone()]);
    }
    for attempt in 0..MAX_ATTEMPTS {
        if let Some(projs) = try_minimal_projections(&end, seed.wrapping_add(attempt as u64))? {
            return projs.iter().map(|e| restrict(p, x, e, tol)).collect();
        }
    }
    Err(Error::DegenerateSpectrum {
        attempts: MAX_ATTEMPTS,
    })
}

/// Spectral projections of `h = g + g†` with `g = Σ z_k b_k`, or `None` if
/// the spectrum is too clustered or a projection is not minimal.
fn try_minimal_projections(end: &[TwoCell], seed: u64) -> Result<Option<Vec<TwoCell>>> {
    let d = end.len();
    let coeffs = random_hermitian(d + 1, seed)?;
    let mut g = TwoCell::zero(&end[0].dom, &end[0].cod);
    for (k, b) in end.iter().enumerate() {
        g = g.add(&b.scale(coeffs[(k, d)]))?;
    }
    let h = g.add(&g.dagger())?;

    let mut eig: Vec<(f64, usize, Vec<crate::linalg::C64>)> = Vec::new();
    for (s, block) in h.blocks.iter().enumerate() {
        if block.rows() == 0 {
            continue;
        }
        let (vals, vecs) = eigh(block);
        for (c, &v) in vals.iter().enumerate() {
            eig.push((v, s, vecs.column(c)));
        }
    }
    eig.sort_by(|a, b| a.0.total_cmp(&b.0));

    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for k in 0..eig.len() {
        match clusters.last_mut() {
            Some(c) if eig[k].0 - eig[k - 1].0 <= CLUSTER_GAP => c.push(k),
            Some(_) => {
                if eig[k].0 - eig[k - 1].0 < SEPARATION {
                    return Ok(None);
                }
                clusters.push(vec![k]);
            }
            None => clusters.push(vec![k]),
        }
    }

    let mut projs = Vec::with_capacity(clusters.len());
    for c in clusters {
        let mut e = TwoCell::zero(&h.dom, &h.cod);
        for &k in &c {
            let (_, s, ref v) = eig[k];
            let n = v.len();
            let outer = CMat::from_fn(n, n, |r, col| v[r] * v[col].conj());
            e.blocks[s] = &e.blocks[s] + &outer;
        }
        if corner_rank(&e, end) != 1 {
            return Ok(None);
        }
        projs.push(e);
    }
    Ok(Some(projs))
}

/// `dim span { E b E }` for the basis `b` of the endomorphism algebra.
fn corner_rank(e: &TwoCell, end: &[TwoCell]) -> usize {
    let corner: Vec<TwoCell> = end
        .iter()
        .filter_map(|b| e.after(b).and_then(|eb| eb.after(e)).ok())
        .collect();
    let n = corner.len();
    let gram = CMat::from_fn(n, n, |r, c| corner[r].inner(&corner[c]));
    let (vals, _) = eigh(&gram);
    let top = vals.last().copied().unwrap_or(0.0);
    vals.iter().filter(|&&v| v > 1e-8 * top.max(1e-300)).count()
}

/// The subbimodule cut out by an intertwining projection `e`.
pub(crate) fn restrict(
    p: &Presentation,
    x: &Arc<Bimodule>,
    e: &TwoCell,
    tol: Tolerance,
) -> Result<Arc<Bimodule>> {
    let (z, u) = p.split_idempotent(e, tol)?;
    let ud = u.dagger();
    let lam = u
        .after(&x.lam)?
        .after(&p.tensor2(&TwoCell::identity(&x.left.q), &ud)?)?;
    let rho = u
        .after(&x.rho)?
        .after(&p.tensor2(&ud, &TwoCell::identity(&x.right.q))?)?;
    Ok(Bimodule::new_unchecked(
        x.label.clone(),
        x.left.clone(),
        x.right.clone(),
        z,
        lam,
        rho,
    ))
}

fn is_known(
    p: &Presentation,
    reps: &[Arc<Bimodule>],
    b: &Arc<Bimodule>,
    tol: Tolerance,
) -> Result<bool> {
    for r in reps {
        if r.x != b.x {
            continue;
        }
        let hom = intertwiner_space(p, b, r)?;
        if hom.is_empty() {
            continue;
        }
        unitary_intertwiner(p, &hom[0], b, r, tol)?;
        return Ok(true);
    }
    Ok(false)
}

/// Unitary part of a nonzero intertwiner between simple bimodules, checked
/// to intertwine.
pub(crate) fn unitary_intertwiner(
    p: &Presentation,
    f: &TwoCell,
    x: &Bimodule,
    y: &Bimodule,
    tol: Tolerance,
) -> Result<TwoCell> {
    let blocks = f
        .blocks
        .iter()
        .map(polar_unitary)
        .collect::<Result<Vec<_>>>()?;
    let w = TwoCell::new(f.dom.clone(), f.cod.clone(), blocks)?;
    if !check_intertwiner(p, &w, x, y, tol)?.passed() {
        return Err(Error::Numerical(
            "polar part of an intertwiner is not an intertwiner".into(),
        ));
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qsystem::{check_bimodule, group_algebra, trivial_qsystem};
    use crate::twocat::{fibonacci, vec, vec_z2};

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn vec_has_one_simple() {
        let p = vec();
        let t = trivial_qsystem(&p, 0).unwrap();
        let s = simple_bimodules(&p, &t, &t, tol(), 0).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].x, OneCell::unit(&p, 0));
    }

    #[test]
    fn z2_census() {
        let p = vec_z2();
        let t = trivial_qsystem(&p, 0).unwrap();
        let q = group_algebra(&p, 0, 1.0).unwrap();
        let counts: Vec<usize> = [(&t, &t), (&t, &q), (&q, &t), (&q, &q)]
            .iter()
            .map(|(a, b)| simple_bimodules(&p, a, b, tol(), 0).unwrap().len())
            .collect();
        assert_eq!(counts, vec![2, 1, 1, 2]);
        for b in simple_bimodules(&p, &q, &q, tol(), 0).unwrap() {
            assert!(check_bimodule(&p, &b, tol()).unwrap().max_residual() < 1e-10);
            assert_eq!(intertwiner_space(&p, &b, &b).unwrap().len(), 1);
        }
    }

    #[test]
    fn fibonacci_free_bimodule_splits() {
        let p = fibonacci();
        let t = trivial_qsystem(&p, 0).unwrap();
        let s = simple_bimodules(&p, &t, &t, tol(), 3).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s[1].x, OneCell::simple(&p, 1));
    }
}
