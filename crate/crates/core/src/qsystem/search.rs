use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::checks::check_qsystem;
use super::QSystem;
use crate::error::{Error, Result};
use crate::linalg::{Tolerance, C64};
use crate::report::Report;
use crate::twocat::{OneCell, Presentation, TwoCell};

/// Slack on the dimension bound, so that `2.618` admits `1 ⊕ τ`.
const DIM_SLACK: f64 = 1e-3;
const FD_STEP: f64 = 1e-6;

/// Parameters of the bounded Q-system search.
#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Upper bound on the Perron–Frobenius dimension of `Q`.
    pub dim_bound: f64,
    pub seed: u64,
    /// Random starts per candidate 1-cell.
    pub starts: usize,
    /// Levenberg–Marquardt iterations per start.
    pub max_iter: usize,
    pub tol: Tolerance,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            dim_bound: 2.0,
            seed: 0,
            starts: 8,
            max_iter: 200,
            tol: Tolerance::default(),
        }
    }
}

/// A Q-system found by the search, with its axiom report.
#[derive(Clone, Debug)]
pub struct SearchResult {
    pub qsystem: Arc<QSystem>,
    pub dimension: f64,
    pub residual: f64,
    /// Index of the successful start.
    pub start: usize,
    pub report: Report,
}

/// Perron–Frobenius dimensions of the endo-simples of `b`, by power
/// iteration on the left fusion matrices; other simples get `NaN`.
pub fn pf_dimensions(p: &Presentation, b: usize) -> Vec<f64> {
    let endo = p.simples_between(b, b);
    let mut dims = vec![f64::NAN; p.num_simples()];
    for &s in &endo {
        let mut v: Vec<f64> = vec![1.0; endo.len()];
        let mut lambda = 1.0;
        for _ in 0..500 {
            let w: Vec<f64> = endo
                .iter()
                .map(|&k| {
                    endo.iter()
                        .zip(&v)
                        .map(|(&j, x)| p.n(s, j, k) as f64 * x)
                        .sum()
                })
                .collect();
            let norm = w.iter().cloned().fold(0.0, f64::max);
            if norm == 0.0 {
                lambda = 0.0;
                break;
            }
            let next: Vec<f64> = w.iter().map(|x| x / norm).collect();
            let done = next.iter().zip(&v).all(|(a, b)| (a - b).abs() < 1e-14);
            v = next;
            lambda = norm;
            if done {
                break;
            }
        }
        dims[s] = lambda;
    }
    dims
}

/// Seeded best-effort search for Q-systems on `b` whose underlying 1-cell
/// contains the unit once and has dimension at most `opts.dim_bound`.
///
/// For each candidate 1-cell the axiom residuals are minimised by
/// Levenberg–Marquardt with a central-difference Jacobian. Every reported
/// result passes [`check_qsystem`]; no completeness is claimed.
pub fn find_qsystems(
    p: &Presentation,
    b: usize,
    opts: &SearchOptions,
) -> Result<Vec<SearchResult>> {
    if b >= p.num_objects() {
        return Err(Error::UnknownObject(b.to_string()));
    }
    if opts.dim_bound.is_nan() || opts.dim_bound < 1.0 {
        return Err(Error::Structural(
            "dimension bound must be at least 1".into(),
        ));
    }
    let dims = pf_dimensions(p, b);
    let unit = p.unit_simple(b);
    let others: Vec<usize> = p
        .simples_between(b, b)
        .into_iter()
        .filter(|&s| s != unit)
        .collect();
    let mut out = Vec::new();
    for mult in candidates(p, unit, &others, &dims, opts.dim_bound) {
        let q = OneCell::from_mult(p, b, b, mult)?;
        let dimension: f64 = q
            .mult
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(s, &m)| m as f64 * dims[s])
            .sum();
        if let Some(r) = solve_candidate(p, &q, dimension, opts)? {
            out.push(r);
        }
    }
    Ok(out)
}

fn candidates(
    p: &Presentation,
    unit: usize,
    others: &[usize],
    dims: &[f64],
    bound: f64,
) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut mult = vec![0; p.num_simples()];
    mult[unit] = 1;
    fn rec(
        k: usize,
        left: f64,
        others: &[usize],
        dims: &[f64],
        mult: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if k == others.len() {
            out.push(mult.clone());
            return;
        }
        let s = others[k];
        let mut m = 0;
        loop {
            mult[s] = m;
            rec(k + 1, left - m as f64 * dims[s], others, dims, mult, out);
            if dims[s] <= 0.0 || left - (m + 1) as f64 * dims[s] < -DIM_SLACK {
                break;
            }
            m += 1;
        }
        mult[s] = 0;
    }
    rec(0, bound - dims[unit], others, dims, &mut mult, &mut out);
    out
}

/// Packing of `(m, i)` into a real parameter vector.
struct Layout {
    q: OneCell,
    qq: OneCell,
    unit: OneCell,
}

impl Layout {
    fn len(&self) -> usize {
        2 * (TwoCell::hom_dim(&self.qq, &self.q) + TwoCell::hom_dim(&self.unit, &self.q))
    }

    fn unpack(&self, x: &[f64]) -> Result<(TwoCell, TwoCell)> {
        let z: Vec<C64> = x.chunks(2).map(|c| C64::new(c[0], c[1])).collect();
        let nm = TwoCell::hom_dim(&self.qq, &self.q);
        let m = TwoCell::from_vec(&self.qq, &self.q, &z[..nm])?;
        let i = TwoCell::from_vec(&self.unit, &self.q, &z[nm..])?;
        Ok((m, i))
    }
}

/// All axiom defects as one real vector.
fn defects(p: &Presentation, l: &Layout, x: &[f64]) -> Result<Vec<f64>> {
    let (m, i) = l.unpack(x)?;
    let q = &l.q;
    let id = TwoCell::identity(q);
    let md = m.dagger();
    let a = p.associator(q, q, q)?;
    let mdm = md.after(&m)?;
    let cells = [
        m.after(&p.tensor2(&m, &id)?)?
            .sub(&m.after(&p.tensor2(&id, &m)?)?.after(&a)?)?,
        m.after(&p.tensor2(&i, &id)?)?.sub(&p.lunitor(q)?)?,
        m.after(&p.tensor2(&id, &i)?)?.sub(&p.runitor(q)?)?,
        p.tensor2(&id, &m)?
            .after(&a)?
            .after(&p.tensor2(&md, &id)?)?
            .sub(&mdm)?,
        p.tensor2(&m, &id)?
            .after(&a.dagger())?
            .after(&p.tensor2(&id, &md)?)?
            .sub(&mdm)?,
        m.after(&md)?.sub(&id)?,
    ];
    Ok(cells
        .iter()
        .flat_map(|c| c.to_vec())
        .flat_map(|z| [z.re, z.im])
        .collect())
}

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |a, x| a.max(x.abs()))
}

fn solve_candidate(
    p: &Presentation,
    q: &OneCell,
    dimension: f64,
    opts: &SearchOptions,
) -> Result<Option<SearchResult>> {
    let layout = Layout {
        q: q.clone(),
        qq: p.tensor(q, q)?,
        unit: OneCell::unit(p, q.src),
    };
    let n = layout.len();
    let target = opts.tol.bound(0.0) * 1e-2;
    for start in 0..opts.starts {
        let mut rng =
            ChaCha8Rng::seed_from_u64(opts.seed.wrapping_mul(1_000_003).wrapping_add(start as u64));
        let mut x: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        let mut r = defects(p, &layout, &x)?;
        let mut cost: f64 = r.iter().map(|v| v * v).sum();
        let mut mu = 1e-3;
        for _ in 0..opts.max_iter {
            if max_abs(&r) < target {
                break;
            }
            let mut jac = DMatrix::<f64>::zeros(r.len(), n);
            for k in 0..n {
                let mut xp = x.clone();
                let mut xm = x.clone();
                xp[k] += FD_STEP;
                xm[k] -= FD_STEP;
                let rp = defects(p, &layout, &xp)?;
                let rm = defects(p, &layout, &xm)?;
                for row in 0..r.len() {
                    jac[(row, k)] = (rp[row] - rm[row]) / (2.0 * FD_STEP);
                }
            }
            let rv = DVector::from_vec(r.clone());
            let jtj = jac.transpose() * &jac;
            let g = jac.transpose() * rv;
            let mut improved = false;
            for _ in 0..20 {
                let mut a = jtj.clone();
                for d in 0..n {
                    a[(d, d)] += mu * (1.0 + jtj[(d, d)]);
                }
                let Some(step) = a.lu().solve(&(-&g)) else {
                    mu *= 10.0;
                    continue;
                };
                let xn: Vec<f64> = x.iter().zip(step.iter()).map(|(a, b)| a + b).collect();
                let rn = defects(p, &layout, &xn)?;
                let cn: f64 = rn.iter().map(|v| v * v).sum();
                if cn < cost {
                    x = xn;
                    r = rn;
                    cost = cn;
                    mu = (mu / 3.0).max(1e-15);
                    improved = true;
                    break;
                }
                mu *= 4.0;
            }
            if !improved {
                break;
            }
        }
        let (m, i) = layout.unpack(&x)?;
        let qs = QSystem::new(p, format!("Q[{}]", p_label(p, q)), q.src, q.clone(), m, i)?;
        let report = check_qsystem(p, &qs, opts.tol)?;
        if report.passed() {
            return Ok(Some(SearchResult {
                residual: report.max_residual(),
                qsystem: qs,
                dimension,
                start,
                report,
            }));
        }
    }
    Ok(None)
}

fn p_label(p: &Presentation, x: &OneCell) -> String {
    use crate::category::TwoCategory;
    p.one_label(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::twocat::{fibonacci, vec, vec_z2};

    #[test]
    fn pf_dimensions_of_fibonacci() {
        let d = pf_dimensions(&fibonacci(), 0);
        assert!((d[0] - 1.0).abs() < 1e-12);
        assert!((d[1] - (1.0 + 5f64.sqrt()) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn vec_only_has_the_trivial_qsystem() {
        let opts = SearchOptions {
            dim_bound: 1.0,
            ..Default::default()
        };
        let r = find_qsystems(&vec(), 0, &opts).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].qsystem.q.mult, vec![1]);
    }

    #[test]
    fn z2_finds_the_group_algebra() {
        let opts = SearchOptions {
            dim_bound: 2.0,
            ..Default::default()
        };
        let r = find_qsystems(&vec_z2(), 0, &opts).unwrap();
        let found = r
            .iter()
            .find(|c| c.qsystem.q.mult == vec![1, 1])
            .expect("1+g found");
        assert!(found.residual < 1e-9);
        for block in &found.qsystem.m.blocks {
            for z in block.as_slice() {
                assert!((z.norm() - 0.5f64.sqrt()).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn fibonacci_one_plus_tau() {
        let opts = SearchOptions {
            dim_bound: 2.618,
            ..Default::default()
        };
        let r = find_qsystems(&fibonacci(), 0, &opts).unwrap();
        let found = r
            .iter()
            .find(|c| c.qsystem.q.mult == vec![1, 1])
            .expect("1+tau found");
        assert!(found.report.passed());
    }
}
