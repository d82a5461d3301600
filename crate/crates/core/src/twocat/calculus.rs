use std::collections::HashMap;

use super::{OneCell, Presentation, TwoCell};
use crate::error::{Error, Result};
use crate::linalg::{split_projection, CMat, Tolerance, C64, ONE};

/// Copies of each simple `k` in `X ⊗ Y`, as `(i, a, j, b, μ)` tuples in
/// canonical order.
pub(crate) type Decomposition = Vec<Vec<(usize, usize, usize, usize, usize)>>;

/// A direct sum together with its inclusions `ι_r : X_r ⇒ ⊕ X`.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub sum: OneCell,
    pub inclusions: Vec<TwoCell>,
}

impl Presentation {
    fn check_composable(&self, x: &OneCell, y: &OneCell) -> Result<()> {
        if x.tgt != y.src {
            return Err(Error::ObjectMismatch(format!(
                "cannot compose {} → {} with {} → {}",
                self.objects[x.src], self.objects[x.tgt], self.objects[y.src], self.objects[y.tgt]
            )));
        }
        Ok(())
    }

    pub(crate) fn decomposition(&self, x: &OneCell, y: &OneCell) -> Decomposition {
        let ns = self.num_simples();
        let mut out = vec![Vec::new(); ns];
        for i in 0..ns {
            for a in 0..x.mult[i] {
                for j in 0..ns {
                    for b in 0..y.mult[j] {
                        for (k, copies) in out.iter_mut().enumerate() {
                            for mu in 0..self.n(i, j, k) {
                                copies.push((i, a, j, b, mu));
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// `X ⊗ Y`, read left to right: `X : a → b`, `Y : b → c`.
    pub fn tensor(&self, x: &OneCell, y: &OneCell) -> Result<OneCell> {
        self.check_composable(x, y)?;
        let ns = self.num_simples();
        let mut mult = vec![0; ns];
        for i in 0..ns {
            if x.mult[i] == 0 {
                continue;
            }
            for j in 0..ns {
                if y.mult[j] == 0 {
                    continue;
                }
                for (k, m) in mult.iter_mut().enumerate() {
                    *m += x.mult[i] * y.mult[j] * self.n(i, j, k);
                }
            }
        }
        Ok(OneCell {
            src: x.src,
            tgt: y.tgt,
            mult,
        })
    }

    /// `f ⊗ g` through the canonical decompositions.
    pub fn tensor2(&self, f: &TwoCell, g: &TwoCell) -> Result<TwoCell> {
        self.check_composable(&f.dom, &g.dom)?;
        let dom = self.tensor(&f.dom, &g.dom)?;
        let cod = self.tensor(&f.cod, &g.cod)?;
        let dd = self.decomposition(&f.dom, &g.dom);
        let cd = self.decomposition(&f.cod, &g.cod);
        let mut blocks = Vec::with_capacity(self.num_simples());
        for k in 0..self.num_simples() {
            let mut rows: HashMap<(usize, usize, usize), Vec<(usize, usize, usize)>> =
                HashMap::new();
            for (r, &(i, a, j, b, mu)) in cd[k].iter().enumerate() {
                rows.entry((i, j, mu)).or_default().push((a, b, r));
            }
            let mut m = CMat::zeros(cd[k].len(), dd[k].len());
            for (c, &(i, a, j, b, mu)) in dd[k].iter().enumerate() {
                if let Some(targets) = rows.get(&(i, j, mu)) {
                    for &(a2, b2, r) in targets {
                        m[(r, c)] = f.blocks[i][(a2, a)] * g.blocks[j][(b2, b)];
                    }
                }
            }
            blocks.push(m);
        }
        Ok(TwoCell { dom, cod, blocks })
    }

    pub fn id2(&self, x: &OneCell) -> TwoCell {
        TwoCell::identity(x)
    }

    /// `α_{X,Y,Z} : (X ⊗ Y) ⊗ Z ⇒ X ⊗ (Y ⊗ Z)`.
    pub fn associator(&self, x: &OneCell, y: &OneCell, z: &OneCell) -> Result<TwoCell> {
        self.check_composable(x, y)?;
        self.check_composable(y, z)?;
        let xy = self.tensor(x, y)?;
        let yz = self.tensor(y, z)?;
        let dom = self.tensor(&xy, z)?;
        let cod = self.tensor(x, &yz)?;
        let d_xy = self.decomposition(x, y);
        let d_yz = self.decomposition(y, z);
        let d_left = self.decomposition(&xy, z);
        let d_right = self.decomposition(x, &yz);
        let mut blocks = Vec::with_capacity(self.num_simples());
        for l in 0..self.num_simples() {
            // leaves plus right tree → row index
            let mut rows: HashMap<[usize; 9], usize> = HashMap::new();
            for (r, &(i, a, n, d, delta)) in d_right[l].iter().enumerate() {
                let (j, b, k, g, gamma) = d_yz[n][d];
                rows.insert([i, a, j, b, k, g, n, gamma, delta], r);
            }
            let mut m = CMat::zeros(d_right[l].len(), d_left[l].len());
            for (c, &(mm, cidx, k, g, beta)) in d_left[l].iter().enumerate() {
                let (i, a, j, b, alpha) = d_xy[mm][cidx];
                let key = (i, j, k, l);
                let (left, right) = self.trees.get(&key).ok_or_else(|| {
                    Error::Structural(format!("no fusion trees for {}", self.describe_key(key)))
                })?;
                let f = &self.fsym[&key];
                let li = left
                    .iter()
                    .position(|&t| t == (mm, alpha, beta))
                    .expect("left tree present");
                for (ri, &(n, gamma, delta)) in right.iter().enumerate() {
                    let z = f[(li, ri)];
                    if z == C64::new(0.0, 0.0) {
                        continue;
                    }
                    let r = rows[&[i, a, j, b, k, g, n, gamma, delta]];
                    m[(r, c)] = z;
                }
            }
            blocks.push(m);
        }
        Ok(TwoCell { dom, cod, blocks })
    }

    fn unit_copies_ok(&self, unit: usize, x: &OneCell, left: bool) -> Result<()> {
        for (s, &m) in x.mult.iter().enumerate() {
            if m == 0 {
                continue;
            }
            for k in 0..self.num_simples() {
                let n = if left {
                    self.n(unit, s, k)
                } else {
                    self.n(s, unit, k)
                };
                if n != usize::from(k == s) {
                    return Err(Error::Structural(format!(
                        "unit `{}` does not fuse trivially with `{}`",
                        self.simples[unit].id, self.simples[s].id
                    )));
                }
            }
        }
        Ok(())
    }

    /// `λ_X : 1_a ⊗ X ⇒ X`.
    pub fn lunitor(&self, x: &OneCell) -> Result<TwoCell> {
        let u = self.units[x.src];
        self.unit_copies_ok(u, x, true)?;
        let one = OneCell::unit(self, x.src);
        let dom = self.tensor(&one, x)?;
        let blocks = x
            .mult
            .iter()
            .enumerate()
            .map(|(s, &m)| CMat::identity(m).scale(self.lunit[s]))
            .collect();
        Ok(TwoCell {
            dom,
            cod: x.clone(),
            blocks,
        })
    }

    /// `ρ_X : X ⊗ 1_b ⇒ X`.
    pub fn runitor(&self, x: &OneCell) -> Result<TwoCell> {
        let u = self.units[x.tgt];
        self.unit_copies_ok(u, x, false)?;
        let one = OneCell::unit(self, x.tgt);
        let dom = self.tensor(x, &one)?;
        let blocks = x
            .mult
            .iter()
            .enumerate()
            .map(|(s, &m)| CMat::identity(m).scale(self.runit[s]))
            .collect();
        Ok(TwoCell {
            dom,
            cod: x.clone(),
            blocks,
        })
    }

    /// Direct sum of parallel 1-cells; copies of each simple are ordered by
    /// summand, then by copy within the summand.
    pub fn direct_sum(&self, parts: &[OneCell], src: usize, tgt: usize) -> Result<DirectSum> {
        let ns = self.num_simples();
        let mut mult = vec![0; ns];
        for x in parts {
            if x.src != src || x.tgt != tgt {
                return Err(Error::ObjectMismatch(
                    "direct summands must be parallel".into(),
                ));
            }
            for (m, &xm) in mult.iter_mut().zip(&x.mult) {
                *m += xm;
            }
        }
        let sum = OneCell { src, tgt, mult };
        let mut offsets = vec![0; ns];
        let mut inclusions = Vec::with_capacity(parts.len());
        for x in parts {
            let blocks = (0..ns)
                .map(|s| {
                    let mut b = CMat::zeros(sum.mult[s], x.mult[s]);
                    for a in 0..x.mult[s] {
                        b[(offsets[s] + a, a)] = ONE;
                    }
                    b
                })
                .collect();
            for (o, m) in offsets.iter_mut().zip(&x.mult) {
                *o += m;
            }
            inclusions.push(TwoCell {
                dom: x.clone(),
                cod: sum.clone(),
                blocks,
            });
        }
        Ok(DirectSum { sum, inclusions })
    }

    /// Inclusion of copy `a` of simple `s` into `X`.
    pub fn copy_inclusion(&self, x: &OneCell, s: usize, a: usize) -> TwoCell {
        let dom = OneCell::simple(self, s);
        let mut out = TwoCell::zero(&dom, x);
        out.blocks[s][(a, 0)] = ONE;
        out
    }

    /// Splits an orthogonal projection `p ∈ End(X)` blockwise: returns `Z`
    /// and a coisometry `u : X ⇒ Z` with `u† ⋆ u = p`.
    pub fn split_idempotent(&self, p: &TwoCell, tol: Tolerance) -> Result<(OneCell, TwoCell)> {
        if p.dom != p.cod {
            return Err(Error::DomainMismatch(
                "idempotent must be an endomorphism".into(),
            ));
        }
        let us = p
            .blocks
            .iter()
            .map(|b| split_projection(b, tol))
            .collect::<Result<Vec<_>>>()?;
        let z = OneCell {
            src: p.dom.src,
            tgt: p.dom.tgt,
            mult: us.iter().map(CMat::rows).collect(),
        };
        Ok((
            z.clone(),
            TwoCell {
                dom: p.dom.clone(),
                cod: z,
                blocks: us,
            },
        ))
    }

    /// Orthonormal basis of `Hom(X, Y)` made of matrix units.
    pub fn hom_basis(&self, x: &OneCell, y: &OneCell) -> Vec<TwoCell> {
        let mut out = Vec::new();
        if x.src != y.src || x.tgt != y.tgt {
            return out;
        }
        for s in 0..self.num_simples() {
            for r in 0..y.mult[s] {
                for c in 0..x.mult[s] {
                    let mut f = TwoCell::zero(x, y);
                    f.blocks[s][(r, c)] = ONE;
                    out.push(f);
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::super::{ising, vec_z2, vec_z3};
    use super::*;
    use crate::linalg::{is_unitary, random_matrix};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rand_cell(p: &Presentation, dom: &OneCell, cod: &OneCell, rng: &mut ChaCha8Rng) -> TwoCell {
        let blocks = (0..p.num_simples())
            .map(|s| random_matrix(cod.mult[s], dom.mult[s], rng))
            .collect();
        TwoCell::new(dom.clone(), cod.clone(), blocks).unwrap()
    }

    #[test]
    fn unit_fusion_is_identity() {
        let p = vec_z2();
        let x = OneCell::from_mult(&p, 0, 0, vec![2, 1]).unwrap();
        assert_eq!(p.tensor(&OneCell::unit(&p, 0), &x).unwrap(), x);
    }

    #[test]
    fn regular_object_squares() {
        let p = vec_z2();
        let q = OneCell::from_mult(&p, 0, 0, vec![1, 1]).unwrap();
        assert_eq!(p.tensor(&q, &q).unwrap().mult, vec![2, 2]);
    }

    #[test]
    fn tensor_count_matches_fusion_sum() {
        let p = ising();
        let x = OneCell::from_mult(&p, 0, 0, vec![1, 2, 1]).unwrap();
        let y = OneCell::from_mult(&p, 0, 0, vec![0, 1, 3]).unwrap();
        let xy = p.tensor(&x, &y).unwrap();
        let mut expected = 0;
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    expected += x.mult[i] * y.mult[j] * p.n(i, j, k);
                }
            }
        }
        assert_eq!(xy.rank(), expected);
    }

    #[test]
    fn tensor_identities_and_interchange() {
        let p = ising();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let x = OneCell::from_mult(&p, 0, 0, vec![1, 1, 1]).unwrap();
        let y = OneCell::from_mult(&p, 0, 0, vec![0, 1, 2]).unwrap();
        let xy = p.tensor(&x, &y).unwrap();
        assert_eq!(
            p.tensor2(&p.id2(&x), &p.id2(&y)).unwrap(),
            TwoCell::identity(&xy)
        );
        let [f, f2] = [0, 1].map(|_| rand_cell(&p, &x, &x, &mut rng));
        let [g, g2] = [0, 1].map(|_| rand_cell(&p, &y, &y, &mut rng));
        let lhs = p
            .tensor2(&f2.after(&f).unwrap(), &g2.after(&g).unwrap())
            .unwrap();
        let rhs = p
            .tensor2(&f2, &g2)
            .unwrap()
            .after(&p.tensor2(&f, &g).unwrap())
            .unwrap();
        assert!(lhs.distance(&rhs) < 1e-13);
        let dag = p.tensor2(&f, &g).unwrap().dagger();
        assert!(dag.distance(&p.tensor2(&f.dagger(), &g.dagger()).unwrap()) < 1e-15);
    }

    #[test]
    fn vcompose_is_associative() {
        let p = vec_z3();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let x = OneCell::from_mult(&p, 0, 0, vec![1, 2, 1]).unwrap();
        let y = OneCell::from_mult(&p, 0, 0, vec![2, 1, 0]).unwrap();
        let f = rand_cell(&p, &x, &y, &mut rng);
        let g = rand_cell(&p, &y, &x, &mut rng);
        let h = rand_cell(&p, &x, &y, &mut rng);
        let a = h.after(&g).unwrap().after(&f).unwrap();
        let b = h.after(&g.after(&f).unwrap()).unwrap();
        assert!(a.distance(&b) < 1e-13);
        assert!(TwoCell::identity(&y).after(&f).unwrap().distance(&f) == 0.0);
        assert!(matches!(f.after(&f), Err(Error::DomainMismatch(_))));
    }

    #[test]
    fn trivial_associators_are_identities() {
        let p = vec_z3();
        for (i, j, k) in (0..27).map(|n| (n / 9, (n / 3) % 3, n % 3)) {
            let [x, y, z] = [i, j, k].map(|s| OneCell::simple(&p, s));
            let a = p.associator(&x, &y, &z).unwrap();
            assert_eq!(a.distance(&TwoCell::identity(&a.dom)), 0.0);
        }
        // on sums the two canonical orders differ by a permutation
        let x = OneCell::from_mult(&p, 0, 0, vec![1, 1, 1]).unwrap();
        let a = p.associator(&x, &x, &x).unwrap();
        for b in &a.blocks {
            for r in 0..b.rows() {
                let row = b.row(r);
                assert_eq!(row.iter().filter(|z| z.norm() == 1.0).count(), 1);
                assert_eq!(
                    row.iter().filter(|z| z.norm() == 0.0).count(),
                    row.len() - 1
                );
            }
        }
    }

    #[test]
    fn ising_sigma_cubed_block_is_the_f_matrix() {
        let p = ising();
        let s = OneCell::simple(&p, 1);
        let a = p.associator(&s, &s, &s).unwrap();
        // both trees of σσσ→σ are indexed by the intermediate channel 1, ψ,
        // which is also the canonical order of the copies of σ in (σσ)σ
        let f = p.fsymbol(1, 1, 1, 1).unwrap();
        assert!(a.blocks[1].max_abs_diff(&f.transpose()) < 1e-15);
        assert!(is_unitary(&a.blocks[1], Tolerance::default()).unwrap().pass);
    }

    #[test]
    fn split_identity_and_zero() {
        let p = vec_z2();
        let x = OneCell::from_mult(&p, 0, 0, vec![2, 1]).unwrap();
        let (z, u) = p
            .split_idempotent(&TwoCell::identity(&x), Tolerance::default())
            .unwrap();
        assert_eq!(z, x);
        assert_eq!(u, TwoCell::identity(&x));
        let (z, _) = p
            .split_idempotent(&TwoCell::zero(&x, &x), Tolerance::default())
            .unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn split_recovers_coisometry_codomain() {
        let p = vec_z2();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let x = OneCell::from_mult(&p, 0, 0, vec![3, 2]).unwrap();
        let z = OneCell::from_mult(&p, 0, 0, vec![2, 1]).unwrap();
        // coisometry from a random matrix: orthonormalize rows
        let raw = rand_cell(&p, &x, &z, &mut rng);
        let v = TwoCell::new(
            x.clone(),
            z.clone(),
            raw.blocks
                .iter()
                .map(|b| {
                    split_projection(&crate::linalg::support_projector(b), Tolerance::default())
                        .unwrap()
                })
                .collect(),
        )
        .unwrap();
        let proj = v.dagger().after(&v).unwrap();
        let (z2, u) = p.split_idempotent(&proj, Tolerance::default()).unwrap();
        assert_eq!(z2, z);
        assert!(u.dagger().after(&u).unwrap().distance(&proj) < 1e-12);
    }
}
