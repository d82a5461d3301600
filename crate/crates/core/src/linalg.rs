//! Dense complex-matrix kernel.
//!
//! Every 2-cell coefficient in the engine lives in a [`CMat`]: a row-major
//! matrix of `Complex64`. The kernel is deliberately small. Products, adjoints,
//! Kronecker products and block placement are hand-written; Hermitian
//! eigendecomposition and SVD are delegated to `nalgebra`.
//!
//! Residuals are measured entrywise: `max |a_ij - b_ij|`.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);

/// Relative threshold used to break ties between pivot candidates.
const PIVOT_TIE: f64 = 1e-6;
/// Entries below this magnitude are skipped when fixing the phase of a unit vector.
const PHASE_FLOOR: f64 = 1e-6;

/// Absolute/relative tolerance pair.
///
/// A residual `r` measured against a reference magnitude `s` passes when
/// `r <= abs + rel * s`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Tolerance {
    pub const DEFAULT_ABS: f64 = 1e-9;

    pub fn new(abs: f64, rel: f64) -> Result<Self> {
        let valid = abs > 0.0 && rel >= 0.0 && abs.is_finite() && rel.is_finite();
        if !valid {
            return Err(Error::InvalidTolerance { abs, rel });
        }
        Ok(Self { abs, rel })
    }

    pub fn abs(abs: f64) -> Self {
        Self::new(abs, 0.0).expect("absolute tolerance must be positive")
    }

    pub fn bound(&self, scale: f64) -> f64 {
        self.abs + self.rel * scale
    }

    pub fn accepts(&self, residual: f64, scale: f64) -> bool {
        residual <= self.bound(scale)
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            abs: Self::DEFAULT_ABS,
            rel: 0.0,
        }
    }
}

/// Dense complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct CMat {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl fmt::Debug for CMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CMat {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                let z = self[(r, c)];
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{:.4}{:+.4}i", z.re, z.im)?;
            }
        }
        write!(f, "]")
    }
}

impl CMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn scalar(z: C64) -> Self {
        Self {
            rows: 1,
            cols: 1,
            data: vec![z],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix from row-major data; fails on a length mismatch or a
    /// non-finite entry.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                data.len()
            )));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Self::from_vec(r, c, rows.iter().flatten().copied().collect())
    }

    pub fn from_real(rows: usize, cols: usize, data: &[f64]) -> Result<Self> {
        Self::from_vec(rows, cols, data.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn is_finite(&self) -> bool {
        self.data
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn row(&self, r: usize) -> &[C64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<C64> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)])
    }

    pub fn scale(&self, z: C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * z).collect(),
        }
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(r, k)];
                if a == ZERO {
                    continue;
                }
                let rrow = rhs.row(k);
                let orow = &mut out.data[r * rhs.cols..(r + 1) * rhs.cols];
                for (o, b) in orow.iter_mut().zip(rrow) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.check_same_shape(rhs)?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.check_same_shape(rhs)?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    fn check_same_shape(&self, rhs: &Self) -> Result<()> {
        if self.shape() != rhs.shape() {
            return Err(Error::Shape(format!(
                "shape mismatch {}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(())
    }

    /// Kronecker product; the row index of the result is `ra * b.rows + rb`.
    pub fn kron(&self, b: &Self) -> Self {
        Self::from_fn(self.rows * b.rows, self.cols * b.cols, |r, c| {
            self[(r / b.rows, c / b.cols)] * b[(r % b.rows, c % b.cols)]
        })
    }

    /// Largest entry modulus; zero for empty matrices.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Entrywise distance; infinite on shape mismatch.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.shape() != other.shape() {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// Frobenius inner product `tr(self^† other)`.
    pub fn inner(&self, other: &Self) -> C64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Operator (spectral) norm.
    pub fn op_norm(&self) -> f64 {
        if self.rows == 0 || self.cols == 0 {
            return 0.0;
        }
        let gram = &self.adjoint() * self;
        let (vals, _) = eigh(&gram);
        vals.last().copied().unwrap_or(0.0).max(0.0).sqrt()
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |r, c| self[(r0 + r, c0 + c)])
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Self) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self[(r0 + r, c0 + c)] = block[(r, c)];
            }
        }
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        out.set_block(0, 0, self);
        out.set_block(self.rows, self.cols, other);
        out
    }

    pub(crate) fn to_nalgebra(&self) -> DMatrix<C64> {
        DMatrix::from_fn(self.rows, self.cols, |r, c| self[(r, c)])
    }

    pub(crate) fn from_nalgebra(m: &DMatrix<C64>) -> Self {
        Self::from_fn(m.nrows(), m.ncols(), |r, c| m[(r, c)])
    }
}

impl Index<(usize, usize)> for CMat {
    type Output = C64;
    fn index(&self, (r, c): (usize, usize)) -> &C64 {
        assert!(
            r < self.rows && c < self.cols,
            "index ({r},{c}) out of bounds"
        );
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for CMat {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut C64 {
        assert!(
            r < self.rows && c < self.cols,
            "index ({r},{c}) out of bounds"
        );
        &mut self.data[r * self.cols + c]
    }
}

impl Mul for &CMat {
    type Output = CMat;
    fn mul(self, rhs: &CMat) -> CMat {
        self.try_mul(rhs).expect("matrix product shape mismatch")
    }
}

impl Add for &CMat {
    type Output = CMat;
    fn add(self, rhs: &CMat) -> CMat {
        self.try_add(rhs).expect("matrix sum shape mismatch")
    }
}

impl Sub for &CMat {
    type Output = CMat;
    fn sub(self, rhs: &CMat) -> CMat {
        self.try_sub(rhs).expect("matrix difference shape mismatch")
    }
}

impl Neg for &CMat {
    type Output = CMat;
    fn neg(self) -> CMat {
        self.scale(-ONE)
    }
}

/// Hermitian eigendecomposition of `(m + m^†)/2`.
///
/// Eigenvalues are returned ascending; eigenvectors are the columns of the
/// second component in matching order.
pub fn eigh(m: &CMat) -> (Vec<f64>, CMat) {
    assert!(m.is_square(), "eigh needs a square matrix");
    let n = m.rows();
    if n == 0 {
        return (Vec::new(), CMat::zeros(0, 0));
    }
    let herm = CMat::from_fn(n, n, |r, c| (m[(r, c)] + m[(c, r)].conj()) * 0.5);
    let eig = nalgebra::SymmetricEigen::new(herm.to_nalgebra());
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        eig.eigenvalues[a]
            .total_cmp(&eig.eigenvalues[b])
            .then(a.cmp(&b))
    });
    let vals = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vecs = CMat::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    (vals, vecs)
}

/// Residual of a defining identity, with the shape information needed to
/// interpret it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Residual {
    pub value: f64,
    pub pass: bool,
}

impl Residual {
    fn new(value: f64, tol: Tolerance) -> Self {
        Self {
            value,
            pass: tol.accepts(value, 0.0),
        }
    }
}

/// `max |m^† m - 1|` and `max |m m^† - 1|`; fails on non-square input.
pub fn is_unitary(m: &CMat, tol: Tolerance) -> Result<Residual> {
    if !m.is_square() {
        return Err(Error::Shape(format!(
            "unitary check needs a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let n = m.rows();
    let id = CMat::identity(n);
    let a = (&m.adjoint() * m).max_abs_diff(&id);
    let b = (m * &m.adjoint()).max_abs_diff(&id);
    Ok(Residual::new(a.max(b), tol))
}

/// `max |m m^† - 1|`: the rows of `m` are orthonormal.
pub fn is_coisometry(m: &CMat, tol: Tolerance) -> Result<Residual> {
    let id = CMat::identity(m.rows());
    Ok(Residual::new((m * &m.adjoint()).max_abs_diff(&id), tol))
}

/// `max(|p^† - p|, |p p - p|)`.
pub fn is_projection(p: &CMat, tol: Tolerance) -> Result<Residual> {
    let (h, i) = projection_residuals(p)?;
    Ok(Residual::new(h.max(i), tol))
}

fn projection_residuals(p: &CMat) -> Result<(f64, f64)> {
    if !p.is_square() {
        return Err(Error::Shape(format!(
            "projection must be square, got {}x{}",
            p.rows(),
            p.cols()
        )));
    }
    Ok((p.adjoint().max_abs_diff(p), (p * p).max_abs_diff(p)))
}

/// Orthogonally splits a projection: returns `u` with `u^† u = p` and `u u^† = 1`.
///
/// The rank is the number of eigenvalues at least one half. The rows of `u`
/// come from column-pivoted Gram-Schmidt on the columns of `p` (ties broken by
/// lowest column index), and each row is rotated so that its first
/// non-negligible entry is real and positive. The result depends only on `p`.
pub fn split_projection(p: &CMat, tol: Tolerance) -> Result<CMat> {
    let (herm, idem) = projection_residuals(p)?;
    if !tol.accepts(herm.max(idem), 0.0) {
        return Err(Error::NotAProjection {
            hermitian: herm,
            idempotent: idem,
        });
    }
    let n = p.rows();
    let (vals, _) = eigh(p);
    let spread = tol.bound(0.0).max(1e-12) * (n.max(1) as f64);
    if let Some(&bad) = vals
        .iter()
        .find(|&&v| v.abs() > spread && (1.0 - v).abs() > spread)
    {
        return Err(Error::NotAProjection {
            hermitian: herm,
            idempotent: idem.max(bad.min(1.0 - bad).abs()),
        });
    }
    let rank = vals.iter().filter(|&&v| v >= 0.5).count();
    let cols: Vec<Vec<C64>> = (0..n).map(|c| p.column(c)).collect();
    let basis = pivoted_orthonormal_basis(&cols, rank);
    Ok(CMat::from_fn(rank, n, |r, c| basis[r][c].conj()))
}

/// Column-pivoted Gram-Schmidt: picks `count` orthonormal vectors from the
/// span of `cols`, always taking the lowest-index column whose residual norm is
/// within a relative `1e-6` of the largest one.
pub(crate) fn pivoted_orthonormal_basis(cols: &[Vec<C64>], count: usize) -> Vec<Vec<C64>> {
    let mut basis: Vec<Vec<C64>> = Vec::with_capacity(count);
    let mut residuals: Vec<Vec<C64>> = cols.to_vec();
    for _ in 0..count {
        let norms: Vec<f64> = residuals.iter().map(|v| vec_norm(v)).collect();
        let best = norms.iter().copied().fold(0.0, f64::max);
        if best == 0.0 {
            break;
        }
        let pick = norms
            .iter()
            .position(|&n| n >= best * (1.0 - PIVOT_TIE))
            .unwrap();
        let mut v = residuals[pick].clone();
        // second pass against the existing basis
        for b in &basis {
            let c = vec_inner(b, &v);
            for (x, y) in v.iter_mut().zip(b) {
                *x -= c * y;
            }
        }
        let nv = vec_norm(&v);
        for x in v.iter_mut() {
            *x /= nv;
        }
        fix_phase(&mut v);
        for r in residuals.iter_mut() {
            let c = vec_inner(&v, r);
            for (x, y) in r.iter_mut().zip(&v) {
                *x -= c * y;
            }
        }
        basis.push(v);
    }
    basis
}

fn fix_phase(v: &mut [C64]) {
    if let Some(z) = v.iter().find(|z| z.norm() > PHASE_FLOOR).copied() {
        let rot = z.conj() / z.norm();
        for x in v.iter_mut() {
            *x *= rot;
        }
    }
}

pub(crate) fn vec_inner(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub(crate) fn vec_norm(a: &[C64]) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Orthonormal basis of the kernel of `m`, deterministic in `m`.
///
/// Singular values below `threshold` count as zero.
pub fn null_space(m: &CMat, threshold: f64) -> Vec<Vec<C64>> {
    let n = m.cols();
    if n == 0 {
        return Vec::new();
    }
    let gram = &m.adjoint() * m;
    let (vals, vecs) = eigh(&gram);
    let cut = threshold * threshold;
    let kernel: Vec<usize> = (0..n).filter(|&i| vals[i] < cut).collect();
    if kernel.is_empty() {
        return Vec::new();
    }
    // projector onto the kernel, then a gauge-fixed basis of its range
    let proj = CMat::from_fn(n, n, |r, c| {
        kernel
            .iter()
            .map(|&k| vecs[(r, k)] * vecs[(c, k)].conj())
            .sum()
    });
    let cols: Vec<Vec<C64>> = (0..n).map(|c| proj.column(c)).collect();
    pivoted_orthonormal_basis(&cols, kernel.len())
}

/// Orthogonal projection onto the row space of `m` (the support of `m^† m`).
pub fn support_projector(m: &CMat) -> CMat {
    let g = &m.adjoint() * m;
    let (vals, vecs) = eigh(&g);
    let top = vals.last().copied().unwrap_or(0.0).max(0.0);
    let n = g.rows();
    let keep: Vec<usize> = (0..n).filter(|&i| vals[i] > 1e-12 * top.max(1.0)).collect();
    CMat::from_fn(n, n, |r, c| {
        keep.iter()
            .map(|&k| vecs[(r, k)] * vecs[(c, k)].conj())
            .sum()
    })
}

/// Unitary factor of the polar decomposition `m = u |m|`.
pub fn polar_unitary(m: &CMat) -> Result<CMat> {
    if !m.is_square() {
        return Err(Error::Shape(
            "polar decomposition needs a square matrix".into(),
        ));
    }
    if m.rows() == 0 {
        return Ok(CMat::zeros(0, 0));
    }
    let svd = nalgebra::SVD::new(m.to_nalgebra(), true, true);
    let u = svd
        .u
        .ok_or_else(|| Error::Numerical("SVD did not return U".into()))?;
    let vt = svd
        .v_t
        .ok_or_else(|| Error::Numerical("SVD did not return V^T".into()))?;
    if svd.singular_values.iter().any(|&s| s < 1e-12) {
        return Err(Error::Numerical(
            "polar decomposition of a singular matrix".into(),
        ));
    }
    Ok(CMat::from_nalgebra(&(u * vt)))
}

/// Random Hermitian matrix from a ChaCha8 stream seeded with `seed`.
///
/// Diagonal entries are uniform in `[-1, 1)`; each upper off-diagonal entry has
/// real then imaginary part drawn uniform in `[-1, 1)` in row-major order, and
/// the lower triangle is the conjugate.
pub fn random_hermitian(dim: usize, seed: u64) -> Result<CMat> {
    if dim == 0 {
        return Err(Error::Shape("random_hermitian needs dim >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = CMat::zeros(dim, dim);
    for r in 0..dim {
        for c in r..dim {
            if r == c {
                m[(r, c)] = C64::new(rng.random_range(-1.0..1.0), 0.0);
            } else {
                let z = C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
                m[(r, c)] = z;
                m[(c, r)] = z.conj();
            }
        }
    }
    Ok(m)
}

/// Random complex matrix with entries uniform in the unit square, for tests
/// and seeded searches.
pub fn random_matrix(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> CMat {
    CMat::from_fn(rows, cols, |_, _| {
        C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn adjoint_examples() {
        let m = CMat::from_real(2, 2, &[0.0, 1.0, 0.0, 0.0]).unwrap();
        assert_eq!(
            m.adjoint(),
            CMat::from_real(2, 2, &[0.0, 0.0, 1.0, 0.0]).unwrap()
        );
        assert_eq!(
            CMat::scalar(c(0.0, 1.0)).adjoint(),
            CMat::scalar(c(0.0, -1.0))
        );
    }

    #[test]
    fn adjoint_of_gram_is_gram() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let m = random_matrix(3, 2, &mut rng);
        let g = &m * &m.adjoint();
        assert_eq!(g.adjoint().max_abs_diff(&g), 0.0);
    }

    #[test]
    fn kron_examples() {
        assert_eq!(
            CMat::identity(2).kron(&CMat::identity(3)),
            CMat::identity(6)
        );
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let m = random_matrix(2, 3, &mut rng);
        assert_eq!(CMat::scalar(c(2.0, 0.0)).kron(&m), m.scale(c(2.0, 0.0)));
    }

    #[test]
    fn kron_mixed_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let [a, b, cc, d] = std::array::from_fn(|_| random_matrix(2, 2, &mut rng));
        let lhs = &a.kron(&b) * &cc.kron(&d);
        let rhs = (&a * &cc).kron(&(&b * &d));
        assert!(lhs.max_abs_diff(&rhs) < 1e-14);
    }

    #[test]
    fn split_coordinate_projection() {
        let p = CMat::from_real(2, 2, &[1.0, 0.0, 0.0, 0.0]).unwrap();
        let u = split_projection(&p, Tolerance::default()).unwrap();
        assert_eq!(u, CMat::from_real(1, 2, &[1.0, 0.0]).unwrap());
    }

    #[test]
    fn split_full_projection_is_identity() {
        let u = split_projection(&CMat::identity(3), Tolerance::default()).unwrap();
        assert_eq!(u, CMat::identity(3));
    }

    #[test]
    fn split_rank_one_averaging_projection() {
        // oracle: the +1 eigenvector of [[1,1],[1,1]]/2 is (1,1)/sqrt(2)
        let p = CMat::from_real(2, 2, &[0.5, 0.5, 0.5, 0.5]).unwrap();
        let u = split_projection(&p, Tolerance::default()).unwrap();
        let s = 0.5f64.sqrt();
        assert!(u.max_abs_diff(&CMat::from_real(1, 2, &[s, s]).unwrap()) < 1e-15);
    }

    #[test]
    fn split_rejects_non_projection() {
        let p = CMat::from_real(2, 2, &[0.7, 0.0, 0.0, 0.0]).unwrap();
        match split_projection(&p, Tolerance::default()) {
            Err(Error::NotAProjection {
                hermitian,
                idempotent,
            }) => {
                assert_eq!(hermitian, 0.0);
                assert!((idempotent - 0.21).abs() < 1e-12);
            }
            other => panic!("expected NotAProjection, got {other:?}"),
        }
    }

    #[test]
    fn residual_checks() {
        let tol = Tolerance::default();
        let id = CMat::identity(4);
        assert_eq!(is_unitary(&id, tol).unwrap().value, 0.0);
        assert_eq!(is_coisometry(&id, tol).unwrap().value, 0.0);
        assert_eq!(is_projection(&id, tol).unwrap().value, 0.0);
        let s = 0.5f64.sqrt();
        let row = CMat::from_real(1, 2, &[s, s]).unwrap();
        assert!(is_coisometry(&row, tol).unwrap().value < 1e-15);
        assert!(is_unitary(&row, tol).is_err());
    }

    #[test]
    fn householder_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let v = random_matrix(5, 1, &mut rng);
        let nv = v.frobenius_norm();
        let v = v.scale(C64::new(1.0 / nv, 0.0));
        let h = &CMat::identity(5) - &(&v * &v.adjoint()).scale(C64::new(2.0, 0.0));
        assert!(is_unitary(&h, Tolerance::default()).unwrap().value < 1e-12);
    }

    #[test]
    fn random_hermitian_is_reproducible_and_hermitian() {
        let a = random_hermitian(1, 0).unwrap();
        assert_eq!(a[(0, 0)].im, 0.0);
        assert_eq!(a, random_hermitian(1, 0).unwrap());
        let h = random_hermitian(6, 42).unwrap();
        assert_eq!(h, random_hermitian(6, 42).unwrap());
        assert_eq!(h.adjoint().max_abs_diff(&h), 0.0);
        assert!(random_hermitian(0, 1).is_err());
    }

    #[test]
    fn null_space_of_rank_deficient_matrix() {
        let m = CMat::from_real(1, 3, &[1.0, 1.0, 0.0]).unwrap();
        let ns = null_space(&m, 1e-8);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            let mv: C64 = v[0] + v[1];
            assert!(mv.norm() < 1e-14);
        }
    }

    #[test]
    fn tolerance_validation() {
        assert!(Tolerance::new(0.0, 0.0).is_err());
        assert!(Tolerance::new(1e-9, -1.0).is_err());
        assert!(Tolerance::new(1e-9, 0.0).is_ok());
    }
}
