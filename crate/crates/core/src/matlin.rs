//! Dense complex linear algebra.
//!
//! Small, self-contained kernels for the matrices that show up in this crate:
//! density matrices, Gram matrices and the blocks of the discrimination SDP.
//! Everything is `O(N^3)` dense code; dimensions stay in the tens.
//!
//! The eigensolver is a cyclic Jacobi method adapted to complex Hermitian
//! matrices. Each rotation first removes the phase of the pivot element with a
//! diagonal unitary and then applies an ordinary real plane rotation, so the
//! accumulated transform stays exactly unitary up to rounding.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;
use thiserror::Error;

/// Complex scalar used throughout the crate.
pub type ComplexScalar = Complex64;

/// Tolerance on `|a_jk - conj(a_kj)|` accepted by [`HermitianMatrix::new`].
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Eigenvalues in `[-EIGEN_CLAMP, 0)` are treated as exact zeros.
pub const EIGEN_CLAMP: f64 = 1e-10;

/// Default sweep limit for [`eig_hermitian`].
pub const MAX_JACOBI_SWEEPS: usize = 100;

/// Eigenvalues at or below this are dropped by [`factor_gram`].
pub const RANK_CUTOFF: f64 = 1e-10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinalgError {
    #[error("matrix contains a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix must have dimension >= 1")]
    Empty,
    #[error("matrix is not Hermitian: entry ({row}, {col}) deviates by {deviation:e}")]
    NotHermitian { row: usize, col: usize, deviation: f64 },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("Jacobi eigensolver did not converge within {sweeps} sweeps")]
    IterationLimit { sweeps: usize },
    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    NotPsd { min_eigenvalue: f64 },
    #[error("matrix is not positive definite (Cholesky pivot {pivot} is {value:e})")]
    NotPositiveDefinite { pivot: usize, value: f64 },
}

pub type Result<T, E = LinalgError> = std::result::Result<T, E>;

/// Dense row-major complex matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<ComplexScalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ComplexScalar::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ComplexScalar::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> ComplexScalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix from row-major data.
    pub fn from_rows(rows: usize, cols: usize, data: Vec<ComplexScalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(LinalgError::DimensionMismatch {
                expected: rows * cols,
                got: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_real(rows: usize, cols: usize, data: &[f64]) -> Result<Self> {
        Self::from_rows(rows, cols, data.iter().map(|&x| ComplexScalar::new(x, 0.0)).collect())
    }

    /// Diagonal matrix with the given real entries.
    pub fn from_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = ComplexScalar::new(d, 0.0);
        }
        m
    }

    /// Outer product `u v^H`.
    pub fn outer(u: &[ComplexScalar], v: &[ComplexScalar]) -> Self {
        Self::from_fn(u.len(), v.len(), |i, j| u[i] * v[j].conj())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[ComplexScalar] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<ComplexScalar> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn trace(&self) -> ComplexScalar {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Real inner product `Re tr(A^H B)`.
    pub fn inner(&self, other: &Matrix) -> f64 {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.re * b.re + a.im * b.im)
            .sum()
    }

    pub fn mul_vec(&self, v: &[ComplexScalar]) -> Vec<ComplexScalar> {
        debug_assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let row = &self.data[i * self.cols..(i + 1) * self.cols];
                row.iter().zip(v).map(|(a, b)| a * b).sum()
            })
            .collect()
    }

    /// `(A + A^H) / 2`.
    pub fn hermitian_part(&self) -> Self {
        debug_assert!(self.is_square());
        Self::from_fn(self.rows, self.cols, |i, j| (self[(i, j)] + self[(j, i)].conj()) * 0.5)
    }

    pub fn all_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = ComplexScalar;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &ComplexScalar {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut ComplexScalar {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let rrow = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                let orow = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (o, b) in orow.iter_mut().zip(rrow) {
                    *o += a * b;
                }
            }
        }
        out
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:>10.6}{:+.6}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Square complex matrix that is Hermitian by construction.
///
/// The constructor validates the input and then stores the exact Hermitian
/// part, so downstream code never sees asymmetric rounding noise.
#[derive(Clone, PartialEq)]
pub struct HermitianMatrix(Matrix);

impl HermitianMatrix {
    pub fn new(m: Matrix) -> Result<Self> {
        if !m.is_square() {
            return Err(LinalgError::NotSquare {
                rows: m.rows,
                cols: m.cols,
            });
        }
        if m.rows == 0 {
            return Err(LinalgError::Empty);
        }
        for i in 0..m.rows {
            for j in 0..m.cols {
                let z = m[(i, j)];
                if !(z.re.is_finite() && z.im.is_finite()) {
                    return Err(LinalgError::NonFinite { row: i, col: j });
                }
            }
        }
        for i in 0..m.rows {
            for j in i..m.cols {
                let deviation = (m[(i, j)] - m[(j, i)].conj()).norm();
                if deviation > HERMITIAN_TOL {
                    return Err(LinalgError::NotHermitian {
                        row: i,
                        col: j,
                        deviation,
                    });
                }
            }
        }
        Ok(Self(m.hermitian_part()))
    }

    /// Hermitian part of an arbitrary square matrix, without the tolerance check.
    pub fn symmetrized(m: &Matrix) -> Self {
        assert!(m.is_square(), "symmetrized needs a square matrix");
        Self(m.hermitian_part())
    }

    pub fn from_real(n: usize, data: &[f64]) -> Result<Self> {
        Self::new(Matrix::from_real(n, n, data)?)
    }

    pub fn identity(n: usize) -> Self {
        Self(Matrix::identity(n))
    }

    pub fn zeros(n: usize) -> Self {
        Self(Matrix::zeros(n, n))
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        Self(Matrix::from_diagonal(diag))
    }

    /// `|v><v|` scaled by `weight`.
    pub fn projector(v: &[ComplexScalar], weight: f64) -> Self {
        Self::symmetrized(&Matrix::outer(v, v).scale(weight))
    }

    pub fn dim(&self) -> usize {
        self.0.rows
    }

    pub fn as_matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix {
        self.0
    }

    pub fn trace(&self) -> f64 {
        self.0.trace().re
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.0[(i, i)].re).collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.max_abs()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self(self.0.scale(s))
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(&self.0 + &other.0)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self(&self.0 - &other.0)
    }

    /// `B A B^H` for an arbitrary (possibly rectangular) `B`.
    pub fn congruence(&self, b: &Matrix) -> Self {
        Self::symmetrized(&(&(b * &self.0) * &b.adjoint()))
    }

    /// Real inner product `tr(A B)`.
    pub fn inner(&self, other: &Self) -> f64 {
        self.0.inner(&other.0)
    }

    /// `<v|A|v>`.
    pub fn expectation(&self, v: &[ComplexScalar]) -> f64 {
        let av = self.0.mul_vec(v);
        v.iter().zip(&av).map(|(a, b)| (a.conj() * b).re).sum()
    }
}

impl Index<(usize, usize)> for HermitianMatrix {
    type Output = ComplexScalar;
    fn index(&self, idx: (usize, usize)) -> &ComplexScalar {
        &self.0[idx]
    }
}

impl fmt::Debug for HermitianMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hermitian{:?}", self.0)
    }
}

/// Spectral decomposition `A = V diag(λ) V^H` with eigenvalues sorted descending.
#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    /// Column `k` pairs with `eigenvalues[k]`.
    pub eigenvectors: Matrix,
}

impl EigenDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvector(&self, k: usize) -> Vec<ComplexScalar> {
        self.eigenvectors.column(k)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        *self.eigenvalues.last().expect("non-empty decomposition")
    }

    /// Applies `f` to the spectrum: `V diag(f(λ)) V^H`.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> HermitianMatrix {
        let n = self.dim();
        let v = &self.eigenvectors;
        let fl: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        let mut out = Matrix::zeros(n, n);
        for (k, &w) in fl.iter().enumerate() {
            if w == 0.0 {
                continue;
            }
            for i in 0..n {
                let vik = v[(i, k)] * w;
                for j in 0..n {
                    out[(i, j)] += vik * v[(j, k)].conj();
                }
            }
        }
        HermitianMatrix::symmetrized(&out)
    }

    pub fn reconstruct(&self) -> HermitianMatrix {
        self.map(|l| l)
    }

    /// Eigenvalues with values in `[-EIGEN_CLAMP, 0)` set to zero.
    pub fn clamped_eigenvalues(&self) -> Vec<f64> {
        self.eigenvalues.iter().map(|&l| clamp_eigenvalue(l)).collect()
    }
}

/// Maps numerical noise just below zero onto zero.
pub fn clamp_eigenvalue(l: f64) -> f64 {
    if (-EIGEN_CLAMP..0.0).contains(&l) {
        0.0
    } else {
        l
    }
}

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.
pub fn eig_hermitian(a: &HermitianMatrix) -> Result<EigenDecomposition> {
    eig_hermitian_with_limit(a, MAX_JACOBI_SWEEPS)
}

pub fn eig_hermitian_with_limit(a: &HermitianMatrix, max_sweeps: usize) -> Result<EigenDecomposition> {
    let n = a.dim();
    let mut m = a.as_matrix().clone();
    let mut v = Matrix::identity(n);
    let scale = m.frobenius_norm();

    if scale > 0.0 && n > 1 {
        let target = f64::EPSILON * scale;
        let mut converged = false;
        for _ in 0..max_sweeps {
            let off = off_diagonal_norm(&m);
            if off <= target {
                converged = true;
                break;
            }
            for p in 0..n - 1 {
                for q in p + 1..n {
                    rotate(&mut m, &mut v, p, q);
                }
            }
        }
        if !converged && off_diagonal_norm(&m) > target {
            return Err(LinalgError::IterationLimit { sweeps: max_sweeps });
        }
    }

    // Stable sort keeps equal eigenvalues in their original diagonal order.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(j, j)].re.partial_cmp(&m[(i, i)].re).unwrap_or(std::cmp::Ordering::Equal));
    let eigenvalues = order.iter().map(|&i| m[(i, i)].re).collect();
    let eigenvectors = Matrix::from_fn(n, n, |i, k| v[(i, order[k])]);
    Ok(EigenDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

fn off_diagonal_norm(m: &Matrix) -> f64 {
    let n = m.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += m[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// One Jacobi rotation annihilating `m[p][q]`; accumulates into `v`.
fn rotate(m: &mut Matrix, v: &mut Matrix, p: usize, q: usize) {
    let apq = m[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let n = m.rows();
    // phase = e^{-i phi} where apq = r e^{i phi}
    let phase = apq.conj() / r;
    let app = m[(p, p)].re;
    let aqq = m[(q, q)].re;
    let tau = (aqq - app) / (2.0 * r);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // U = [[c, s], [-s e^{-i phi}, c e^{-i phi}]] on the (p, q) plane.
    let u_qp = -phase * s;
    let u_qq = phase * c;

    // A <- A U (columns p, q)
    for k in 0..n {
        let akp = m[(k, p)];
        let akq = m[(k, q)];
        m[(k, p)] = akp * c + akq * u_qp;
        m[(k, q)] = akp * s + akq * u_qq;
    }
    // A <- U^H A (rows p, q)
    let (cu_qp, cu_qq) = (u_qp.conj(), u_qq.conj());
    for k in 0..n {
        let apk = m[(p, k)];
        let aqk = m[(q, k)];
        m[(p, k)] = apk * c + aqk * cu_qp;
        m[(q, k)] = apk * s + aqk * cu_qq;
    }
    m[(p, q)] = ComplexScalar::new(0.0, 0.0);
    m[(q, p)] = ComplexScalar::new(0.0, 0.0);
    m[(p, p)].im = 0.0;
    m[(q, q)].im = 0.0;

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c + vkq * u_qp;
        v[(k, q)] = vkp * s + vkq * u_qq;
    }
}

pub fn min_eigenvalue(a: &HermitianMatrix) -> Result<f64> {
    Ok(eig_hermitian(a)?.min_eigenvalue())
}

/// `true` iff the smallest eigenvalue is at least `-tol`.
///
/// A matrix the eigensolver cannot handle is reported as not PSD.
pub fn is_psd(a: &HermitianMatrix, tol: f64) -> bool {
    match min_eigenvalue(a) {
        Ok(l) => l >= -tol,
        Err(_) => false,
    }
}

/// Tolerance below zero accepted by [`factor_gram`].
pub const GRAM_PSD_TOL: f64 = 1e-9;

/// Vectors `v_k` with `<v_j|v_k> = G_jk`, living in dimension `rank(G)`.
pub fn factor_gram(g: &HermitianMatrix) -> Result<Vec<Vec<ComplexScalar>>> {
    let gamma = gram_factor_matrix(g)?;
    Ok((0..gamma.cols()).map(|k| gamma.column(k)).collect())
}

/// Matrix `Γ` (rank × N) whose columns are the [`factor_gram`] vectors, so `Γ^H Γ = G`.
///
/// Rows are ordered by descending eigenvalue of `G`; `Γ Γ^H` is therefore the
/// diagonal matrix of the retained eigenvalues.
pub fn gram_factor_matrix(g: &HermitianMatrix) -> Result<Matrix> {
    let eig = eig_hermitian(g)?;
    let lmin = eig.min_eigenvalue();
    if lmin < -GRAM_PSD_TOL {
        return Err(LinalgError::NotPsd { min_eigenvalue: lmin });
    }
    let kept: Vec<usize> = (0..eig.dim()).filter(|&i| eig.eigenvalues[i] > RANK_CUTOFF).collect();
    let n = g.dim();
    Ok(Matrix::from_fn(kept.len(), n, |row, k| {
        let i = kept[row];
        eig.eigenvectors[(k, i)].conj() * eig.eigenvalues[i].sqrt()
    }))
}

/// Gram matrix `G_jk = <v_j|v_k>` of a list of vectors.
pub fn gram_of(vectors: &[Vec<ComplexScalar>]) -> HermitianMatrix {
    let n = vectors.len();
    let m = Matrix::from_fn(n, n, |j, k| {
        vectors[j].iter().zip(&vectors[k]).map(|(a, b)| a.conj() * b).sum()
    });
    HermitianMatrix::symmetrized(&m)
}

/// Lower-triangular Cholesky factor `L` with `A = L L^H`.
pub fn cholesky(a: &HermitianMatrix) -> Result<Matrix> {
    let n = a.dim();
    let mut l = Matrix::zeros(n, n);
    for j in 0..n {
        let mut d = a[(j, j)].re;
        for k in 0..j {
            d -= l[(j, k)].norm_sqr();
        }
        if !(d > 0.0) {
            return Err(LinalgError::NotPositiveDefinite { pivot: j, value: d });
        }
        let djj = d.sqrt();
        l[(j, j)] = ComplexScalar::new(djj, 0.0);
        for i in j + 1..n {
            let mut s = a[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)].conj();
            }
            l[(i, j)] = s / djj;
        }
    }
    Ok(l)
}

/// Inverse of a lower-triangular matrix.
pub fn lower_triangular_inverse(l: &Matrix) -> Matrix {
    let n = l.rows();
    let mut inv = Matrix::zeros(n, n);
    for j in 0..n {
        inv[(j, j)] = ComplexScalar::new(1.0, 0.0) / l[(j, j)];
        for i in j + 1..n {
            let mut s = ComplexScalar::new(0.0, 0.0);
            for k in j..i {
                s += l[(i, k)] * inv[(k, j)];
            }
            inv[(i, j)] = -s / l[(i, i)];
        }
    }
    inv
}
