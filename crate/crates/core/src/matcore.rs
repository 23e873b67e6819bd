//! Dense complex matrices and the Hermitian spectral primitives used by the
//! rest of the crate.
//!
//! Matrices are small (d ≤ 64) and stored row-major as `Complex64`. Shape
//! checked operations return [`Result`]; element-wise helpers that cannot
//! fail return values directly.

use std::fmt;
use std::ops::Index;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Hermiticity tolerance, relative to `max(1, ‖a‖_F)`.
pub const HERMITIAN_TOL: f64 = 1e-9;
/// Eigenvalues in `[-PSD_CLAMP_TOL, 0)` are treated as zero.
pub const PSD_CLAMP_TOL: f64 = 1e-10;
/// Reconstruction tolerance for `psd_sqrt`, relative to `max(1, ‖a‖_F)`.
pub const SQRT_RECONSTRUCT_TOL: f64 = 1e-9;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// `tol · max(1, scale)`.
#[inline]
pub fn hybrid_tol(tol: f64, scale: f64) -> f64 {
    tol * scale.max(1.0)
}

#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(Error::BadShape {
                rows,
                cols,
                got: data.len(),
            });
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from a list of equally long rows.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::BadShape {
                rows: rows.len(),
                cols,
                got: rows.iter().map(Vec::len).sum(),
            });
        }
        Self::new(rows.len(), cols, rows.concat())
    }

    /// Real-valued convenience constructor, row-major.
    pub fn from_real(rows: usize, cols: usize, data: &[f64]) -> Result<Self> {
        Self::new(
            rows,
            cols,
            data.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        )
    }

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
            m.data[i * n + i] = ONE;
        }
        m
    }

    pub fn from_diag(diag: &[Complex64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, &z) in diag.iter().enumerate() {
            m.data[i * n + i] = z;
        }
        m
    }

    pub fn from_real_diag(diag: &[f64]) -> Self {
        let d: Vec<Complex64> = diag.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::from_diag(&d)
    }

    pub fn pauli_x() -> Self {
        Self::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).expect("static shape")
    }

    pub fn pauli_y() -> Self {
        Self {
            rows: 2,
            cols: 2,
            data: vec![ZERO, Complex64::new(0.0, -1.0), Complex64::new(0.0, 1.0), ZERO],
        }
    }

    pub fn pauli_z() -> Self {
        Self::from_real_diag(&[1.0, -1.0])
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Row-major entries.
    #[inline]
    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    fn same_shape(&self, other: &Self, op: &'static str) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch {
                op,
                lhs: self.shape(),
                rhs: other.shape(),
            });
        }
        Ok(())
    }

    fn square_pair(&self, other: &Self, op: &'static str) -> Result<()> {
        if !self.is_square() || self.shape() != other.shape() {
            return Err(Error::DimensionMismatch {
                op,
                lhs: self.shape(),
                rhs: other.shape(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other, "add")?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other, "sub")?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    pub fn scale(&self, c: Complex64) -> Self {
        self.map(|z| z * c)
    }

    pub fn scale_real(&self, c: f64) -> Self {
        self.map(|z| z * c)
    }

    /// Entry-wise map.
    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| f(z)).collect(),
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                op: "matmul",
                lhs: self.shape(),
                rhs: other.shape(),
            });
        }
        let (n, m, p) = (self.rows, self.cols, other.cols);
        let mut out = vec![ZERO; n * p];
        for i in 0..n {
            let out_row = &mut out[i * p..(i + 1) * p];
            for k in 0..m {
                let a = self.data[i * m + k];
                if a == ZERO {
                    continue;
                }
                let b_row = &other.data[k * p..(k + 1) * p];
                for (o, &b) in out_row.iter_mut().zip(b_row) {
                    *o += a * b;
                }
            }
        }
        Ok(Self {
            rows: n,
            cols: p,
            data: out,
        })
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.data[i * self.cols + j].conj());
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn trace(&self) -> Result<Complex64> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                op: "trace",
                lhs: self.shape(),
                rhs: self.shape(),
            });
        }
        Ok((0..self.rows).map(|i| self.data[i * self.cols + i]).sum())
    }

    /// `tr(self · other)` without forming the product.
    pub fn trace_of_product(&self, other: &Self) -> Result<Complex64> {
        if self.cols != other.rows || self.rows != other.cols {
            return Err(Error::DimensionMismatch {
                op: "trace_of_product",
                lhs: self.shape(),
                rhs: other.shape(),
            });
        }
        let mut acc = ZERO;
        for i in 0..self.rows {
            for k in 0..self.cols {
                acc += self.data[i * self.cols + k] * other.data[k * other.cols + i];
            }
        }
        Ok(acc)
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        commutator(self, other)
    }

    pub fn anticommutator(&self, other: &Self) -> Result<Self> {
        anticommutator(self, other)
    }

    pub fn hs_inner(&self, other: &Self) -> Result<Complex64> {
        hs_inner(self, other)
    }

    pub fn frobenius_norm(&self) -> f64 {
        frobenius_norm(self)
    }

    /// Squared Frobenius norm, `Σ|a_ij|²`.
    pub fn frobenius_norm_sqr(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }

    /// `‖a − a†‖_F`; infinite for non-square input.
    pub fn hermitian_residual(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let n = self.rows;
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                acc += (self.data[i * n + j] - self.data[j * n + i].conj()).norm_sqr();
            }
        }
        acc.sqrt()
    }

    /// `‖a†a − I‖_F`; infinite for non-square input.
    pub fn unitarity_residual(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let gram = self.adjoint().matmul(self).expect("square");
        gram.sub(&Self::identity(self.rows))
            .expect("same shape")
            .frobenius_norm()
    }

    /// `(a + a†) / 2`.
    pub fn hermitian_part(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                op: "hermitian_part",
                lhs: self.shape(),
                rhs: self.shape(),
            });
        }
        let adj = self.adjoint();
        Ok(self.zip_with(&adj, |a, b| (a + b) * 0.5))
    }

    pub fn tensor_product(&self, other: &Self) -> Self {
        tensor_product(self, other)
    }

    /// Rows `start..start+count` as a new matrix.
    pub fn row_block(&self, start: usize, count: usize) -> Self {
        Self {
            rows: count,
            cols: self.cols,
            data: self.data[start * self.cols..(start + count) * self.cols].to_vec(),
        }
    }

    /// Largest entry-wise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub(crate) fn to_nalgebra(&self) -> DMatrix<Complex64> {
        DMatrix::from_row_slice(self.rows, self.cols, &self.data)
    }

    pub(crate) fn from_nalgebra(m: &DMatrix<Complex64>) -> Self {
        let (rows, cols) = m.shape();
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(m[(i, j)]);
            }
        }
        Self { rows, cols, data }
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for z in self.row(i) {
                write!(f, "({:+.6e}{:+.6e}i) ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// `ab − ba`.
pub fn commutator(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    a.square_pair(b, "commutator")?;
    let ab = a.matmul(b)?;
    let ba = b.matmul(a)?;
    Ok(ab.zip_with(&ba, |x, y| x - y))
}

/// `ab + ba`.
pub fn anticommutator(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    a.square_pair(b, "anticommutator")?;
    let ab = a.matmul(b)?;
    let ba = b.matmul(a)?;
    Ok(ab.zip_with(&ba, |x, y| x + y))
}

/// Hilbert–Schmidt pairing `tr(a† b)`.
pub fn hs_inner(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<Complex64> {
    a.same_shape(b, "hs_inner")?;
    Ok(a.data.iter().zip(&b.data).map(|(x, y)| x.conj() * y).sum())
}

pub fn frobenius_norm(a: &ComplexMatrix) -> f64 {
    a.frobenius_norm_sqr().sqrt()
}

/// Kronecker product; indices of `a` are major.
pub fn tensor_product(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let rows = a.rows * b.rows;
    let cols = a.cols * b.cols;
    let mut data = vec![ZERO; rows * cols];
    for ia in 0..a.rows {
        for ja in 0..a.cols {
            let x = a.data[ia * a.cols + ja];
            for ib in 0..b.rows {
                let r = ia * b.rows + ib;
                for jb in 0..b.cols {
                    data[r * cols + ja * b.cols + jb] = x * b.data[ib * b.cols + jb];
                }
            }
        }
    }
    ComplexMatrix { rows, cols, data }
}

/// Spectral decomposition of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct EigDecomposition {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Orthonormal eigenvectors stored as columns, in eigenvalue order.
    pub eigenvectors: ComplexMatrix,
}

impl EigDecomposition {
    /// `V · diag(f(λ)) · V†`.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let v = &self.eigenvectors;
        let n = v.rows;
        let weights: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        let mut data = vec![ZERO; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = ZERO;
                for (k, &w) in weights.iter().enumerate() {
                    if w != 0.0 {
                        acc += v.data[i * n + k] * v.data[j * n + k].conj() * w;
                    }
                }
                data[i * n + j] = acc;
            }
        }
        ComplexMatrix {
            rows: n,
            cols: n,
            data,
        }
    }

    /// `V · diag(λ) · V†`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        self.map_spectrum(|l| l)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }
}

/// Eigendecomposition of a Hermitian matrix.
///
/// The input is symmetrized as `(a + a†)/2` first; inputs further than
/// `1e-9 · max(1, ‖a‖_F)` from Hermitian are rejected.
pub fn hermitian_eig(a: &ComplexMatrix) -> Result<EigDecomposition> {
    let residual = a.hermitian_residual();
    if residual.is_nan() || residual > hybrid_tol(HERMITIAN_TOL, a.frobenius_norm()) {
        return Err(Error::NotHermitian(residual));
    }
    let n = a.rows;
    let sym = a.hermitian_part()?;
    if n == 1 {
        return Ok(EigDecomposition {
            eigenvalues: vec![sym.data[0].re],
            eigenvectors: ComplexMatrix::identity(1),
        });
    }
    let eig = nalgebra::SymmetricEigen::try_new(sym.to_nalgebra(), f64::EPSILON, 200 * n * n)
        .ok_or(Error::ConvergenceFailure)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let eigenvalues = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut data = vec![ZERO; n * n];
    for (new_col, &old_col) in order.iter().enumerate() {
        for row in 0..n {
            data[row * n + new_col] = eig.eigenvectors[(row, old_col)];
        }
    }
    Ok(EigDecomposition {
        eigenvalues,
        eigenvectors: ComplexMatrix {
            rows: n,
            cols: n,
            data,
        },
    })
}

/// Eigenvalues with magnitude below `SPECTRAL_NOISE · n · λ_max` are below
/// the resolution of the eigensolver and are treated as zero by the square
/// root.
pub const SPECTRAL_NOISE: f64 = 16.0 * f64::EPSILON;

/// Square root of a Hermitian positive-semidefinite matrix from an existing
/// decomposition. Eigenvalues in `[-1e-10, 0)` are clamped to zero.
pub fn psd_sqrt_from_eig(eig: &EigDecomposition) -> Result<ComplexMatrix> {
    let min = eig.min_eigenvalue();
    if min < -PSD_CLAMP_TOL {
        return Err(Error::NotPositiveSemidefinite(min));
    }
    let max = eig.eigenvalues.last().copied().unwrap_or(0.0).max(0.0);
    let cutoff = SPECTRAL_NOISE * eig.eigenvalues.len() as f64 * max;
    Ok(eig.map_spectrum(|l| if l <= cutoff { 0.0 } else { l.sqrt() }))
}

/// Principal square root of a Hermitian positive-semidefinite matrix.
pub fn psd_sqrt(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = hermitian_eig(a)?;
    let root = psd_sqrt_from_eig(&eig)?;
    let err = root.matmul(&root)?.sub(a)?.frobenius_norm();
    if err > hybrid_tol(SQRT_RECONSTRUCT_TOL, a.frobenius_norm()) {
        return Err(Error::InternalConsistency {
            quantity: "psd_sqrt reconstruction",
            value: err,
        });
    }
    Ok(root)
}

/// Thin orthonormal factor of a full-column-rank matrix `m` (rows ≥ cols),
/// with each column's phase fixed so the matching diagonal entry of R is
/// real and positive. Applied to a complex Gaussian matrix this yields a
/// Haar-distributed isometry.
pub fn orthonormal_columns(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    if m.rows < m.cols {
        return Err(Error::DimensionMismatch {
            op: "orthonormal_columns",
            lhs: m.shape(),
            rhs: (m.cols, m.cols),
        });
    }
    let qr = m.to_nalgebra().qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..m.cols {
        let d = r[(j, j)];
        let modulus = d.norm();
        if modulus == 0.0 {
            return Err(Error::InternalConsistency {
                quantity: "rank-deficient QR input",
                value: 0.0,
            });
        }
        let phase = d / modulus;
        for i in 0..m.rows {
            q[(i, j)] *= phase;
        }
    }
    Ok(ComplexMatrix::from_nalgebra(&q))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: &ComplexMatrix, b: &ComplexMatrix, tol: f64) -> bool {
        a.shape() == b.shape() && a.max_abs_diff(b) <= tol
    }

    #[test]
    fn trace_identity() {
        assert_eq!(ComplexMatrix::identity(2).trace().unwrap(), c(2.0, 0.0));
    }

    #[test]
    fn adjoint_is_involution() {
        let a = ComplexMatrix::new(2, 3, (0..6).map(|k| c(k as f64, -(k as f64) * 0.5)).collect())
            .unwrap();
        assert_eq!(a.adjoint().adjoint(), a);
        assert_eq!(a.adjoint().shape(), (3, 2));
    }

    #[test]
    fn pauli_squares_to_identity() {
        let x = ComplexMatrix::pauli_x();
        assert_eq!(x.matmul(&x).unwrap(), ComplexMatrix::identity(2));
    }

    #[test]
    fn shape_errors() {
        let a = ComplexMatrix::identity(2);
        let b = ComplexMatrix::identity(3);
        assert!(matches!(a.add(&b), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(a.matmul(&b), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(commutator(&a, &b), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(hs_inner(&a, &b), Err(Error::DimensionMismatch { .. })));
        assert!(ComplexMatrix::zeros(2, 3).trace().is_err());
        assert!(matches!(
            ComplexMatrix::new(2, 2, vec![c(0.0, 0.0); 3]),
            Err(Error::BadShape { .. })
        ));
        assert!(matches!(
            ComplexMatrix::new(1, 1, vec![c(f64::NAN, 0.0)]),
            Err(Error::NonFinite)
        ));
    }

    #[test]
    fn pauli_commutators() {
        let (x, y, z) = (
            ComplexMatrix::pauli_x(),
            ComplexMatrix::pauli_y(),
            ComplexMatrix::pauli_z(),
        );
        assert!(close(&commutator(&x, &y).unwrap(), &z.scale(c(0.0, 2.0)), 0.0));
        assert!(close(&commutator(&x, &z).unwrap(), &y.scale(c(0.0, -2.0)), 0.0));
        let a = ComplexMatrix::new(2, 2, vec![c(1.0, 2.0), c(-3.0, 0.5), c(0.0, 1.0), c(4.0, 0.0)])
            .unwrap();
        let i2 = ComplexMatrix::identity(2);
        assert!(close(&commutator(&a, &i2).unwrap(), &ComplexMatrix::zeros(2, 2), 0.0));
        assert!(close(&anticommutator(&a, &i2).unwrap(), &a.scale_real(2.0), 0.0));
    }

    #[test]
    fn pauli_anticommutators() {
        let (x, y, z) = (
            ComplexMatrix::pauli_x(),
            ComplexMatrix::pauli_y(),
            ComplexMatrix::pauli_z(),
        );
        assert!(close(&anticommutator(&x, &y).unwrap(), &ComplexMatrix::zeros(2, 2), 0.0));
        assert!(close(
            &anticommutator(&z, &z).unwrap(),
            &ComplexMatrix::identity(2).scale_real(2.0),
            0.0
        ));
    }

    #[test]
    fn hs_inner_and_norms() {
        let (x, y) = (ComplexMatrix::pauli_x(), ComplexMatrix::pauli_y());
        assert_eq!(hs_inner(&x, &x).unwrap(), c(2.0, 0.0));
        assert_eq!(hs_inner(&x, &y).unwrap(), c(0.0, 0.0));
        assert!((frobenius_norm(&ComplexMatrix::identity(2)) - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(frobenius_norm(&ComplexMatrix::zeros(2, 2)), 0.0);
        assert!((frobenius_norm(&x) - 2f64.sqrt()).abs() < 1e-15);
        let a = ComplexMatrix::new(2, 2, vec![c(1.0, 2.0), c(-3.0, 0.5), c(0.0, 1.0), c(4.0, 0.0)])
            .unwrap();
        let aa = hs_inner(&a, &a).unwrap();
        assert_eq!(aa.im, 0.0);
        assert!((aa.re - a.frobenius_norm_sqr()).abs() < 1e-12);
    }

    #[test]
    fn eig_of_diagonal_and_pauli() {
        let e = hermitian_eig(&ComplexMatrix::from_real_diag(&[3.0, 1.0])).unwrap();
        assert!((e.eigenvalues[0] - 1.0).abs() < 1e-14);
        assert!((e.eigenvalues[1] - 3.0).abs() < 1e-14);
        // columns are a permutation of the standard basis up to phase
        assert!((e.eigenvectors[(1, 0)].norm() - 1.0).abs() < 1e-14);
        assert!((e.eigenvectors[(0, 1)].norm() - 1.0).abs() < 1e-14);

        let e = hermitian_eig(&ComplexMatrix::pauli_x()).unwrap();
        assert!((e.eigenvalues[0] + 1.0).abs() < 1e-14);
        assert!((e.eigenvalues[1] - 1.0).abs() < 1e-14);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let v0 = (e.eigenvectors[(0, 0)], e.eigenvectors[(1, 0)]);
        // eigenvector of -1 is (1, -1)/√2 up to a global phase
        assert!(((v0.0 + v0.1).norm()) < 1e-14);
        assert!((v0.0.norm() - s).abs() < 1e-14);
    }

    #[test]
    fn eig_rejects_non_hermitian() {
        let a = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 0.0, 0.0]).unwrap();
        assert!(matches!(hermitian_eig(&a), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn sqrt_examples() {
        let i3 = ComplexMatrix::identity(3);
        assert!(close(&psd_sqrt(&i3).unwrap(), &i3, 1e-14));
        let d = psd_sqrt(&ComplexMatrix::from_real_diag(&[4.0, 9.0])).unwrap();
        assert!(close(&d, &ComplexMatrix::from_real_diag(&[2.0, 3.0]), 1e-14));
        let neg = ComplexMatrix::from_real_diag(&[1.0, -1e-3]);
        assert!(matches!(psd_sqrt(&neg), Err(Error::NotPositiveSemidefinite(_))));
        let tiny = ComplexMatrix::from_real_diag(&[1.0, -1e-12]);
        assert!(psd_sqrt(&tiny).is_ok());
    }

    #[test]
    fn tensor_examples() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(tensor_product(&i2, &i2), ComplexMatrix::identity(4));
        let a = ComplexMatrix::from_real_diag(&[1.0, 2.0]);
        let b = ComplexMatrix::from_real_diag(&[3.0, 4.0]);
        assert_eq!(
            tensor_product(&a, &b),
            ComplexMatrix::from_real_diag(&[3.0, 4.0, 6.0, 8.0])
        );
        // a's indices major: (x ⊗ I)[0][2] = x[0][1]
        let x = ComplexMatrix::pauli_x();
        let k = tensor_product(&x, &i2);
        assert_eq!(k[(0, 2)], c(1.0, 0.0));
        assert_eq!(k[(0, 1)], c(0.0, 0.0));
    }

    #[test]
    fn trace_of_product_matches_matmul() {
        let a = ComplexMatrix::new(2, 2, vec![c(1.0, 2.0), c(-3.0, 0.5), c(0.0, 1.0), c(4.0, 0.0)])
            .unwrap();
        let b = ComplexMatrix::pauli_y();
        let direct = a.matmul(&b).unwrap().trace().unwrap();
        assert!((a.trace_of_product(&b).unwrap() - direct).norm() < 1e-15);
    }
}
