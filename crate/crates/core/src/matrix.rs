//! Dense complex matrices.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Dense complex matrix with finite entries.
///
/// Thin wrapper over [`nalgebra::DMatrix`]; construction rejects NaN and
/// infinite entries, everything else is plain linear algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix(DMatrix<C64>);

impl ComplexMatrix {
    /// Build from row-major entries.
    pub fn from_row_major(rows: usize, cols: usize, entries: Vec<C64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Shape(format!("matrix must be non-empty, got {rows}x{cols}")));
        }
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Self::from_dmatrix(DMatrix::from_row_iterator(rows, cols, entries))
    }

    /// Build from separate real and imaginary row arrays.
    pub fn from_parts(re: &[Vec<f64>], im: &[Vec<f64>]) -> Result<Self> {
        let rows = re.len();
        let cols = re.first().map(Vec::len).unwrap_or(0);
        if im.len() != rows
            || re.iter().any(|r| r.len() != cols)
            || im.iter().any(|r| r.len() != cols)
        {
            return Err(Error::Shape("real and imaginary parts must be equal-sized rectangles".into()));
        }
        let entries = re
            .iter()
            .zip(im)
            .flat_map(|(r, i)| r.iter().zip(i).map(|(&a, &b)| C64::new(a, b)))
            .collect();
        Self::from_row_major(rows, cols, entries)
    }

    /// Build from real rows.
    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let zeros: Vec<Vec<f64>> = rows.iter().map(|r| vec![0.0; r.len()]).collect();
        Self::from_parts(rows, &zeros)
    }

    pub fn from_dmatrix(m: DMatrix<C64>) -> Result<Self> {
        if m.nrows() == 0 || m.ncols() == 0 {
            return Err(Error::Shape("matrix must be non-empty".into()));
        }
        if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::input("matrix entries must be finite"));
        }
        Ok(ComplexMatrix(m))
    }

    pub(crate) fn from_dmatrix_unchecked(m: DMatrix<C64>) -> Self {
        ComplexMatrix(m)
    }

    pub fn identity(n: usize) -> Self {
        ComplexMatrix(DMatrix::identity(n, n))
    }

    pub fn rows(&self) -> usize {
        self.0.nrows()
    }

    pub fn cols(&self) -> usize {
        self.0.ncols()
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols()
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.0[(row, col)]
    }

    pub fn as_dmatrix(&self) -> &DMatrix<C64> {
        &self.0
    }

    pub fn into_dmatrix(self) -> DMatrix<C64> {
        self.0
    }

    pub fn transpose(&self) -> Self {
        ComplexMatrix(self.0.transpose())
    }

    pub fn adjoint(&self) -> Self {
        ComplexMatrix(self.0.adjoint())
    }

    pub fn mul(&self, other: &ComplexMatrix) -> Result<Self> {
        if self.cols() != other.rows() {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows(),
                self.cols(),
                other.rows(),
                other.cols()
            )));
        }
        Ok(ComplexMatrix(&self.0 * &other.0))
    }

    /// Row-major copy of the real parts.
    pub fn re_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows())
            .map(|i| (0..self.cols()).map(|j| self.0[(i, j)].re).collect())
            .collect()
    }

    /// Row-major copy of the imaginary parts.
    pub fn im_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows())
            .map(|i| (0..self.cols()).map(|j| self.0[(i, j)].im).collect())
            .collect()
    }

    /// `max |A^dag A - I|` over entries; infinite for non-square input.
    pub fn unitarity_residual(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let n = self.rows();
        let g = self.0.adjoint() * &self.0;
        max_abs_diff(&g, &DMatrix::identity(n, n))
    }

    /// Reject matrices further than `tol` from unitary.
    pub fn ensure_unitary(&self, tol: f64) -> Result<()> {
        if !self.is_square() {
            return Err(Error::Shape(format!(
                "interferometer must be square, got {}x{}",
                self.rows(),
                self.cols()
            )));
        }
        let residual = self.unitarity_residual();
        if residual > tol {
            return Err(Error::NotUnitary { residual });
        }
        Ok(())
    }

    /// `max |A_ij - B_ij|`; infinite on shape mismatch.
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        max_abs_diff(&self.0, &other.0)
    }
}

pub(crate) fn max_abs_diff(a: &DMatrix<C64>, b: &DMatrix<C64>) -> f64 {
    if a.shape() != b.shape() {
        return f64::INFINITY;
    }
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Tolerance used when validating user-supplied interferometers.
pub const UNITARY_TOLERANCE: f64 = 1e-10;
