use nalgebra::{DMatrix, DVector, SymmetricEigen};

use super::laplacian::{hodge_laplacian, HodgeOperator, Variant};
use crate::complex::OrientedSimplicialComplex;
use crate::error::{Error, Result};
use crate::fmt::format_float;

/// Symmetry tolerance checked before factoring.
pub const SYMMETRY_TOL: f64 = 1e-10;

/// Ascending eigenvalues with orthonormal eigenvectors (as columns).
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: DMatrix<f64>,
    pub zero_tol: f64,
}

/// `max(1e-9, 1e-8 * lambda_max)`.
pub fn default_zero_tol(eigenvalues: &[f64]) -> f64 {
    let top = eigenvalues.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
    (1e-8 * top).max(1e-9)
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn is_zero(&self, i: usize) -> bool {
        self.eigenvalues[i].abs() <= self.zero_tol
    }

    /// Number of eigenvalues classified as zero.
    pub fn kernel_dim(&self) -> usize {
        (0..self.len()).filter(|&i| self.is_zero(i)).count()
    }

    /// Eigenvalues above the zero threshold.
    pub fn nonzero(&self) -> Vec<f64> {
        (0..self.len()).filter(|&i| !self.is_zero(i)).map(|i| self.eigenvalues[i]).collect()
    }

    /// Columns spanning the kernel.
    pub fn kernel_basis(&self) -> DMatrix<f64> {
        self.select(|i| self.is_zero(i))
    }

    /// Columns spanning the orthogonal complement of the kernel.
    pub fn range_basis(&self) -> DMatrix<f64> {
        self.select(|i| !self.is_zero(i))
    }

    pub(crate) fn select(&self, keep: impl Fn(usize) -> bool) -> DMatrix<f64> {
        let cols: Vec<DVector<f64>> =
            (0..self.len()).filter(|&i| keep(i)).map(|i| self.eigenvectors.column(i).into_owned()).collect();
        if cols.is_empty() {
            DMatrix::zeros(self.eigenvectors.nrows(), 0)
        } else {
            DMatrix::from_columns(&cols)
        }
    }

    /// `sum_i f(lambda_i) u_i u_i^T`.
    pub fn apply(&self, f: impl Fn(f64) -> f64) -> DMatrix<f64> {
        let scaled = DVector::from_iterator(self.len(), self.eigenvalues.iter().map(|&l| f(l)));
        &self.eigenvectors * DMatrix::from_diagonal(&scaled) * self.eigenvectors.transpose()
    }

    /// `sum_i lambda_i u_i u_i^T`.
    pub fn reconstruct(&self) -> DMatrix<f64> {
        self.apply(|l| l)
    }

    /// Groups of consecutive eigen-indices whose eigenvalues agree within `tol`.
    pub fn eigen_groups(&self, tol: f64) -> Vec<std::ops::Range<usize>> {
        let mut groups = Vec::new();
        let mut start = 0;
        for i in 1..=self.len() {
            if i == self.len() || self.eigenvalues[i] - self.eigenvalues[i - 1] > tol {
                groups.push(start..i);
                start = i;
            }
        }
        groups
    }

    /// CSV with one row per eigenpair: eigenvalue, then the vector.
    pub fn to_csv(&self) -> String {
        let n = self.eigenvectors.nrows();
        let mut out = String::from("eigenvalue");
        for i in 0..n {
            out.push_str(&format!(",v{i}"));
        }
        out.push('\n');
        for (j, &l) in self.eigenvalues.iter().enumerate() {
            out.push_str(&format_float(l));
            for i in 0..n {
                out.push(',');
                out.push_str(&format_float(self.eigenvectors[(i, j)]));
            }
            out.push('\n');
        }
        out
    }
}

/// Full eigendecomposition of a symmetric matrix, eigenvalues ascending.
pub fn symmetric_spectrum(m: &DMatrix<f64>, zero_tol: Option<f64>) -> Result<Spectrum> {
    if !m.is_square() {
        return Err(Error::Domain(format!("{}x{} matrix is not square", m.nrows(), m.ncols())));
    }
    let asym = (m - m.transpose()).amax();
    if asym > SYMMETRY_TOL {
        return Err(Error::Contract(format!("matrix is not symmetric (max deviation {asym:e})")));
    }
    let n = m.nrows();
    if n == 0 {
        return Ok(Spectrum {
            eigenvalues: Vec::new(),
            eigenvectors: DMatrix::zeros(0, 0),
            zero_tol: zero_tol.unwrap_or(1e-9),
        });
    }
    let eig = SymmetricEigen::new(m.clone());
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let cols: Vec<DVector<f64>> = order.iter().map(|&i| eig.eigenvectors.column(i).into_owned()).collect();
    let zero_tol = zero_tol.unwrap_or_else(|| default_zero_tol(&eigenvalues));
    Ok(Spectrum { eigenvalues, eigenvectors: DMatrix::from_columns(&cols), zero_tol })
}

/// Spectrum of a Hodge operator.
///
/// Normalized operators are factored through their symmetric form, so the
/// eigenvectors returned are those of `W^{-1/2} L W^{1/2}`.
pub fn spectrum(op: &HodgeOperator, zero_tol: Option<f64>) -> Result<Spectrum> {
    symmetric_spectrum(&op.symmetric_form(), zero_tol)
}

/// The k-th Betti number: dimension of the kernel of the standard `L_k`.
pub fn betti(sc: &OrientedSimplicialComplex, k: usize) -> Result<usize> {
    let op = hodge_laplacian(sc, k, Variant::Standard)?;
    Ok(spectrum(&op, None)?.kernel_dim())
}
