use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::complex::{incidence_unchecked, OrientedSimplicialComplex};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Standard,
    Normalized,
}

impl std::str::FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "standard" => Ok(Self::Standard),
            "normalized" => Ok(Self::Normalized),
            other => {
                Err(Error::Config(format!("unknown Laplacian variant {other:?} (expected standard or normalized)")))
            }
        }
    }
}

/// A Hodge k-Laplacian with its down and up summands kept separately.
///
/// For the normalized variant the matrix is not symmetric in general; it is
/// similar to the symmetric matrix `W^{-1/2} L W^{1/2}` with `W` the diagonal
/// in [`HodgeOperator::weights`], which is what [`super::spectrum`] factors.
#[derive(Debug, Clone, PartialEq)]
pub struct HodgeOperator {
    pub k: usize,
    pub variant: Variant,
    pub matrix: DMatrix<f64>,
    pub down_part: DMatrix<f64>,
    pub up_part: DMatrix<f64>,
    weights: Option<DVector<f64>>,
}

impl HodgeOperator {
    /// Diagonal of `D_{k+1}` for the normalized variant.
    pub fn weights(&self) -> Option<&DVector<f64>> {
        self.weights.as_ref()
    }

    /// The symmetric matrix whose spectrum equals that of `matrix`.
    pub fn symmetric_form(&self) -> DMatrix<f64> {
        match &self.weights {
            None => self.matrix.clone(),
            Some(w) => {
                let mut s = self.matrix.clone();
                for i in 0..s.nrows() {
                    for j in 0..s.ncols() {
                        s[(i, j)] *= (w[j] / w[i]).sqrt();
                    }
                }
                // Remove rounding asymmetry.
                (&s + s.transpose()) * 0.5
            }
        }
    }

    /// Integer matrix of a standard operator, `None` for the normalized one.
    pub fn integer_matrix(&self) -> Option<DMatrix<i64>> {
        (self.variant == Variant::Standard).then(|| self.matrix.map(|x| x.round() as i64))
    }
}

/// Down and up parts `B_k^T B_k`, `B_{k+1} B_{k+1}^T` in exact arithmetic.
///
/// The down part is zero at `k = 0`; the up part is zero at `k = dim`.
pub fn laplacian_parts_exact(sc: &OrientedSimplicialComplex, k: usize) -> Result<(DMatrix<i64>, DMatrix<i64>)> {
    check_order(sc, k)?;
    let n = sc.count(k);
    let down = if k == 0 {
        DMatrix::zeros(n, n)
    } else {
        let b = incidence_unchecked(sc, k).to_dense_i64();
        b.transpose() * b
    };
    let b_up = incidence_unchecked(sc, k + 1).to_dense_i64();
    let up = &b_up * b_up.transpose();
    Ok((down, up))
}

fn check_order(sc: &OrientedSimplicialComplex, k: usize) -> Result<()> {
    if k > sc.dim() {
        Err(Error::Domain(format!("Laplacian order {k} above complex dimension {}", sc.dim())))
    } else {
        Ok(())
    }
}

pub fn hodge_laplacian(sc: &OrientedSimplicialComplex, k: usize, variant: Variant) -> Result<HodgeOperator> {
    match variant {
        Variant::Standard => {
            let (down, up) = laplacian_parts_exact(sc, k)?;
            let down = down.map(|x| x as f64);
            let up = up.map(|x| x as f64);
            Ok(HodgeOperator { k, variant, matrix: &down + &up, down_part: down, up_part: up, weights: None })
        }
        Variant::Normalized => normalized(sc, k),
    }
}

/// Degree weights `D_{k+1} = max(diag(|B_{k+1}| 1), I)` of the k-simplices.
pub(crate) fn upper_degree_weights(sc: &OrientedSimplicialComplex, k: usize) -> DVector<f64> {
    let b_up = incidence_unchecked(sc, k + 1);
    let mut w = DVector::from_element(sc.count(k), 0.0);
    for (i, _, _) in b_up.triplets() {
        w[i] += 1.0;
    }
    w.map(|x: f64| x.max(1.0))
}

fn normalized(sc: &OrientedSimplicialComplex, k: usize) -> Result<HodgeOperator> {
    check_order(sc, k)?;
    let n = sc.count(k);
    let w = upper_degree_weights(sc, k);
    let down = if k == 0 {
        DMatrix::zeros(n, n)
    } else {
        let b = incidence_unchecked(sc, k);
        // D_k = (k+1) diag(|B_k| D_{k+1} 1), inverted where nonzero.
        let mut dk = DVector::from_element(b.nrows(), 0.0);
        for (i, j, _) in b.triplets() {
            dk[i] += w[j];
        }
        let dk_inv = dk.map(|x| if x > 0.0 { 1.0 / ((k + 1) as f64 * x) } else { 0.0 });
        let bd = b.to_dense();
        let inner = bd.transpose() * DMatrix::from_diagonal(&dk_inv) * &bd;
        DMatrix::from_diagonal(&w) * inner
    };
    let b_up = incidence_unchecked(sc, k + 1).to_dense();
    let w_inv = w.map(|x| 1.0 / x);
    let up = &b_up * b_up.transpose() * DMatrix::from_diagonal(&w_inv) / (k + 2) as f64;
    Ok(HodgeOperator {
        k,
        variant: Variant::Normalized,
        matrix: &down + &up,
        down_part: down,
        up_part: up,
        weights: Some(w),
    })
}
