use nalgebra::DVector;

use super::laplacian::laplacian_parts_exact;
use super::spectrum::symmetric_spectrum;
use crate::complex::OrientedSimplicialComplex;
use crate::error::{Error, Result};

/// Orthogonal split of a k-cochain.
#[derive(Debug, Clone, PartialEq)]
pub struct HodgeDecomposition {
    /// Component in the image of `B_k^T`.
    pub gradient: DVector<f64>,
    /// Component in the kernel of `L_k`.
    pub harmonic: DVector<f64>,
    /// Component in the image of `B_{k+1}`.
    pub curl: DVector<f64>,
}

/// Splits `cochain` into gradient, harmonic and curl parts.
///
/// The gradient and curl parts are orthogonal projections onto the ranges
/// of the down and up Laplacians; the harmonic part is the remainder.
pub fn hodge_decompose(sc: &OrientedSimplicialComplex, k: usize, cochain: &DVector<f64>) -> Result<HodgeDecomposition> {
    let n = sc.count(k);
    let (down, up) = laplacian_parts_exact(sc, k)?;
    if cochain.len() != n {
        return Err(Error::Domain(format!("cochain of length {} on {n} {k}-simplices", cochain.len())));
    }
    let project = |m: nalgebra::DMatrix<i64>| -> Result<DVector<f64>> {
        let spec = symmetric_spectrum(&m.map(|x| x as f64), None)?;
        let u = spec.range_basis();
        Ok(&u * (u.transpose() * cochain))
    };
    let gradient = project(down)?;
    let curl = project(up)?;
    let harmonic = cochain - &gradient - &curl;
    Ok(HodgeDecomposition { gradient, harmonic, curl })
}
