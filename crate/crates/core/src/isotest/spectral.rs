use nalgebra::DMatrix;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::complex::OrientedSimplicialComplex;
use crate::error::Result;
use crate::hodge::{char_poly_exact, laplacian_parts_exact};

/// Exact comparison of two characteristic polynomials of `L_k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsospectralVerdict {
    pub k: usize,
    pub separated: bool,
    /// Index (power of lambda) of the first differing coefficient; a length
    /// mismatch reports the shorter length.
    pub first_difference: Option<usize>,
    /// Ascending coefficients, as decimal strings.
    pub poly_a: Vec<String>,
    pub poly_b: Vec<String>,
    pub warnings: Vec<String>,
}

/// Ascending coefficients of `det(lambda I - L_k)`, exact.
///
/// A complex with no `k`-simplices gives the empty-matrix polynomial `1`
/// and a warning.
pub fn laplacian_char_poly(sc: &OrientedSimplicialComplex, k: usize) -> Result<(Vec<BigInt>, Option<String>)> {
    if k > sc.dim() || sc.count(k) == 0 {
        return Ok((vec![BigInt::from(1)], Some(format!("no {k}-simplices; using the empty polynomial 1"))));
    }
    let (down, up) = laplacian_parts_exact(sc, k)?;
    let l: DMatrix<i64> = down + up;
    Ok((char_poly_exact(&l)?, None))
}

pub fn isospectral(
    a: &OrientedSimplicialComplex,
    b: &OrientedSimplicialComplex,
    k: usize,
) -> Result<IsospectralVerdict> {
    let (pa, wa) = laplacian_char_poly(a, k)?;
    let (pb, wb) = laplacian_char_poly(b, k)?;
    let first_difference =
        pa.iter().zip(&pb).position(|(x, y)| x != y).or_else(|| (pa.len() != pb.len()).then(|| pa.len().min(pb.len())));
    let warnings = [wa.map(|w| format!("a: {w}")), wb.map(|w| format!("b: {w}"))].into_iter().flatten().collect();
    Ok(IsospectralVerdict {
        k,
        separated: first_difference.is_some(),
        first_difference,
        poly_a: pa.iter().map(ToString::to_string).collect(),
        poly_b: pb.iter().map(ToString::to_string).collect(),
        warnings,
    })
}
