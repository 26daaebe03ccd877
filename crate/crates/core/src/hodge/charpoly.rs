use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Coefficients of `det(lambda I - M)`, lowest degree first.
///
/// Berkowitz's division-free algorithm over arbitrary-precision integers, so
/// the result is exact for any integer matrix. The empty matrix gives `[1]`.
pub fn char_poly_exact(m: &DMatrix<i64>) -> Result<Vec<BigInt>> {
    if !m.is_square() {
        return Err(Error::Domain(format!("{}x{} matrix is not square", m.nrows(), m.ncols())));
    }
    let n = m.nrows();
    let a = |i: usize, j: usize| BigInt::from(m[(i, j)]);
    // Descending coefficients of the leading r x r principal minor.
    let mut v: Vec<BigInt> = vec![BigInt::one()];
    for r in 0..n {
        // Column of the Toeplitz factor: 1, -a_rr, -R C, -R M C, ...
        let mut t = Vec::with_capacity(r + 2);
        t.push(BigInt::one());
        t.push(-a(r, r));
        let mut w: Vec<BigInt> = (0..r).map(|i| a(i, r)).collect();
        for _ in 0..r {
            let dot: BigInt = (0..r).map(|j| a(r, j) * &w[j]).sum();
            t.push(-dot);
            w = (0..r).map(|i| (0..r).map(|j| a(i, j) * &w[j]).sum()).collect();
        }
        let mut next = vec![BigInt::zero(); r + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, vj) in v.iter().enumerate().take(i + 1) {
                if let Some(tij) = t.get(i - j) {
                    *slot += tij * vj;
                }
            }
        }
        v = next;
    }
    v.reverse();
    Ok(v)
}

/// [`char_poly_exact`] for a float matrix whose entries must be integers.
pub fn char_poly_exact_f64(m: &DMatrix<f64>) -> Result<Vec<BigInt>> {
    let mut ints = DMatrix::zeros(m.nrows(), m.ncols());
    for (dst, &x) in ints.iter_mut().zip(m.iter()) {
        if x.fract() != 0.0 || !x.is_finite() || x.abs() > i64::MAX as f64 {
            return Err(Error::Domain(format!("entry {x} is not an integer")));
        }
        *dst = x as i64;
    }
    char_poly_exact(&ints)
}

/// Ascending coefficients of `prod (lambda - r)^mult` over integer roots.
pub fn poly_from_roots(roots: &[(i64, usize)]) -> Vec<BigInt> {
    let mut p = vec![BigInt::one()];
    for &(r, mult) in roots {
        for _ in 0..mult {
            p = poly_mul(&p, &[BigInt::from(-r), BigInt::one()]);
        }
    }
    p
}

/// Product of two ascending coefficient vectors.
pub fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}
