use nalgebra::DMatrix;

use super::simplicial::OrientedSimplicialComplex;
use crate::error::{Error, Result};

/// Sparse signed incidence matrix B_k between (k-1)- and k-simplices.
///
/// Stored column-wise: `columns[j]` holds the `(row, sign)` pairs of the
/// boundary of k-simplex `j`, sorted by row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedIncidence {
    k: usize,
    rows: usize,
    columns: Vec<Vec<(usize, i8)>>,
}

impl SignedIncidence {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.columns.len()
    }

    /// Boundary of k-simplex `j` as `(face id, sign)` pairs.
    pub fn column(&self, j: usize) -> &[(usize, i8)] {
        &self.columns[j]
    }

    /// Cofaces of each (k-1)-simplex as `(k-simplex id, sign)` pairs.
    pub fn rows_view(&self) -> Vec<Vec<(usize, i8)>> {
        let mut out = vec![Vec::new(); self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, s) in col {
                out[i].push((j, s));
            }
        }
        out
    }

    /// All nonzeros as `(row, col, sign)`, column-major.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, i8)> + '_ {
        self.columns.iter().enumerate().flat_map(|(j, col)| col.iter().map(move |&(i, s)| (i, j, s)))
    }

    pub fn to_dense_i64(&self) -> DMatrix<i64> {
        let mut m = DMatrix::zeros(self.rows, self.ncols());
        for (i, j, s) in self.triplets() {
            m[(i, j)] = s as i64;
        }
        m
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        self.to_dense_i64().map(|x| x as f64)
    }
}

/// Signed incidence B_k for `1 <= k <= sc.dim()`.
///
/// The column of a k-simplex `(v_0, ..., v_k)` (its reference orientation)
/// has `(-1)^j` at the face obtained by dropping `v_j`, multiplied by `-1`
/// when the stored orientation of that face is the odd permutation of the
/// remaining tuple.
pub fn incidence(sc: &OrientedSimplicialComplex, k: usize) -> Result<SignedIncidence> {
    if k == 0 || k > sc.dim() {
        return Err(Error::Domain(format!("incidence order {k} outside 1..={}", sc.dim())));
    }
    Ok(incidence_unchecked(sc, k))
}

/// Like [`incidence`] but returns an empty-column matrix for `k = dim + 1`.
pub(crate) fn incidence_unchecked(sc: &OrientedSimplicialComplex, k: usize) -> SignedIncidence {
    let faces = sc.faces(k - 1);
    let columns = sc
        .faces(k)
        .iter()
        .map(|simplex| {
            let mut col: Vec<(usize, i8)> = (0..=k)
                .map(|j| {
                    let mut face = simplex.clone();
                    face.remove(j);
                    let row = sc.index_of(&face).expect("closed complex");
                    let alt = if j % 2 == 0 { 1 } else { -1 };
                    (row, alt * relative_parity(&faces[row], &face))
                })
                .collect();
            col.sort_unstable();
            col
        })
        .collect();
    SignedIncidence { k, rows: faces.len(), columns }
}

/// `+1` if `tuple` is an even permutation of `reference`, else `-1`.
fn relative_parity(reference: &[usize], tuple: &[usize]) -> i8 {
    let pos: Vec<usize> =
        tuple.iter().map(|v| reference.iter().position(|r| r == v).expect("same vertex set")).collect();
    let mut inversions = 0;
    for a in 0..pos.len() {
        for b in a + 1..pos.len() {
            if pos[a] > pos[b] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The lift V = [I; -I] of shape `2 n_k x n_k`.
pub fn lift_operator(n_k: usize) -> DMatrix<f64> {
    let mut v = DMatrix::zeros(2 * n_k, n_k);
    for i in 0..n_k {
        v[(i, i)] = 1.0;
        v[(n_k + i, i)] = -1.0;
    }
    v
}
