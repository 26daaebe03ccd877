use nalgebra::DMatrix;

use super::transition::{simplex_label, TransitionMatrix};
use crate::complex::{incidence_unchecked, OrientedSimplicialComplex};
use crate::error::{Error, Result};
use crate::hodge::laplacian_parts_exact;

/// Block matrix coupling all simplex orders `0..=K`.
///
/// Diagonal block `k` is the standard `L_k` of the complex, block
/// `(k, k+1)` is `B_{k+1}` and block `(k+1, k)` its transpose. Order `k`
/// occupies rows `offsets[k]..offsets[k+1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterOrderAdjacency {
    pub max_order: usize,
    pub matrix: DMatrix<i64>,
    pub offsets: Vec<usize>,
}

impl InterOrderAdjacency {
    /// Block `(a, b)` of an arbitrary matrix laid out like this one.
    pub fn block<T: nalgebra::Scalar>(&self, m: &DMatrix<T>, a: usize, b: usize) -> DMatrix<T> {
        let (r0, r1) = (self.offsets[a], self.offsets[a + 1]);
        let (c0, c1) = (self.offsets[b], self.offsets[b + 1]);
        m.view((r0, c0), (r1 - r0, c1 - c0)).into_owned()
    }

    /// Order of flat index `i`.
    pub fn order_of(&self, i: usize) -> usize {
        self.offsets.windows(2).position(|w| i < w[1]).expect("index in range")
    }
}

pub fn inter_adjacency(sc: &OrientedSimplicialComplex, max_order: usize) -> Result<InterOrderAdjacency> {
    if max_order > sc.dim() {
        return Err(Error::Domain(format!("order {max_order} above complex dimension {}", sc.dim())));
    }
    let mut offsets = vec![0];
    for k in 0..=max_order {
        offsets.push(offsets[k] + sc.count(k));
    }
    let total = offsets[max_order + 1];
    let mut a = DMatrix::zeros(total, total);
    for k in 0..=max_order {
        let (down, up) = laplacian_parts_exact(sc, k)?;
        let l = down + up;
        a.view_mut((offsets[k], offsets[k]), l.shape()).copy_from(&l);
        if k < max_order {
            let b = incidence_unchecked(sc, k + 1).to_dense_i64();
            a.view_mut((offsets[k], offsets[k + 1]), b.shape()).copy_from(&b);
            let bt = b.transpose();
            a.view_mut((offsets[k + 1], offsets[k]), bt.shape()).copy_from(&bt);
        }
    }
    Ok(InterOrderAdjacency { max_order, matrix: a, offsets })
}

/// Row-normalised `|A_K|` as a walk over all simplices of order `<= K`.
pub fn inter_transition(sc: &OrientedSimplicialComplex, max_order: usize) -> Result<TransitionMatrix> {
    let a = inter_adjacency(sc, max_order)?;
    let mut p = a.matrix.map(|x| x.abs() as f64);
    for i in 0..p.nrows() {
        let s = p.row(i).sum();
        if s == 0.0 {
            // Only an isolated vertex has an all-zero row.
            p[(i, i)] = 1.0;
        } else {
            p.row_mut(i).unscale_mut(s);
        }
    }
    let labels = (0..=max_order).flat_map(|k| sc.faces(k).iter().map(|f| simplex_label(f))).collect();
    TransitionMatrix::new(labels, p, false)
}
