use nalgebra::DMatrix;

use super::transition::{lifted_labels, TransitionMatrix};
use crate::complex::{incidence_unchecked, OrientedSimplicialComplex};
use crate::error::{Error, Result};
use crate::hodge::upper_degree_weights;

/// Lifted walk on oriented edges: [`k_transition`] at `k = 1`.
pub fn lifted_edge_transition(sc: &OrientedSimplicialComplex) -> Result<TransitionMatrix> {
    if sc.dim() < 1 {
        return Err(Error::Domain("lifted edge walk needs a complex of dimension >= 1".into()));
    }
    k_transition(sc, 1)
}

/// Lifted random walk on the `2 n_k` oriented k-simplices.
///
/// State `i` is simplex `i` in reference orientation and state `n_k + i` the
/// same simplex reversed. For `k >= 1` each step is an even mixture of:
///
/// * an up move: pick a (k+1)-coface uniformly, then one of its `k+2` faces
///   uniformly (the current simplex included), arriving with the orientation
///   opposite to the current one relative to that coface;
/// * a down move: pick one of the `k+1` faces uniformly, then a coface of it
///   with probability proportional to the upper degree weights, arriving
///   with the orientation opposite to the current one relative to the face.
///
/// A move with nothing to choose from keeps or reverses the orientation with
/// probability 1/2 each. At `k = 0` only the up move exists and it never
/// picks the current vertex, so merging orientations gives `D^{-1} A`.
pub fn k_transition(sc: &OrientedSimplicialComplex, k: usize) -> Result<TransitionMatrix> {
    if k > sc.dim() {
        return Err(Error::Domain(format!("order {k} above complex dimension {}", sc.dim())));
    }
    let n = sc.count(k);
    let state = |i: usize, s: i8| if s > 0 { i } else { n + i };
    let mut p = DMatrix::zeros(2 * n, 2 * n);

    let b_up = incidence_unchecked(sc, k + 1);
    let cofaces = b_up.rows_view();
    let up_weight = if k == 0 { 1.0 } else { 0.5 };
    for i in 0..n {
        for s in [1i8, -1] {
            let from = state(i, s);
            let d = cofaces[i].len();
            if d == 0 {
                p[(from, state(i, s))] += 0.5 * up_weight;
                p[(from, state(i, -s))] += 0.5 * up_weight;
                continue;
            }
            let choices = if k == 0 { k + 1 } else { k + 2 };
            let w = up_weight / (d * choices) as f64;
            for &(t, b_it) in &cofaces[i] {
                for &(j, b_jt) in b_up.column(t) {
                    if k == 0 && j == i {
                        continue;
                    }
                    p[(from, state(j, -(s * b_it) * b_jt))] += w;
                }
            }
        }
    }

    if k >= 1 {
        let b = incidence_unchecked(sc, k);
        let cof = b.rows_view();
        let weights = upper_degree_weights(sc, k);
        for i in 0..n {
            for s in [1i8, -1] {
                let from = state(i, s);
                let faces = b.column(i);
                for &(rho, b_ri) in faces {
                    let total: f64 = cof[rho].iter().map(|&(j, _)| weights[j]).sum();
                    let base = 0.5 / faces.len() as f64;
                    for &(j, b_rj) in &cof[rho] {
                        p[(from, state(j, -(s * b_ri) * b_rj))] += base * weights[j] / total;
                    }
                }
            }
        }
    }
    TransitionMatrix::new(lifted_labels(sc.faces(k)), p, true)
}
