use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::feature::{step_channels, EncodingMeta, FeatureMatrix, Subject};
use crate::complex::OrientedSimplicialComplex;
use crate::error::{Error, Result};
use crate::walk::{
    down_transition, inter_adjacency, inter_transition, k_transition, lifted_edge_transition, merged_diag, power_diag,
    powers, up_transition, DownVariant, TransitionMatrix,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeWalk {
    /// Lifted oriented-edge walk, merged over orientation.
    Full,
    /// Directed 1-down walk.
    Directed,
    /// Undirected 1-down walk.
    Undirected,
    /// 1-up walk through triangles.
    Up,
}

impl std::str::FromStr for EdgeWalk {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(Self::Full),
            "directed" => Ok(Self::Directed),
            "undirected" => Ok(Self::Undirected),
            "up" => Ok(Self::Up),
            other => {
                Err(Error::Config(format!("unknown edge walk {other:?} (expected full, directed, undirected or up)")))
            }
        }
    }
}

impl EdgeWalk {
    pub fn name(self) -> &'static str {
        match self {
            Self::Full => "full",
            Self::Directed => "directed",
            Self::Undirected => "undirected",
            Self::Up => "up",
        }
    }
}

/// Transition matrix of an edge walk, with states in the complex's edge order.
pub fn edge_walk(sc: &OrientedSimplicialComplex, variant: EdgeWalk) -> Result<TransitionMatrix> {
    match variant {
        EdgeWalk::Full => lifted_edge_transition(sc),
        EdgeWalk::Up => up_transition(sc, 1),
        EdgeWalk::Directed | EdgeWalk::Undirected => {
            let dv = if variant == EdgeWalk::Directed { DownVariant::Directed } else { DownVariant::Undirected };
            let p = down_transition(&sc.graph(), dv)?;
            // Reorder canonical graph edges into the complex's edge order.
            let map = sc.edge_to_graph_index();
            let m = DMatrix::from_fn(map.len(), map.len(), |i, j| p.matrix()[(map[i], map[j])]);
            let labels = map.iter().map(|&i| p.states()[i].clone()).collect();
            TransitionMatrix::new(labels, m, false)
        }
    }
}

/// Edge return-probability encoding over steps `1..=T`.
///
/// With `with_row_stats`, channels `var1..varT` hold the variance of each
/// edge's row of the (merged) t-step matrix.
pub fn edge_rwse(
    sc: &OrientedSimplicialComplex,
    variant: EdgeWalk,
    t_max: usize,
    with_row_stats: bool,
) -> Result<FeatureMatrix> {
    let p = edge_walk(sc, variant)?;
    let meta = EncodingMeta::new("edge_rwse", json!({ "variant": variant, "T": t_max, "row_stats": with_row_stats }));
    return_features(&p, t_max, with_row_stats, Subject::Simplices(1), meta)
}

fn return_features(
    p: &TransitionMatrix,
    t_max: usize,
    with_row_stats: bool,
    subject: Subject,
    meta: EncodingMeta,
) -> Result<FeatureMatrix> {
    let pw = powers(p, t_max)?;
    let n = p.n_base();
    let width = if with_row_stats { 2 * t_max } else { t_max };
    let mut values = DMatrix::zeros(n, width);
    for (t, pt) in pw.iter().enumerate() {
        values.set_column(t, &merged_diag(p, pt));
        if with_row_stats {
            for i in 0..n {
                let row: Vec<f64> =
                    (0..n).map(|j| if p.is_lifted() { pt[(i, j)] + pt[(i, n + j)] } else { pt[(i, j)] }).collect();
                let mean = row.iter().sum::<f64>() / n as f64;
                let var = row.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n as f64;
                values[(i, t_max + t)] = var;
            }
        }
    }
    let mut channels = step_channels("p", t_max);
    if with_row_stats {
        channels.extend(step_channels("var", t_max));
    }
    FeatureMatrix::new(subject, channels, values, meta)
}

/// Orientation-merged return probabilities of the lifted k-simplex walk.
pub fn k_rwse(sc: &OrientedSimplicialComplex, k: usize, t_max: usize) -> Result<FeatureMatrix> {
    let p = k_transition(sc, k)?;
    let meta = EncodingMeta::new("k_rwse", json!({ "k": k, "T": t_max }));
    return_features(&p, t_max, false, Subject::Simplices(k), meta)
}

/// Return probabilities of the inter-order walk on all simplices up to `K`.
pub fn inter_rwse(sc: &OrientedSimplicialComplex, max_order: usize, t_max: usize) -> Result<FeatureMatrix> {
    let offsets = inter_adjacency(sc, max_order)?.offsets;
    let p = inter_transition(sc, max_order)?;
    let diags = power_diag(&p, t_max)?;
    let values = DMatrix::from_fn(p.n_states(), t_max, |i, t| diags[t][i]);
    FeatureMatrix::new(
        Subject::MultiOrder { offsets },
        step_channels("p", t_max),
        values,
        EncodingMeta::new("inter_rwse", json!({ "K": max_order, "T": t_max })),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{clique_complex, Graph};

    fn path3() -> OrientedSimplicialComplex {
        clique_complex(&Graph::new(3, [(0, 1), (1, 2)]).unwrap(), 2).unwrap()
    }

    #[test]
    fn path_down_walks() {
        let d = edge_rwse(&path3(), EdgeWalk::Directed, 2, false).unwrap();
        assert_eq!(d.values, DMatrix::from_element(2, 2, 0.5));
        let u = edge_rwse(&path3(), EdgeWalk::Undirected, 2, false).unwrap();
        assert_eq!(u.values, DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 0.0, 1.0]));
    }

    #[test]
    fn row_stats_channels() {
        let u = edge_rwse(&path3(), EdgeWalk::Undirected, 2, true).unwrap();
        assert_eq!(u.channels, vec!["p1", "p2", "var1", "var2"]);
        // Rows are permutations of (0, 1): variance 1/4.
        assert!(u.values.columns(2, 2).iter().all(|&v| (v - 0.25).abs() < 1e-15));
    }

    #[test]
    fn k1_matches_full_edge_rwse() {
        let g = Graph::new(4, [(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        let sc = clique_complex(&g, 2).unwrap();
        assert_eq!(k_rwse(&sc, 1, 4).unwrap().values, edge_rwse(&sc, EdgeWalk::Full, 4, false).unwrap().values);
    }

    #[test]
    fn single_edge_inter_rwse() {
        let sc = clique_complex(&Graph::new(2, [(0, 1)]).unwrap(), 1).unwrap();
        let f = inter_rwse(&sc, 1, 1).unwrap();
        // Node rows of |A| are [1, 1, 1]; the edge row is [1, 1, 2].
        let diag: Vec<f64> = f.values.column(0).iter().copied().collect();
        assert!((diag[0] - 1.0 / 3.0).abs() < 1e-15 && (diag[1] - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(diag[2], 0.5);
    }
}
