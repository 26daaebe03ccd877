use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::transition::{simplex_label, TransitionMatrix};
use crate::complex::{incidence_unchecked, Graph, OrientedSimplicialComplex};
use crate::error::{Error, Result};

/// The simple random walk `P = D^{-1} A` on nodes.
///
/// Isolated nodes are a domain error unless `allow_absorbing` is set, in
/// which case they get a self-loop.
pub fn node_transition(g: &Graph, allow_absorbing: bool) -> Result<TransitionMatrix> {
    let n = g.n();
    let adj = g.adjacency();
    let mut p = DMatrix::zeros(n, n);
    for (u, nbrs) in adj.iter().enumerate() {
        if nbrs.is_empty() {
            if !allow_absorbing {
                return Err(Error::Domain(format!("node {u} is isolated")));
            }
            p[(u, u)] = 1.0;
            continue;
        }
        let w = 1.0 / nbrs.len() as f64;
        for &v in nbrs {
            p[(u, v)] = w;
        }
    }
    TransitionMatrix::new((0..n).map(|i| i.to_string()).collect(), p, false)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DownVariant {
    /// Pick an endpoint with probability 1/2, then one of its other edges.
    Directed,
    /// Uniform over all edges sharing a node.
    Undirected,
}

impl std::str::FromStr for DownVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "directed" => Ok(Self::Directed),
            "undirected" => Ok(Self::Undirected),
            other => {
                Err(Error::Config(format!("unknown down-walk variant {other:?} (expected directed or undirected)")))
            }
        }
    }
}

/// 1-down edge walk over the canonical edges of `g`.
///
/// Directed: when the chosen endpoint has no other edge the walk stays put.
/// Undirected: an edge without 1-down neighbours gets a self-loop.
pub fn down_transition(g: &Graph, variant: DownVariant) -> Result<TransitionMatrix> {
    let m = g.m();
    if m == 0 {
        return Err(Error::Domain("edge walk on a graph without edges".into()));
    }
    let mut incident = vec![Vec::new(); g.n()];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        incident[u].push(e);
        incident[v].push(e);
    }
    let mut p = DMatrix::zeros(m, m);
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        match variant {
            DownVariant::Directed => {
                for x in [u, v] {
                    let others: Vec<usize> = incident[x].iter().copied().filter(|&f| f != e).collect();
                    if others.is_empty() {
                        p[(e, e)] += 0.5;
                    } else {
                        let w = 0.5 / others.len() as f64;
                        for f in others {
                            p[(e, f)] += w;
                        }
                    }
                }
            }
            DownVariant::Undirected => {
                let nbrs: Vec<usize> = incident[u].iter().chain(&incident[v]).copied().filter(|&f| f != e).collect();
                if nbrs.is_empty() {
                    p[(e, e)] = 1.0;
                } else {
                    let w = 1.0 / nbrs.len() as f64;
                    for f in nbrs {
                        p[(e, f)] += w;
                    }
                }
            }
        }
    }
    let labels = g.edges().iter().map(|&(u, v)| simplex_label(&[u, v])).collect();
    TransitionMatrix::new(labels, p, false)
}

/// Number of 1-down neighbours of each canonical edge of `g`.
pub fn down_degrees(g: &Graph) -> Vec<usize> {
    let deg = g.degrees();
    g.edges().iter().map(|&(u, v)| deg[u] + deg[v] - 2).collect()
}

/// 1-up walk on k-simplices, orientation ignored.
///
/// From a k-simplex choose a containing (k+1)-simplex uniformly, then one of
/// its other k+1 faces uniformly. Simplices with no coface keep a self-loop,
/// which is every simplex when `k = sc.dim()`.
pub fn up_transition(sc: &OrientedSimplicialComplex, k: usize) -> Result<TransitionMatrix> {
    if k > sc.dim() {
        return Err(Error::Domain(format!("order {k} above complex dimension {}", sc.dim())));
    }
    let n = sc.count(k);
    let b = incidence_unchecked(sc, k + 1);
    let cofaces = b.rows_view();
    let mut p = DMatrix::zeros(n, n);
    for i in 0..n {
        let d = cofaces[i].len();
        if d == 0 {
            p[(i, i)] = 1.0;
            continue;
        }
        for &(t, _) in &cofaces[i] {
            for &(j, _) in b.column(t).iter().filter(|&&(j, _)| j != i) {
                p[(i, j)] += 1.0 / (d * (k + 1)) as f64;
            }
        }
    }
    let labels = sc.faces(k).iter().map(|f| simplex_label(f)).collect();
    TransitionMatrix::new(labels, p, false)
}
