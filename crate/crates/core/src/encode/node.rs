use std::collections::VecDeque;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::feature::{step_channels, DistanceMatrix, EncodingMeta, FeatureMatrix, Subject};
use crate::complex::Graph;
use crate::error::{Error, Result};
use crate::hodge::symmetric_spectrum;
use crate::walk::{node_transition, powers};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RwseMode {
    /// Return probabilities `P^t[i, i]`: one row per node.
    Diag,
    /// Every entry `P^t[i, j]`: one row per ordered pair.
    Full,
}

impl std::str::FromStr for RwseMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "diag" => Ok(Self::Diag),
            "full" => Ok(Self::Full),
            other => Err(Error::Config(format!("unknown RWSE mode {other:?} (expected diag or full)"))),
        }
    }
}

/// Node random-walk structural encoding over steps `1..=T`.
///
/// Isolated nodes are treated as absorbing.
pub fn rwse_node(g: &Graph, t_max: usize, mode: RwseMode) -> Result<FeatureMatrix> {
    let p = node_transition(g, true)?;
    let pw = powers(&p, t_max)?;
    let n = g.n();
    let (rows, subject) = match mode {
        RwseMode::Diag => (n, Subject::Simplices(0)),
        RwseMode::Full => (n * n, Subject::OrderedPairs),
    };
    let values = DMatrix::from_fn(rows, t_max, |r, t| match mode {
        RwseMode::Diag => pw[t][(r, r)],
        RwseMode::Full => pw[t][(r / n, r % n)],
    });
    FeatureMatrix::new(
        subject,
        step_channels("p", t_max),
        values,
        EncodingMeta::new("rwse_node", json!({ "T": t_max, "mode": mode })),
    )
}

/// Laplacian eigenvector positional encoding.
#[derive(Debug, Clone, PartialEq)]
pub struct LapPe {
    /// `n x n_eigen`: eigenvectors of the smallest nonzero eigenvalues,
    /// zero-padded when fewer exist.
    pub features: FeatureMatrix,
    /// Eigenvalues of the selected columns (padding excluded).
    pub selected: Vec<f64>,
    /// Full ascending spectrum of `L_0`.
    pub eigenvalues: Vec<f64>,
    /// Number of eigenvalues at or below the zero threshold.
    pub kernel_dim: usize,
}

/// Eigenvectors of the graph Laplacian past its kernel.
///
/// Each column is sign-fixed so its largest-magnitude entry is positive,
/// ties going to the lowest index.
pub fn lap_pe_node(g: &Graph, n_eigen: usize) -> Result<LapPe> {
    let n = g.n();
    if n_eigen > n {
        return Err(Error::Domain(format!("{n_eigen} eigenvectors requested from {n} nodes")));
    }
    let spec = symmetric_spectrum(&laplacian0(g), None)?;
    let kernel_dim = spec.kernel_dim();
    let chosen: Vec<usize> = (kernel_dim..n).take(n_eigen).collect();
    let mut meta = EncodingMeta::new("lap_pe_node", json!({ "n_eigen": n_eigen }));
    meta.zero_tol = Some(spec.zero_tol);
    if chosen.len() < n_eigen {
        meta.warnings.push(format!(
            "only {} nonzero eigenvalues; {} columns zero-padded",
            chosen.len(),
            n_eigen - chosen.len()
        ));
    }
    let mut values = DMatrix::zeros(n, n_eigen);
    for (c, &idx) in chosen.iter().enumerate() {
        let mut v: DVector<f64> = spec.eigenvectors.column(idx).into_owned();
        fix_sign(&mut v);
        values.set_column(c, &v);
    }
    let features = FeatureMatrix::new(Subject::Simplices(0), step_channels("pe", n_eigen), values, meta)?;
    Ok(LapPe {
        features,
        selected: chosen.iter().map(|&i| spec.eigenvalues[i]).collect(),
        eigenvalues: spec.eigenvalues.clone(),
        kernel_dim,
    })
}

fn fix_sign(v: &mut DVector<f64>) {
    let mut best = 0;
    for i in 1..v.len() {
        // Strictly larger by more than rounding noise wins; otherwise keep
        // the earlier index.
        if v[i].abs() > v[best].abs() + 1e-12 {
            best = i;
        }
    }
    if !v.is_empty() && v[best] < 0.0 {
        v.neg_mut();
    }
}

pub(crate) fn laplacian0(g: &Graph) -> DMatrix<f64> {
    let mut l = DMatrix::zeros(g.n(), g.n());
    for &(u, v) in g.edges() {
        l[(u, v)] -= 1.0;
        l[(v, u)] -= 1.0;
        l[(u, u)] += 1.0;
        l[(v, v)] += 1.0;
    }
    l
}

/// Effective resistance between every pair of nodes.
///
/// `r_uv = L+_uu + L+_vv - 2 L+_uv` with `L+ = (L + J/n)^{-1} - J/n`.
pub fn resistance_distance(g: &Graph) -> Result<FeatureMatrix> {
    if !g.is_connected() {
        return Err(Error::Disconnected { components: g.components() });
    }
    let n = g.n();
    let j = DMatrix::from_element(n, n, 1.0 / n as f64);
    let chol = (laplacian0(g) + &j)
        .cholesky()
        .ok_or_else(|| Error::Contract("shifted Laplacian is not positive definite".into()))?;
    let pinv = chol.inverse() - j;
    let r = DMatrix::from_fn(n, n, |u, v| if u == v { 0.0 } else { pinv[(u, u)] + pinv[(v, v)] - 2.0 * pinv[(u, v)] });
    FeatureMatrix::new(
        Subject::PairMatrix,
        (0..n).map(|v| format!("r{v}")).collect(),
        r,
        EncodingMeta::new("resistance", json!({})),
    )
}

/// Breadth-first shortest-path distances.
pub fn shortest_path_distance(g: &Graph) -> DistanceMatrix {
    let adj = g.adjacency();
    let values = (0..g.n())
        .map(|s| {
            let mut dist = vec![None; g.n()];
            dist[s] = Some(0);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let du = dist[u].expect("visited");
                for &w in &adj[u] {
                    if dist[w].is_none() {
                        dist[w] = Some(du + 1);
                        queue.push_back(w);
                    }
                }
            }
            dist
        })
        .collect();
    DistanceMatrix { values }
}
