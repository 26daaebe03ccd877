use std::collections::{BTreeSet, VecDeque};

use nalgebra::DMatrix;
use serde_json::json;

use super::feature::{step_channels, EncodingMeta, FeatureMatrix, Subject};
use crate::complex::Graph;
use crate::error::{Error, Result};
use crate::walk::{power_diag, TransitionMatrix};

/// A minimum cycle basis of `g`, each cycle as a sorted list of edge ids.
///
/// Horton's construction: candidate cycles close a shortest-path tree edge
/// pair through one extra edge; candidates are scanned by length and kept
/// when independent over GF(2). Cycles come out in non-decreasing length.
pub fn minimum_cycle_basis(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let m = g.m();
    let rank = m + g.components().len() - n;
    if rank == 0 {
        return Vec::new();
    }
    let adj = g.adjacency();
    let mut candidates: BTreeSet<(usize, Vec<usize>)> = BTreeSet::new();
    for root in 0..n {
        let parent = bfs_parents(&adj, root);
        let path = |mut v: usize| {
            let mut nodes = vec![v];
            while let Some(p) = parent[v] {
                nodes.push(p);
                v = p;
            }
            nodes
        };
        for &(x, y) in g.edges() {
            if parent[x].is_none() && x != root || parent[y].is_none() && y != root {
                continue;
            }
            if parent[x] == Some(y) || parent[y] == Some(x) {
                continue;
            }
            let px = path(x);
            let py = path(y);
            // Paths must meet only at the root.
            let sx: BTreeSet<usize> = px.iter().copied().collect();
            if py.iter().filter(|v| sx.contains(v)).count() != 1 {
                continue;
            }
            let mut edges: Vec<usize> =
                px.windows(2).chain(py.windows(2)).map(|w| g.edge_index(w[0], w[1]).expect("tree edge")).collect();
            edges.push(g.edge_index(x, y).expect("edge"));
            edges.sort_unstable();
            candidates.insert((edges.len(), edges));
        }
    }

    let words = m.div_ceil(64);
    let mut pivots: Vec<(usize, Vec<u64>)> = Vec::new();
    let mut basis = Vec::new();
    for (_, cycle) in candidates {
        let v = reduce(bitset(&cycle, words), &pivots);
        if let Some(bit) = first_bit(&v) {
            pivots.push((bit, v));
            basis.push(cycle);
            if basis.len() == rank {
                break;
            }
        }
    }
    basis
}

/// Relevant cycles of length at most `max_len`: those not expressible over
/// GF(2) by strictly shorter cycles, i.e. the union of all minimum cycle
/// bases (restricted by length). Unlike a single basis this set does not
/// depend on node labels.
pub fn relevant_cycles(g: &Graph, max_len: usize) -> Vec<Vec<usize>> {
    let words = g.m().div_ceil(64).max(1);
    let mut by_len: Vec<Vec<Vec<usize>>> = vec![Vec::new(); max_len + 1];
    for c in short_cycles(g, max_len) {
        by_len[c.len()].push(c);
    }
    let mut pivots: Vec<(usize, Vec<u64>)> = Vec::new();
    let mut out = Vec::new();
    for level in by_len {
        // Test each cycle against shorter ones only, then admit the level.
        let mut admitted = Vec::new();
        for cycle in level {
            let v = reduce(bitset(&cycle, words), &pivots);
            if first_bit(&v).is_some() {
                admitted.push(bitset(&cycle, words));
                out.push(cycle);
            }
        }
        for v in admitted {
            let v = reduce(v, &pivots);
            if let Some(bit) = first_bit(&v) {
                pivots.push((bit, v));
            }
        }
    }
    out
}

/// Every simple cycle with at most `max_len` edges, as sorted edge ids.
fn short_cycles(g: &Graph, max_len: usize) -> BTreeSet<Vec<usize>> {
    fn extend(g: &Graph, adj: &[Vec<usize>], path: &mut Vec<usize>, max_len: usize, found: &mut BTreeSet<Vec<usize>>) {
        let (start, last) = (path[0], *path.last().expect("nonempty"));
        for &w in &adj[last] {
            if w == start && path.len() >= 3 {
                let mut edges: Vec<usize> = path
                    .windows(2)
                    .map(|p| g.edge_index(p[0], p[1]).expect("edge"))
                    .chain([g.edge_index(last, start).expect("edge")])
                    .collect();
                edges.sort_unstable();
                found.insert(edges);
            } else if w > start && path.len() < max_len && !path.contains(&w) {
                path.push(w);
                extend(g, adj, path, max_len, found);
                path.pop();
            }
        }
    }
    let adj = g.adjacency();
    let mut found = BTreeSet::new();
    for s in 0..g.n() {
        extend(g, &adj, &mut vec![s], max_len, &mut found);
    }
    found
}

fn bitset(edges: &[usize], words: usize) -> Vec<u64> {
    let mut v = vec![0u64; words];
    for &e in edges {
        v[e / 64] ^= 1 << (e % 64);
    }
    v
}

fn reduce(mut v: Vec<u64>, pivots: &[(usize, Vec<u64>)]) -> Vec<u64> {
    for (bit, row) in pivots {
        if v[bit / 64] >> (bit % 64) & 1 == 1 {
            for (a, b) in v.iter_mut().zip(row) {
                *a ^= b;
            }
        }
    }
    v
}

fn first_bit(v: &[u64]) -> Option<usize> {
    v.iter().enumerate().find(|(_, w)| **w != 0).map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

fn bfs_parents(adj: &[Vec<usize>], root: usize) -> Vec<Option<usize>> {
    let mut parent = vec![None; adj.len()];
    let mut seen = vec![false; adj.len()];
    seen[root] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        for &w in &adj[u] {
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some(u);
                queue.push_back(w);
            }
        }
    }
    parent
}

/// Edge walk over node-sharing and ring-sharing edges.
///
/// Rings are the [`relevant_cycles`] of length at most `max_ring`; when the
/// minimum cycle basis is unique these are exactly its short cycles.
/// Each step moves uniformly to an edge that shares a node or a ring with the
/// current edge; an edge with no such neighbour stays put.
pub fn cellular_transition(g: &Graph, max_ring: usize) -> Result<TransitionMatrix> {
    if max_ring < 3 {
        return Err(Error::Domain(format!("max_ring must be at least 3, got {max_ring}")));
    }
    let m = g.m();
    if m == 0 {
        return Err(Error::Domain("edge walk on a graph without edges".into()));
    }
    let mut nbrs: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m];
    let mut incident = vec![Vec::new(); g.n()];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        incident[u].push(e);
        incident[v].push(e);
    }
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        nbrs[e].extend(incident[u].iter().chain(&incident[v]).copied().filter(|&f| f != e));
    }
    for ring in relevant_cycles(g, max_ring) {
        for &e in &ring {
            nbrs[e].extend(ring.iter().copied().filter(|&f| f != e));
        }
    }
    let mut p = DMatrix::zeros(m, m);
    for (e, set) in nbrs.iter().enumerate() {
        if set.is_empty() {
            p[(e, e)] = 1.0;
        } else {
            for &f in set {
                p[(e, f)] = 1.0 / set.len() as f64;
            }
        }
    }
    let labels = g.edges().iter().map(|&(u, v)| format!("{u}-{v}")).collect();
    TransitionMatrix::new(labels, p, false)
}

/// Return probabilities of [`cellular_transition`] over steps `1..=T`.
pub fn cellular_rwse(g: &Graph, t_max: usize, max_ring: usize) -> Result<FeatureMatrix> {
    let p = cellular_transition(g, max_ring)?;
    let diags = power_diag(&p, t_max)?;
    let values = DMatrix::from_fn(g.m(), t_max, |i, t| diags[t][i]);
    FeatureMatrix::new(
        Subject::Simplices(1),
        step_channels("p", t_max),
        values,
        EncodingMeta::new("cellular_rwse", json!({ "T": t_max, "max_ring": max_ring })),
    )
}
