use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An undirected simple graph on nodes `0..n`.
///
/// Edges are stored as `(u, v)` with `u < v`, sorted lexicographically.
/// That order is the edge numbering used by every matrix in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    node_labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    edge_labels: Option<Vec<String>>,
}

impl Graph {
    /// Builds a graph from node count and edge pairs in any orientation.
    ///
    /// Rejects self-loops, duplicate edges and endpoints `>= n`.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut canon = Vec::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::Rejected(format!("self-loop at node {u}")));
            }
            if u >= n || v >= n {
                return Err(Error::Rejected(format!("edge ({u}, {v}) has an endpoint outside 0..{n}")));
            }
            canon.push((u.min(v), u.max(v)));
        }
        canon.sort_unstable();
        if let Some(w) = canon.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Rejected(format!("duplicate edge {:?}", w[0])));
        }
        Ok(Self { n, edges: canon, node_labels: None, edge_labels: None })
    }

    pub fn empty(n: usize) -> Self {
        Self { n, edges: Vec::new(), node_labels: None, edge_labels: None }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Position of edge `{u, v}` in the canonical order.
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_index(u, v).is_some()
    }

    /// Sorted neighbour lists.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.adjacency();
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// Renames node `i` to `perm[i]`. Labels follow their nodes and edges.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        check_permutation(perm, self.n)?;
        let mut g = Graph::new(self.n, self.edges.iter().map(|&(u, v)| (perm[u], perm[v])))?;
        if let Some(labels) = &self.node_labels {
            let mut moved = vec![String::new(); self.n];
            for (i, l) in labels.iter().enumerate() {
                moved[perm[i]] = l.clone();
            }
            g.node_labels = Some(moved);
        }
        if let Some(labels) = &self.edge_labels {
            let mut moved = vec![String::new(); g.m()];
            for (e, &(u, v)) in self.edges.iter().enumerate() {
                let idx = g.edge_index(perm[u], perm[v]).expect("relabelled edge");
                moved[idx] = labels[e].clone();
            }
            g.edge_labels = Some(moved);
        }
        Ok(g)
    }

    /// Disjoint union; `other`'s nodes are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n;
        let edges = self.edges.iter().copied().chain(other.edges.iter().map(|&(u, v)| (u + shift, v + shift)));
        Graph::new(self.n + other.n, edges).expect("union of simple graphs is simple")
    }

    pub fn node_labels(&self) -> Option<&[String]> {
        self.node_labels.as_deref()
    }

    pub fn edge_labels(&self) -> Option<&[String]> {
        self.edge_labels.as_deref()
    }

    pub fn with_node_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::Domain(format!("{} node labels for {} nodes", labels.len(), self.n)));
        }
        self.node_labels = Some(labels);
        Ok(self)
    }

    pub fn with_edge_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.m() {
            return Err(Error::Domain(format!("{} edge labels for {} edges", labels.len(), self.m())));
        }
        self.edge_labels = Some(labels);
        Ok(self)
    }

    /// Serialises in the edge-list format read by [`parse_edge_list`].
    ///
    /// An `n=` header is always written so isolated trailing nodes survive.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n={}\n", self.n);
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

pub(crate) fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    if perm.len() != n {
        return Err(Error::Domain(format!("permutation of length {} for {n} items", perm.len())));
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || std::mem::replace(&mut seen[p], true) {
            return Err(Error::Domain("not a permutation".into()));
        }
    }
    Ok(())
}

/// Parses the edge-list format.
///
/// One `u v` pair of non-negative integers per line; `#` starts a comment;
/// blank lines are ignored; an optional first content line `n=<count>` fixes
/// the node count (otherwise it is one more than the largest index). Pairs
/// listed twice, in either order, are kept once.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut declared_n: Option<usize> = None;
    let mut pairs = Vec::new();
    let mut seen_content = false;
    for (lineno, raw) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("n=") {
            if seen_content {
                return Err(Error::Parse {
                    line: line_no,
                    message: "node-count header must come before any edge".into(),
                });
            }
            let n = rest
                .trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse { line: line_no, message: format!("bad node count {:?}", rest.trim()) })?;
            declared_n = Some(n);
            seen_content = true;
            continue;
        }
        seen_content = true;
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected two node indices, found {:?}", line),
            });
        }
        let mut ends = [0usize; 2];
        for (slot, tok) in ends.iter_mut().zip(&fields) {
            *slot = parse_index(tok, line_no)?;
        }
        let [u, v] = ends;
        if u == v {
            return Err(Error::Rejected(format!("self-loop at node {u} on line {line_no}")));
        }
        pairs.push((u.min(v), u.max(v)));
    }
    pairs.sort_unstable();
    pairs.dedup();
    let inferred = pairs.iter().map(|&(_, v)| v + 1).max().unwrap_or(0);
    let n = match declared_n {
        Some(n) if n < inferred => {
            return Err(Error::Rejected(format!("header declares n={n} but node {} appears", inferred - 1)))
        }
        Some(n) => n,
        None => inferred,
    };
    Graph::new(n, pairs)
}

fn parse_index(tok: &str, line: usize) -> Result<usize> {
    if let Some(stripped) = tok.strip_prefix('-') {
        if !stripped.is_empty() && stripped.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Rejected(format!("negative node index {tok} on line {line}")));
        }
    }
    if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse { line, message: format!("{tok:?} is not a node index") });
    }
    tok.parse::<usize>().map_err(|_| Error::Parse { line, message: format!("node index {tok} out of range") })
}
