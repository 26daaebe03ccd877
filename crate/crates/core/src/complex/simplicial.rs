use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::graph::Graph;
use crate::error::{Error, Result};

/// A finite oriented simplicial complex over vertices `0..n`.
///
/// `faces[k]` lists the k-simplices, each as a vertex tuple in its reference
/// orientation. `faces[0]` is always `[[0], [1], ..., [n-1]]`, so node ids and
/// 0-simplex ids coincide. Positions within `faces[k]` are the simplex ids
/// used by every operator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientedSimplicialComplex {
    faces: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
}

#[derive(Serialize, Deserialize)]
struct ComplexDump {
    dim: usize,
    faces: Vec<Vec<Vec<usize>>>,
}

impl OrientedSimplicialComplex {
    /// Builds a complex from explicit oriented faces.
    ///
    /// `faces[0]` must be `[[0], ..., [n-1]]`. Every simplex must have the
    /// right number of distinct vertices, appear once, and have all its
    /// codimension-one faces present.
    pub fn from_faces(faces: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        if faces.is_empty() {
            return Err(Error::Rejected("a complex needs at least the vertex level".into()));
        }
        for (i, v) in faces[0].iter().enumerate() {
            if v.as_slice() != [i] {
                return Err(Error::Rejected(format!("vertex level must be [[0], [1], ...]; position {i} holds {v:?}")));
            }
        }
        let n = faces[0].len();
        let mut index: Vec<HashMap<Vec<usize>, usize>> = Vec::with_capacity(faces.len());
        for (k, level) in faces.iter().enumerate() {
            let mut map = HashMap::with_capacity(level.len());
            for (pos, simplex) in level.iter().enumerate() {
                if simplex.len() != k + 1 {
                    return Err(Error::Rejected(format!("{simplex:?} listed as a {k}-simplex")));
                }
                if let Some(&v) = simplex.iter().find(|&&v| v >= n) {
                    return Err(Error::Rejected(format!("{simplex:?} uses unknown vertex {v}")));
                }
                let key = sorted(simplex);
                if key.windows(2).any(|w| w[0] == w[1]) {
                    return Err(Error::Rejected(format!("{simplex:?} repeats a vertex")));
                }
                if k > 0 {
                    for omit in 0..=k {
                        let mut face = key.clone();
                        face.remove(omit);
                        if !index[k - 1].contains_key(&face) {
                            return Err(Error::Rejected(format!("face {face:?} of {simplex:?} is missing")));
                        }
                    }
                }
                if map.insert(key, pos).is_some() {
                    return Err(Error::Rejected(format!("{simplex:?} listed twice")));
                }
            }
            index.push(map);
        }
        Ok(Self { faces, index })
    }

    /// Maximum dimension K (number of stored levels minus one).
    pub fn dim(&self) -> usize {
        self.faces.len() - 1
    }

    /// Number of vertices.
    pub fn n_nodes(&self) -> usize {
        self.faces[0].len()
    }

    /// Number of k-simplices; zero above `dim`.
    pub fn count(&self, k: usize) -> usize {
        self.faces.get(k).map_or(0, Vec::len)
    }

    /// Counts for every level `0..=dim`.
    pub fn counts(&self) -> Vec<usize> {
        self.faces.iter().map(Vec::len).collect()
    }

    /// The k-simplices in reference orientation; empty above `dim`.
    pub fn faces(&self, k: usize) -> &[Vec<usize>] {
        self.faces.get(k).map_or(&[], Vec::as_slice)
    }

    /// Id of the simplex with the given vertex set, in any order.
    pub fn index_of(&self, vertices: &[usize]) -> Option<usize> {
        let k = vertices.len().checked_sub(1)?;
        self.index.get(k)?.get(&sorted(vertices)).copied()
    }

    /// Copy with the reference orientation of k-simplex `id` reversed.
    ///
    /// Vertices have a single orientation, so `k = 0` is a domain error.
    pub fn flip_orientation(&self, k: usize, id: usize) -> Result<Self> {
        if k == 0 || k > self.dim() || id >= self.count(k) {
            return Err(Error::Domain(format!("no flippable {k}-simplex with id {id}")));
        }
        let mut out = self.clone();
        out.faces[k][id].swap(0, 1);
        Ok(out)
    }

    /// The 1-skeleton as a [`Graph`].
    pub fn graph(&self) -> Graph {
        let edges = self.faces(1).iter().map(|e| (e[0], e[1]));
        Graph::new(self.n_nodes(), edges).expect("1-skeleton of a valid complex")
    }

    /// Maps complex edge ids to canonical graph edge ids.
    pub fn edge_to_graph_index(&self) -> Vec<usize> {
        let g = self.graph();
        self.faces(1).iter().map(|e| g.edge_index(e[0], e[1]).expect("edge present")).collect()
    }

    /// Renames vertex `i` to `perm[i]`, keeping simplex order and the
    /// vertex order within every tuple.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        super::graph::check_permutation(perm, self.n_nodes())?;
        let mut faces = self.faces.clone();
        for level in faces.iter_mut().skip(1) {
            for s in level.iter_mut() {
                for v in s.iter_mut() {
                    *v = perm[*v];
                }
            }
        }
        Self::from_faces(faces)
    }

    /// JSON document `{"dim": K, "faces": [...]}`.
    pub fn to_json(&self) -> String {
        let dump = ComplexDump { dim: self.dim(), faces: self.faces.clone() };
        serde_json::to_string_pretty(&dump).expect("serialisable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let dump: ComplexDump =
            serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), message: e.to_string() })?;
        if dump.faces.len() != dump.dim + 1 {
            return Err(Error::Rejected(format!("dim {} but {} face levels", dump.dim, dump.faces.len())));
        }
        Self::from_faces(dump.faces)
    }
}

fn sorted(v: &[usize]) -> Vec<usize> {
    let mut s = v.to_vec();
    s.sort_unstable();
    s
}

/// Clique complex of `g` truncated at dimension `max_dim`.
///
/// Every (k+1)-clique becomes a k-simplex stored in ascending vertex order;
/// each level is sorted lexicographically, so `faces(1)` matches
/// [`Graph::edges`].
pub fn clique_complex(g: &Graph, max_dim: usize) -> Result<OrientedSimplicialComplex> {
    if max_dim < 1 {
        return Err(Error::Domain("clique complex needs max_dim >= 1".into()));
    }
    let adj = g.adjacency();
    let mut faces: Vec<Vec<Vec<usize>>> = vec![(0..g.n()).map(|v| vec![v]).collect()];
    faces.push(g.edges().iter().map(|&(u, v)| vec![u, v]).collect());
    for _ in 2..=max_dim {
        let prev = faces.last().expect("nonempty");
        let mut next = Vec::new();
        for c in prev {
            let last = *c.last().expect("nonempty simplex");
            for &w in adj[last].iter().filter(|&&w| w > last) {
                if c.iter().all(|&u| adj[u].binary_search(&w).is_ok()) {
                    let mut s = c.clone();
                    s.push(w);
                    next.push(s);
                }
            }
        }
        faces.push(next);
    }
    let index = faces.iter().map(|level| level.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect()).collect();
    Ok(OrientedSimplicialComplex { faces, index })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_counts() {
        let g = Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(clique_complex(&g, 2).unwrap().counts(), vec![3, 3, 1]);
    }

    #[test]
    fn triangle_free_has_no_two_simplices() {
        let g = Graph::new(6, (0..6).map(|i| (i, (i + 1) % 6))).unwrap();
        assert_eq!(clique_complex(&g, 2).unwrap().count(2), 0);
    }

    #[test]
    fn complete_graph_levels_are_binomials() {
        let n = 6;
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        let g = Graph::new(n, edges).unwrap();
        assert_eq!(clique_complex(&g, 4).unwrap().counts(), vec![6, 15, 20, 15, 6]);
    }

    #[test]
    fn explicit_faces_are_validated() {
        let v = |n: usize| (0..n).map(|i| vec![i]).collect::<Vec<_>>();
        assert!(OrientedSimplicialComplex::from_faces(vec![v(3), vec![vec![0, 1]], vec![vec![0, 1, 2]]]).is_err());
        assert!(OrientedSimplicialComplex::from_faces(vec![v(2), vec![vec![0, 1], vec![1, 0]]]).is_err());
        assert!(OrientedSimplicialComplex::from_faces(vec![vec![vec![1]]]).is_err());
        let sc = OrientedSimplicialComplex::from_faces(vec![v(2), vec![vec![1, 0]]]).unwrap();
        assert_eq!(sc.index_of(&[0, 1]), Some(0));
        assert_eq!(sc.faces(1)[0], vec![1, 0]);
    }

    #[test]
    fn json_round_trip() {
        let g = Graph::new(4, [(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        let sc = clique_complex(&g, 2).unwrap().flip_orientation(1, 2).unwrap();
        let back = OrientedSimplicialComplex::from_json(&sc.to_json()).unwrap();
        assert_eq!(back, sc);
    }
}
