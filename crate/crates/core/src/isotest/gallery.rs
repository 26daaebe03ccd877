use crate::complex::{clique_complex, Graph, OrientedSimplicialComplex};
use crate::error::{Error, Result};

/// Names accepted by [`gallery`]; `(n)` marks a size parameter.
pub const GALLERY_NAMES: &[&str] =
    &["cycle(n)", "path(n)", "star(n)", "two_triangles", "rook4x4", "shrikhande", "fig1a", "fig1b", "fig5a", "fig5b"];

/// A named test object: a graph, plus explicit oriented faces when the
/// object must reproduce a specific orientation.
#[derive(Debug, Clone, PartialEq)]
pub struct GalleryObject {
    pub name: String,
    pub graph: Graph,
    explicit: Option<OrientedSimplicialComplex>,
}

impl GalleryObject {
    fn plain(name: &str, graph: Graph) -> Self {
        Self { name: name.into(), graph, explicit: None }
    }

    /// The explicit complex if the object has one, else the clique complex
    /// of the graph up to `max_dim`.
    pub fn complex(&self, max_dim: usize) -> Result<OrientedSimplicialComplex> {
        match &self.explicit {
            Some(sc) => Ok(sc.clone()),
            None => clique_complex(&self.graph, max_dim),
        }
    }

    pub fn has_explicit_complex(&self) -> bool {
        self.explicit.is_some()
    }
}

/// Looks up a gallery object. Sized families accept `cycle(6)`, `cycle:6`
/// or `cycle6`.
pub fn gallery(name: &str) -> Result<GalleryObject> {
    let name = name.trim();
    let sized = |prefix: &str| -> Option<Result<usize>> {
        let rest = name.strip_prefix(prefix)?;
        let arg =
            rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')).or_else(|| rest.strip_prefix(':')).unwrap_or(rest);
        Some(arg.parse::<usize>().map_err(|_| Error::Config(format!("bad size in gallery name {name:?}"))))
    };
    if let Some(n) = sized("cycle") {
        return Ok(GalleryObject::plain(name, cycle(n?)?));
    }
    if let Some(n) = sized("path") {
        return Ok(GalleryObject::plain(name, path(n?)?));
    }
    if let Some(n) = sized("star") {
        return Ok(GalleryObject::plain(name, star(n?)?));
    }
    let obj = match name {
        "two_triangles" => GalleryObject::plain(name, two_triangles()),
        "rook4x4" => GalleryObject::plain(name, rook4x4()),
        "shrikhande" => GalleryObject::plain(name, shrikhande()),
        "fig1a" => GalleryObject::plain(name, fig1(true)),
        "fig1b" => GalleryObject::plain(name, fig1(false)),
        "fig5a" => {
            let sc = fig5a();
            GalleryObject { name: name.into(), graph: sc.graph(), explicit: Some(sc) }
        }
        "fig5b" => {
            let sc = fig5b();
            GalleryObject { name: name.into(), graph: sc.graph(), explicit: Some(sc) }
        }
        other => {
            return Err(Error::Config(format!(
                "unknown gallery object {other:?}; valid names: {}",
                GALLERY_NAMES.join(", ")
            )))
        }
    };
    Ok(obj)
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::Config(format!("cycle needs at least 3 nodes, got {n}")));
    }
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
}

pub fn path(n: usize) -> Result<Graph> {
    if n < 1 {
        return Err(Error::Config("path needs at least 1 node".into()));
    }
    Graph::new(n, (1..n).map(|i| (i - 1, i)))
}

/// Star with centre 0 and leaves `1..=n`.
pub fn star(n: usize) -> Result<Graph> {
    Graph::new(n + 1, (1..=n).map(|i| (0, i)))
}

pub fn two_triangles() -> Graph {
    Graph::new(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).expect("valid")
}

/// The 4x4 rook's graph: node `4 r + c`, adjacent when sharing a row or column.
pub fn rook4x4() -> Graph {
    let mut edges = Vec::new();
    for a in 0..16 {
        for b in a + 1..16 {
            if a / 4 == b / 4 || a % 4 == b % 4 {
                edges.push((a, b));
            }
        }
    }
    Graph::new(16, edges).expect("valid")
}

/// Cayley graph on Z4 x Z4 with connection set {±(1,0), ±(0,1), ±(1,1)}.
pub fn shrikhande() -> Graph {
    let mut edges = Vec::new();
    for a in 0..16usize {
        for b in a + 1..16 {
            let dx = (b / 4 + 4 - a / 4) % 4;
            let dy = (b % 4 + 4 - a % 4) % 4;
            if matches!((dx, dy), (1, 0) | (3, 0) | (0, 1) | (0, 3) | (1, 1) | (3, 3)) {
                edges.push((a, b));
            }
        }
    }
    Graph::new(16, edges).expect("valid")
}

/// Gadget pair on a 4-cycle backbone `0-1-2-3-0`.
///
/// Backbone node `i` is joined to all six nodes of gadget `i` (nodes
/// `4 + 6i .. 10 + 6i`); a gadget is either two triangles (X) or a 6-ring
/// (Y). Variant (a) places the gadgets as X X Y Y around the square,
/// variant (b) as X Y X Y.
pub fn fig1(variant_a: bool) -> Graph {
    const X: [(usize, usize); 6] = [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)];
    const Y: [(usize, usize); 6] = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)];
    let kinds = if variant_a { [X, X, Y, Y] } else { [X, Y, X, Y] };
    let mut edges = vec![(0, 1), (1, 2), (2, 3), (0, 3)];
    for (i, gadget) in kinds.iter().enumerate() {
        let base = 4 + 6 * i;
        edges.extend((0..6).map(|j| (i, base + j)));
        edges.extend(gadget.iter().map(|&(u, v)| (base + u, base + v)));
    }
    Graph::new(28, edges).expect("valid")
}

/// Four nodes a, b, c, d with edges a->b, c->b, c->d, b->d (in that order)
/// and the triangle (c, b, d).
pub fn fig5a() -> OrientedSimplicialComplex {
    OrientedSimplicialComplex::from_faces(vec![
        (0..4).map(|v| vec![v]).collect(),
        vec![vec![0, 1], vec![2, 1], vec![2, 3], vec![1, 3]],
        vec![vec![2, 1, 3]],
    ])
    .expect("valid")
}

/// Five nodes a..e with edges a->b, b->c, d->a, d->c, c->e and no triangles.
pub fn fig5b() -> OrientedSimplicialComplex {
    OrientedSimplicialComplex::from_faces(vec![
        (0..5).map(|v| vec![v]).collect(),
        vec![vec![0, 1], vec![1, 2], vec![3, 0], vec![3, 2], vec![2, 4]],
    ])
    .expect("valid")
}
