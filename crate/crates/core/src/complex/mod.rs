//! Graphs, oriented clique complexes and signed incidence matrices.

mod graph;
mod incidence;
mod simplicial;

pub use graph::{parse_edge_list, Graph};
pub(crate) use incidence::incidence_unchecked;
pub use incidence::{incidence, lift_operator, SignedIncidence};
pub use simplicial::{clique_complex, OrientedSimplicialComplex};
