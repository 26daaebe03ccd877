//! # hodgewalk
//!
//! Random walks and Hodge Laplacians on the simplicial complexes of graphs.
//!
//! The crate is organised the way a computation flows:
//!
//! * [`complex`] parses graphs, lifts them to oriented clique complexes and
//!   builds signed incidence (boundary) matrices.
//! * [`hodge`] assembles standard and normalized Hodge Laplacians, their
//!   spectra, Betti numbers, Hodge decompositions, spectral kernels and exact
//!   integer characteristic polynomials.
//! * [`walk`] builds every transition matrix used downstream: the node walk,
//!   the lifted (oriented) edge and k-simplex walks, the 1-down and 1-up edge
//!   walks and the inter-order block walk, plus a seeded Monte Carlo simulator.
//! * [`encode`] turns those operators into feature matrices (RWSE, EdgeRWSE,
//!   Hodge1Lap, k-RWSE, Inter-RWSE, CellularRWSE, resistance and shortest-path
//!   distances, Laplacian eigenvector PEs, cycle labels).
//! * [`isotest`] contains the graph gallery, 1-WL and 2-FWL colour
//!   refinement, exact isospectrality checks and the distinguishability
//!   report.
//!
//! ```
//! use hodgewalk::complex::{clique_complex, parse_edge_list};
//! use hodgewalk::hodge::betti;
//!
//! let g = parse_edge_list("0 1\n1 2\n2 3\n3 0\n").unwrap();
//! let sc = clique_complex(&g, 2).unwrap();
//! assert_eq!(betti(&sc, 0).unwrap(), 1);
//! assert_eq!(betti(&sc, 1).unwrap(), 1);
//! ```

pub mod complex;
pub mod encode;
pub mod error;
pub mod fmt;
pub mod hodge;
pub mod isotest;
pub mod walk;

pub use error::{Error, Result};
