//! Transition matrices for node, edge and k-simplex random walks, the
//! inter-order block walk, and a seeded Monte Carlo simulator.

mod inter;
mod lifted;
mod simulate;
mod transition;
mod unoriented;

pub use inter::{inter_adjacency, inter_transition, InterOrderAdjacency};
pub use lifted::{k_transition, lifted_edge_transition};
pub use simulate::{simulate, Simulation, CHUNK_TRIALS, RNG_NAME};
pub(crate) use transition::merged_diag;
pub use transition::{
    cesaro_return, power_diag, powers, return_probabilities, simplex_label, TransitionMatrix, STOCHASTIC_TOL,
};
pub use unoriented::{down_degrees, down_transition, node_transition, up_transition, DownVariant};
