//! Positional and structural encodings as feature matrices.
//!
//! Every encoding returns raw numbers; no learned embedding is applied.

mod cellular;
mod feature;
mod hodge1lap;
mod node;
mod walks;

pub use cellular::{cellular_rwse, cellular_transition, minimum_cycle_basis, relevant_cycles};
pub use feature::{same_row_multiset, sorted_rows, DistanceMatrix, EncodingMeta, FeatureMatrix, Subject};
pub use hodge1lap::{
    detect_cycles, hodge1lap, kernel_abs_marker, proj_subspaces, subspace_abs_markers, CycleLabels, CycleParams,
    Hodge1LapMode, Hodge1LapParams, Preimage,
};
pub use node::{lap_pe_node, resistance_distance, rwse_node, shortest_path_distance, LapPe, RwseMode};
pub use walks::{edge_rwse, edge_walk, inter_rwse, k_rwse, EdgeWalk};
