//! Graph representations, contraction and instance utilities.

mod contract;
pub mod metis;
mod mutable;
mod ops;
mod static_graph;

pub use contract::{bulk_contract, contract_by_labels};
pub use metis::{load_metis, parse_metis, save_metis, write_metis};
pub use mutable::{EdgeHandle, MutableGraph};
pub use ops::{connected_components, is_connected, kcore, kcore_vertices, min_weighted_degree};
pub use static_graph::{StaticGraph, MAX_TOTAL_WEIGHT};
