//! Global minimum cuts in weighted undirected graphs.
//!
//! The crate bundles an inexact cluster-contraction heuristic, an exact
//! certificate-based solver, a builder for the cactus of all minimum cuts,
//! and a fully dynamic maintainer driven by push-relabel flows.

pub mod cactus;
pub mod dynamic;
pub mod error;
pub mod flow;
pub mod generators;
pub mod graph;
pub mod heuristic;
pub mod noi;
pub mod oracle;
pub mod union_find;

pub use cactus::{
    find_all_mincuts, most_balanced_cut, AllCutsOptions, BalancedCut, CactusEdge, CactusGraph, EdgeKind, EdgeStrategy,
};
pub use dynamic::{DynamicOptions, DynamicState};
pub use error::{Error, Result};
pub use flow::{FlowNetwork, FlowOptions, FlowResult};
pub use graph::{MutableGraph, StaticGraph};
pub use heuristic::{viecut, Clustering, HeuristicResult, VieCutOptions};
pub use noi::{exact_mincut, ExactOptions, MinCut, QueueKind};
pub use union_find::{ConcurrentUnionFind, UnionFind};

/// Edge and cut weights.
pub type Weight = u64;

/// Sentinel cut value for graphs without any cut (a single vertex).
pub const INFINITE_CUT: Weight = Weight::MAX;
