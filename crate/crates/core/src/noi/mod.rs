//! Connectivity certificates with bounded priority queues and the exact
//! minimum cut driver built on them.

mod capforest;
mod exact;
mod pq;

pub use capforest::{capforest, capforest_parallel, start_vertex, CapforestRun};
pub use exact::{exact_mincut, ExactOptions, MinCut};
pub use pq::{BoundedPQ, QueueKind, MAX_BUCKET_SLOTS};
