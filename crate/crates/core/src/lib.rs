//! Partially dynamic approximation of diameter, radius and eccentricities.
//!
//! The estimators sit on top of exact truncated Even-Shiloach trees
//! ([`sssp`]) and are lifted to unconditional guarantees by a grid of
//! parameter guesses ([`grid`]). The [`adversary`] module builds the hard
//! instances used to stress them.

pub mod adversary;
pub mod bfs;
pub mod bootstrap;
pub mod centers;
pub mod det;
pub mod dist;
pub mod estimate;
pub mod graph;
pub mod grid;
pub mod oracle;
pub mod rand_est;
pub mod report;
pub mod scc;
pub mod sssp;
pub mod stream;
pub mod verify;
pub mod workload;

pub use dist::Dist;
pub use estimate::{Estimate, Mode, Param};
pub use graph::{Direction, DynamicGraph, EdgeUpdate, GraphError, UpdateKind, VertexId};
