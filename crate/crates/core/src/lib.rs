//! Dense subgraphs in G(n, 1/2).
//!
//! The crate bundles four pieces that are meant to be used together:
//!
//! * [`graph`]: seeded G(n, p) generation over bit-packed adjacency rows,
//!   plus edge-count and density queries.
//! * [`greedy`]: the partitioned greedy algorithm (one vertex per cell, each
//!   chosen to maximise edges into the set built so far) and the classical
//!   index-order greedy clique baseline.
//! * [`analysis`]: entropy machinery, the per-step δ schedule, the edge lower
//!   bound, the density integral, the first-moment threshold and the clique
//!   number estimate.
//! * [`oracle`]: exact brute-force ground truth (densest k-subgraph, maximum
//!   clique, dense-subgraph counting) for desk-scale validation.
//!
//! [`experiment`] ties them together into a reproducible Monte Carlo harness.

pub mod analysis;
pub mod error;
pub mod experiment;
pub mod graph;
pub mod greedy;
pub mod oracle;
pub mod seed;

pub use error::{Error, Result};
pub use graph::{Density, Graph, VertexSet};
pub use greedy::{greedy_dense, partition_vertices, plain_greedy_clique, GreedyTrace, Partition};
