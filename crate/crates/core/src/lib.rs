//! S-packing edge-colorings of subcubic graphs.
//!
//! The crate computes, verifies and audits edge partitions in which class `i`
//! only contains edges at pairwise line-graph distance at least `s_i + 1`.
//! Its centre is the two-matching construction for `(1^2,2^4)`-colorings:
//! find two disjoint matchings whose union is locally optimal under a family
//! of switching moves, build the conflict graph on the leftover edges, and
//! four-color it.
//!
//! Module map:
//!
//! * [`graph`]: representation, ingestion (edge lists, graph6), generators,
//!   edge distance.
//! * [`matching`]: matching pairs, the lexicographic objective, the move
//!   neighborhood and the searches over it.
//! * [`conflict`]: the conflict graph on leftover edges and its exact coloring.
//! * [`packing`]: packing sequences, verification, the exact solver and the
//!   constructive pipeline.
//! * [`audit`]: leftover component classification, structural predicates and
//!   the charge ledger.
//! * [`cli`]: the `sepack` command-line front end.

pub mod audit;
pub mod cli;
pub mod conflict;
mod error;
pub mod graph;
pub mod matching;
pub mod packing;

pub use error::{Error, Result};
pub use graph::{EdgeId, Graph, VertexId};
