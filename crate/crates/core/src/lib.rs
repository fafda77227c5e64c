//! Decision procedures and exact solvers for graphs whose total domination
//! number is twice their domination number.
//!
//! [`characterize::classify_main`] decides the identity in polynomial time
//! on graphs without induced `C6`, `H1` or `H2` (chordal graphs included);
//! [`domination`] holds the exponential oracles used to verify it.

pub mod characterize;
pub mod domination;
pub mod forbidden;
pub mod generators;
pub mod graph;
pub mod io;
pub mod set;
pub mod structure;
pub mod sweep;

pub use characterize::{
    classify_block_graph, classify_c3c6_free, classify_main, classify_tree, ClassificationReport,
    ClassifyError, ClassifyOptions, Fallback, Method, Verdict,
};
pub use graph::{Graph, GraphBuilder, GraphError, Vertex};
pub use set::VertexSet;
