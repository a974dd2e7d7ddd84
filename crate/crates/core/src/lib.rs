//! Structure engine for graphs with no induced 4K1, C4 or C6.
//!
//! Vertices are `0..n` internally. Every external format (DIMACS, expression
//! text, JSON reports) uses 1-based vertex ids.

pub mod audit;
pub mod c5;
pub mod c7;
pub mod color;
pub mod cwd;
pub mod decomp;
pub mod detect;
pub mod dimacs;
pub mod generate;
pub mod graph;
pub mod hole;
mod ids;
pub mod pipeline;
pub mod uniform;

pub use graph::{Graph, GraphError, UniformStatus, Vertex, VertexSet};
