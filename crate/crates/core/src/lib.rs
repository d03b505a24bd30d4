//! Exact independent domination on (P5, co-P5)-free graphs, sat-graph
//! gadgets, a hardness reduction, and brute-force oracles.

pub mod decomposition;
pub mod graph;
pub mod hardness;
pub mod oracle;
pub mod patterns;
pub mod satgraph;
pub mod vertex_set;

pub use graph::{Graph, GraphError, WeightedGraph};
pub use vertex_set::VertexSet;
pub mod check;
pub mod cli;
pub mod format;
pub mod generators;
pub mod solver;
