//! Tree decompositions and the bounded-treewidth DP.

pub mod decomposition;
pub mod dp;

pub use decomposition::{
    build_nice_decomposition, decomposition_from_order, elimination_width, exact_treewidth,
    min_fill_order, treewidth_estimate, NiceDecomposition, NiceNode, NodeKind, TreeDecomposition,
};
pub use dp::{
    dp_edge, dp_edge_with_stats, dp_vertex, dp_vertex_with_stats, solve_treewidth, DpStats,
};
