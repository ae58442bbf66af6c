//! Cographs: cotrees, the cotree DP, and the complete / complete bipartite
//! and edge-coloring special cases.

mod complete;
mod cotree;
mod dp;
mod edges;

pub use complete::{solve_complete_bipartite, solve_complete_graph, SIDE_ENUMERATION_LIMIT};
pub use cotree::{build_cotree, Cotree, CotreeNode};
pub use dp::{dp_cograph, dp_cograph_with_stats, CographStats};
pub use edges::solve_cograph_edges;

pub(crate) use edges::for_each_edge_coloring;
