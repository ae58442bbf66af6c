//! Structural classification of the underlying graph.

use serde::Serialize;

use crate::cographs::build_cotree;
use crate::graph::{complete_bipartite_sides, is_complete, is_edgeless};
use crate::model::Instance;
use crate::split::split_partition;
use crate::treewidth::treewidth_estimate;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClassReport {
    pub edgeless: bool,
    pub complete: bool,
    pub complete_bipartite: bool,
    pub split: bool,
    pub cograph: bool,
    /// Upper bound on the treewidth.
    pub treewidth: usize,
    /// Whether `treewidth` is exact.
    pub treewidth_exact: bool,
}

pub fn classify_instance(inst: &Instance) -> ClassReport {
    let (treewidth, treewidth_exact) = treewidth_estimate(inst);
    ClassReport {
        edgeless: is_edgeless(inst),
        complete: is_complete(inst),
        complete_bipartite: complete_bipartite_sides(inst).is_some(),
        split: split_partition(inst).is_ok(),
        cograph: build_cotree(inst).is_ok(),
        treewidth,
        treewidth_exact,
    }
}
