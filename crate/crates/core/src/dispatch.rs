//! Named solvers and automatic selection of the most specific applicable one.

use std::fmt;
use std::str::FromStr;

use crate::basic::{solve_components_k2, solve_isolated_k_fixed, solve_isolated_unit};
use crate::classify::{classify_instance, ClassReport};
use crate::cographs::{
    build_cotree, dp_cograph, solve_cograph_edges, solve_complete_bipartite, solve_complete_graph,
};
use crate::error::{Error, Result};
use crate::graph::complete_bipartite_sides;
use crate::model::{Instance, Mode, Objective, SolveOutcome};
use crate::oracle::brute_force_solve;
use crate::split::{solve_split_edges, solve_split_k_fixed, solve_split_singular};
use crate::treewidth::{build_nice_decomposition, dp_edge, dp_vertex, TreeDecomposition};

/// Width above which automatic selection prefers the oracle when it is in range.
pub const AUTO_TREEWIDTH_LIMIT: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SolverKind {
    Oracle,
    ComponentsK2,
    IsolatedUnit,
    IsolatedKFixed,
    Treewidth,
    Cograph,
    Complete,
    CompleteBipartite,
    SplitKFixed,
    SplitSingular,
    TreewidthEdge,
    CographEdge,
    SplitEdge,
}

impl SolverKind {
    pub const ALL: [SolverKind; 13] = [
        SolverKind::Oracle,
        SolverKind::ComponentsK2,
        SolverKind::IsolatedUnit,
        SolverKind::IsolatedKFixed,
        SolverKind::Treewidth,
        SolverKind::Cograph,
        SolverKind::Complete,
        SolverKind::CompleteBipartite,
        SolverKind::SplitKFixed,
        SolverKind::SplitSingular,
        SolverKind::TreewidthEdge,
        SolverKind::CographEdge,
        SolverKind::SplitEdge,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SolverKind::Oracle => "oracle",
            SolverKind::ComponentsK2 => "components-k2",
            SolverKind::IsolatedUnit => "isolated-unit",
            SolverKind::IsolatedKFixed => "isolated-kfixed",
            SolverKind::Treewidth => "treewidth",
            SolverKind::Cograph => "cograph",
            SolverKind::Complete => "complete",
            SolverKind::CompleteBipartite => "complete-bipartite",
            SolverKind::SplitKFixed => "split-kfixed",
            SolverKind::SplitSingular => "split-singular",
            SolverKind::TreewidthEdge => "treewidth-edge",
            SolverKind::CographEdge => "cograph-edge",
            SolverKind::SplitEdge => "split-edge",
        }
    }

    /// Solvers that only answer the decision question.
    pub fn decide_only(self) -> bool {
        matches!(self, SolverKind::IsolatedUnit | SolverKind::SplitSingular)
    }
}

impl fmt::Display for SolverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SolverKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<SolverKind> {
        SolverKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::precondition(format!("unknown solver `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SolveOptions<'a> {
    pub decomposition: Option<&'a TreeDecomposition>,
    pub clique_general: bool,
}

fn require_mode(inst: &Instance, mode: Mode) -> Result<()> {
    if inst.mode() != mode {
        return Err(Error::precondition(format!(
            "{} mode is required",
            mode.as_str()
        )));
    }
    Ok(())
}

/// Runs one named solver.
pub fn run_solver(
    kind: SolverKind,
    inst: &Instance,
    objective: Objective,
    opts: SolveOptions<'_>,
) -> Result<SolveOutcome> {
    if kind.decide_only() && objective != Objective::Decide {
        return Err(Error::precondition(format!(
            "{kind} only supports the decide objective"
        )));
    }
    match kind {
        SolverKind::Oracle => brute_force_solve(inst, objective),
        SolverKind::ComponentsK2 => solve_components_k2(inst, objective),
        SolverKind::IsolatedUnit => solve_isolated_unit(inst),
        SolverKind::IsolatedKFixed => solve_isolated_k_fixed(inst, objective),
        SolverKind::Treewidth => {
            require_mode(inst, Mode::Vertex)?;
            let (dec, _) = build_nice_decomposition(inst, opts.decomposition)?;
            dp_vertex(inst, &dec, objective)
        }
        SolverKind::TreewidthEdge => {
            require_mode(inst, Mode::Edge)?;
            let (dec, _) = build_nice_decomposition(inst, opts.decomposition)?;
            dp_edge(inst, &dec, objective)
        }
        SolverKind::Cograph => {
            require_mode(inst, Mode::Vertex)?;
            dp_cograph(inst, &build_cotree(inst)?, objective)
        }
        SolverKind::CographEdge => {
            require_mode(inst, Mode::Edge)?;
            solve_cograph_edges(inst, &build_cotree(inst)?, objective)
        }
        SolverKind::Complete => solve_complete_graph(inst, objective),
        SolverKind::CompleteBipartite => solve_complete_bipartite(inst, objective),
        SolverKind::SplitKFixed => solve_split_k_fixed(inst, objective),
        SolverKind::SplitSingular => solve_split_singular(inst, opts.clique_general),
        SolverKind::SplitEdge => solve_split_edges(inst, objective),
    }
}

/// Candidate solvers for automatic selection, most specific first.
///
/// Order: complete, complete bipartite, edgeless, split, cograph, `k = 2`,
/// treewidth, oracle. Stars count as split rather than complete bipartite,
/// and graphs that are both split and cographs go to the cograph solver.
pub fn auto_candidates(
    inst: &Instance,
    objective: Objective,
    report: &ClassReport,
) -> Vec<SolverKind> {
    let mut out = Vec::new();
    let unit = (0..inst.element_count()).all(|e| inst.weight(e) == 1);
    let decide = objective == Objective::Decide;
    let tw =
        if report.treewidth <= AUTO_TREEWIDTH_LIMIT || !crate::oracle::within_oracle_range(inst) {
            None
        } else {
            Some(SolverKind::Oracle)
        };
    match inst.mode() {
        Mode::Vertex => {
            if report.complete {
                out.push(SolverKind::Complete);
            }
            let big_sides =
                complete_bipartite_sides(inst).is_some_and(|(a, b)| a.len() >= 2 && b.len() >= 2);
            if big_sides {
                out.push(SolverKind::CompleteBipartite);
            }
            if report.edgeless {
                if unit && decide {
                    out.push(SolverKind::IsolatedUnit);
                }
                out.push(SolverKind::IsolatedKFixed);
            }
            if report.split && !report.cograph {
                if decide {
                    out.push(SolverKind::SplitSingular);
                }
                out.push(SolverKind::SplitKFixed);
            }
            if report.cograph {
                out.push(SolverKind::Cograph);
            }
            if inst.k() == 2 {
                out.push(SolverKind::ComponentsK2);
            }
            out.push(tw.unwrap_or(SolverKind::Treewidth));
        }
        Mode::Edge => {
            if report.split && !report.cograph {
                out.push(SolverKind::SplitEdge);
            }
            if report.cograph {
                out.push(SolverKind::CographEdge);
            }
            out.push(tw.unwrap_or(SolverKind::TreewidthEdge));
        }
    }
    out
}

/// Tries the automatic candidates in order, skipping any whose preconditions
/// fail, and reports which solver answered.
pub fn solve_auto(
    inst: &Instance,
    objective: Objective,
    opts: SolveOptions<'_>,
) -> Result<(SolverKind, SolveOutcome)> {
    let report = classify_instance(inst);
    let candidates = auto_candidates(inst, objective, &report);
    let mut last = None;
    for kind in candidates {
        match run_solver(kind, inst, objective, opts) {
            Ok(out) => return Ok((kind, out)),
            Err(Error::Precondition(msg)) => last = Some(Error::Precondition(msg)),
            Err(e) => return Err(e),
        }
    }
    Err(last.unwrap_or_else(|| Error::precondition("no applicable solver")))
}
