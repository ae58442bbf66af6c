//! Complete and complete bipartite graphs.

use crate::basic::{fill_part, FillItem};
use crate::error::{Error, Result};
use crate::graph::{complete_bipartite_sides, is_complete};
use crate::matching::{max_weight_perfect_assignment, AssignmentProblem};
use crate::model::{Coloring, Instance, Mode, Objective, SolveOutcome};

/// Colors whose bound column is not all zero.
fn active_colors(inst: &Instance) -> Vec<usize> {
    (0..inst.k())
        .filter(|&c| (0..inst.p()).any(|h| inst.bound(h, c) > 0))
        .collect()
}

/// In a clique every used color holds exactly one vertex, so after dropping
/// unused colors a valid coloring is a perfect matching between vertices and
/// colors where each vertex's weight equals the color's single positive bound.
pub fn solve_complete_graph(inst: &Instance, objective: Objective) -> Result<SolveOutcome> {
    if inst.mode() != Mode::Vertex {
        return Err(Error::precondition("vertex mode is required"));
    }
    if !is_complete(inst) {
        return Err(Error::precondition("the graph must be complete"));
    }
    objective.require_profit(inst)?;
    let colors = active_colors(inst);
    if colors.len() != inst.n() {
        return Ok(SolveOutcome::infeasible());
    }
    let mut owner = Vec::with_capacity(colors.len());
    for &c in &colors {
        let parts: Vec<usize> = (0..inst.p()).filter(|&h| inst.bound(h, c) > 0).collect();
        if parts.len() != 1 {
            return Ok(SolveOutcome::infeasible());
        }
        owner.push(parts[0]);
    }
    let mut ap = AssignmentProblem::new(inst.n(), colors.len());
    for v in 0..inst.n() {
        for (j, &c) in colors.iter().enumerate() {
            let h = owner[j];
            if inst.is_allowed(v, c) && inst.part_of(v) == h && inst.weight(v) == inst.bound(h, c) {
                ap.allow(v, j, objective.scaled_profit(inst, v, c));
            }
        }
    }
    let witness = max_weight_perfect_assignment(&ap)
        .map(|a| Coloring::new(a.col_of_row.iter().map(|&j| colors[j]).collect()));
    Ok(SolveOutcome::from_witness(inst, witness))
}

/// Largest number of used colors for which all side assignments are tried.
pub const SIDE_ENUMERATION_LIMIT: usize = 20;

/// `K_{a,b}`: every color lives on at most one side. Each assignment of the
/// used colors to sides leaves two edgeless halves, and since the halves
/// share no color, every part can be filled on its own.
pub fn solve_complete_bipartite(inst: &Instance, objective: Objective) -> Result<SolveOutcome> {
    if inst.mode() != Mode::Vertex {
        return Err(Error::precondition("vertex mode is required"));
    }
    let Some((a_side, _)) = complete_bipartite_sides(inst) else {
        return Err(Error::precondition("the graph must be complete bipartite"));
    };
    objective.require_profit(inst)?;
    let colors = active_colors(inst);
    if colors.len() > SIDE_ENUMERATION_LIMIT {
        return Err(Error::precondition(format!(
            "{} used colors exceed the side enumeration limit of {SIDE_ENUMERATION_LIMIT}",
            colors.len()
        )));
    }
    let mut on_a = vec![false; inst.n()];
    for &v in &a_side {
        on_a[v] = true;
    }
    let parts: Vec<Vec<usize>> = (0..inst.p())
        .map(|h| (0..inst.n()).filter(|&v| inst.part_of(v) == h).collect())
        .collect();

    let mut best: Option<(i64, Vec<usize>)> = None;
    'mask: for mask in 0u32..(1 << colors.len()) {
        // bit j set: colors[j] belongs to side B
        let mut side_b = vec![false; inst.k()];
        for (j, &c) in colors.iter().enumerate() {
            side_b[c] = mask & (1 << j) != 0;
        }
        let mut assignment = vec![0; inst.n()];
        let mut total = 0;
        for (h, members) in parts.iter().enumerate() {
            let items: Vec<FillItem> = members
                .iter()
                .map(|&v| FillItem {
                    weight: inst.weight(v),
                    colors: inst
                        .allowed(v)
                        .iter()
                        .copied()
                        .filter(|&c| side_b[c] != on_a[v])
                        .collect(),
                    gain: (0..inst.k())
                        .map(|c| objective.scaled_profit(inst, v, c))
                        .collect(),
                })
                .collect();
            match fill_part(&items, &inst.bounds()[h]) {
                Some((cols, gain)) => {
                    for (&v, c) in members.iter().zip(cols) {
                        assignment[v] = c;
                    }
                    total += gain;
                }
                None => continue 'mask,
            }
        }
        if best.as_ref().is_none_or(|(b, _)| total > *b) {
            best = Some((total, assignment));
            if objective == Objective::Decide {
                break;
            }
        }
    }
    Ok(SolveOutcome::from_witness(
        inst,
        best.map(|(_, a)| Coloring::new(a)),
    ))
}
