//! Edge coloring of cographs: with maximum degree at most `k`, every
//! component has at most `1 + k + k(k-1)` vertices, so its proper list edge
//! colorings can be listed outright and combined by a DP over components.

use std::collections::BTreeMap;

use super::cotree::Cotree;
use crate::error::{Error, Result};
use crate::graph::components;
use crate::model::{Coloring, Instance, Mode, Objective, SolveOutcome};
use crate::TABLE_ENTRY_LIMIT;

/// Calls `visit(colors, tally, gain)` for every proper, list-respecting
/// coloring of `edges` whose per-part, per-color weight (flattened `h * k + c`)
/// stays within the bounds. Colorings come in lexicographic order; the walk
/// stops once `visit` returns `true`.
pub(crate) fn for_each_edge_coloring(
    inst: &Instance,
    edges: &[usize],
    objective: Objective,
    visit: &mut dyn FnMut(&[usize], &[u64], i64) -> bool,
) {
    let k = inst.k();
    let limit: Vec<u64> = inst.bounds().iter().flatten().copied().collect();
    let earlier: Vec<Vec<usize>> = edges
        .iter()
        .enumerate()
        .map(|(i, &e)| {
            (0..i)
                .filter(|&j| inst.elements_conflict(e, edges[j]))
                .collect()
        })
        .collect();
    let mut colors = vec![0; edges.len()];
    let mut tally = vec![0u64; limit.len()];

    #[allow(clippy::too_many_arguments)]
    fn go(
        inst: &Instance,
        edges: &[usize],
        objective: Objective,
        earlier: &[Vec<usize>],
        limit: &[u64],
        k: usize,
        i: usize,
        colors: &mut Vec<usize>,
        tally: &mut Vec<u64>,
        gain: i64,
        visit: &mut dyn FnMut(&[usize], &[u64], i64) -> bool,
    ) -> bool {
        if i == edges.len() {
            return visit(colors, tally, gain);
        }
        let e = edges[i];
        let w = inst.weight(e);
        for &c in inst.allowed(e) {
            let s = inst.part_of(e) * k + c;
            if tally[s] + w > limit[s] || earlier[i].iter().any(|&j| colors[j] == c) {
                continue;
            }
            colors[i] = c;
            tally[s] += w;
            let g = gain + objective.scaled_profit(inst, e, c);
            let stop = go(
                inst,
                edges,
                objective,
                earlier,
                limit,
                k,
                i + 1,
                colors,
                tally,
                g,
                visit,
            );
            tally[s] -= w;
            if stop {
                return true;
            }
        }
        false
    }

    go(
        inst,
        edges,
        objective,
        &earlier,
        &limit,
        k,
        0,
        &mut colors,
        &mut tally,
        0,
        visit,
    );
}

pub fn solve_cograph_edges(
    inst: &Instance,
    ct: &Cotree,
    objective: Objective,
) -> Result<SolveOutcome> {
    if inst.mode() != Mode::Edge {
        return Err(Error::precondition("edge mode is required"));
    }
    if ct.leaf_count() != inst.n() {
        return Err(Error::precondition("cotree does not match the instance"));
    }
    objective.require_profit(inst)?;
    if (0..inst.n()).any(|v| inst.degree(v) > inst.k()) {
        return Ok(SolveOutcome::infeasible());
    }

    let target: Vec<u64> = inst.bounds().iter().flatten().copied().collect();
    let groups: Vec<Vec<usize>> = components(inst)
        .into_iter()
        .map(|comp| {
            let mut es: Vec<usize> = comp
                .iter()
                .flat_map(|&v| {
                    inst.neighbors(v)
                        .iter()
                        .filter(move |&&u| u > v)
                        .map(move |&u| (v, u))
                })
                .filter_map(|(v, u)| inst.edge_index(v, u))
                .collect();
            es.sort_unstable();
            es
        })
        .filter(|es| !es.is_empty())
        .collect();

    // per component: best coloring for each reachable tuple
    let mut options: Vec<Vec<(Vec<u64>, i64, Vec<usize>)>> = Vec::with_capacity(groups.len());
    for es in &groups {
        let mut best: BTreeMap<Vec<u64>, (i64, Vec<usize>)> = BTreeMap::new();
        for_each_edge_coloring(inst, es, objective, &mut |colors, tally, gain| {
            if best.get(tally).is_none_or(|(g, _)| gain > *g) {
                best.insert(tally.to_vec(), (gain, colors.to_vec()));
            }
            false
        });
        if best.is_empty() {
            return Ok(SolveOutcome::infeasible());
        }
        options.push(best.into_iter().map(|(t, (g, c))| (t, g, c)).collect());
    }

    let mut layers: Vec<BTreeMap<Vec<u64>, (i64, usize)>> =
        vec![BTreeMap::from([(vec![0; target.len()], (0, usize::MAX))])];
    for opts in &options {
        let mut next: BTreeMap<Vec<u64>, (i64, usize)> = BTreeMap::new();
        for (t, &(value, _)) in layers.last().unwrap() {
            for (i, (add, gain, _)) in opts.iter().enumerate() {
                let sum: Vec<u64> = t.iter().zip(add).map(|(a, b)| a + b).collect();
                if sum.iter().zip(&target).any(|(a, b)| a > b) {
                    continue;
                }
                let v = value + gain;
                if next.get(&sum).is_none_or(|&(b, _)| v > b) {
                    next.insert(sum, (v, i));
                }
            }
        }
        layers.push(next);
        if layers.iter().map(BTreeMap::len).sum::<usize>() > TABLE_ENTRY_LIMIT {
            return Err(Error::TableLimit {
                limit: TABLE_ENTRY_LIMIT,
            });
        }
    }
    if !layers.last().unwrap().contains_key(&target) {
        return Ok(SolveOutcome::infeasible());
    }
    let mut colors = vec![0; inst.element_count()];
    let mut t = target;
    for (gi, es) in groups.iter().enumerate().rev() {
        let (_, choice) = layers[gi + 1][&t];
        let (add, _, cols) = &options[gi][choice];
        for (&e, &c) in es.iter().zip(cols) {
            colors[e] = c;
        }
        for (a, b) in t.iter_mut().zip(add) {
            *a -= b;
        }
    }
    Ok(SolveOutcome::feasible(inst, Coloring::new(colors)))
}
