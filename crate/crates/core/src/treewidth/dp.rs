//! Table DP over a nice tree decomposition.
//!
//! One engine serves both modes. Each node carries a sorted set of "bag
//! items": its bag vertices in vertex mode, and every edge incident to a bag
//! vertex in edge mode. The latter is a valid decomposition of the line graph,
//! so any two edges sharing a vertex sit together in some bag and get checked.
//!
//! A table entry maps `(colors of the bag items, weight tuple)` to the best
//! (sign-adjusted) profit of a coloring of every item seen in the subtree,
//! where the tuple holds per-part, per-color weight totals of those items,
//! bag items included. Absent entries are unreachable.

use std::collections::BTreeMap;

use super::decomposition::{
    build_nice_decomposition, NiceDecomposition, NodeKind, TreeDecomposition,
};
use crate::error::{Error, Result};
use crate::model::{Coloring, Instance, Mode, Objective, SolveOutcome};
use crate::TABLE_ENTRY_LIMIT;

type Key = (Vec<usize>, Vec<u64>);
type Table = BTreeMap<Key, i64>;

/// Counters gathered while filling and tracing tables.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DpStats {
    /// Join combinations checked for weight conservation.
    pub join_checks: u64,
    /// Combinations where `q + q' ≠ ω + w^i` or a child tuple lies below the bag weight.
    pub join_violations: u64,
    /// Total table entries over all nodes.
    pub entries: usize,
}

pub fn dp_vertex(
    inst: &Instance,
    dec: &NiceDecomposition,
    objective: Objective,
) -> Result<SolveOutcome> {
    dp_vertex_with_stats(inst, dec, objective).map(|(o, _)| o)
}

pub fn dp_vertex_with_stats(
    inst: &Instance,
    dec: &NiceDecomposition,
    objective: Objective,
) -> Result<(SolveOutcome, DpStats)> {
    if inst.mode() != Mode::Vertex {
        return Err(Error::precondition("vertex mode is required"));
    }
    run(inst, dec, objective)
}

pub fn dp_edge(
    inst: &Instance,
    dec: &NiceDecomposition,
    objective: Objective,
) -> Result<SolveOutcome> {
    dp_edge_with_stats(inst, dec, objective).map(|(o, _)| o)
}

/// Edge-mode DP. A vertex of degree above `k` makes the instance infeasible
/// at once, which also keeps the bag item count at most `(width + 1) · k`.
pub fn dp_edge_with_stats(
    inst: &Instance,
    dec: &NiceDecomposition,
    objective: Objective,
) -> Result<(SolveOutcome, DpStats)> {
    if inst.mode() != Mode::Edge {
        return Err(Error::precondition("edge mode is required"));
    }
    objective.require_profit(inst)?;
    if (0..inst.n()).any(|v| inst.degree(v) > inst.k()) {
        return Ok((SolveOutcome::infeasible(), DpStats::default()));
    }
    run(inst, dec, objective)
}

/// Builds a decomposition (or normalizes `supplied`) and runs the DP for the instance's mode.
pub fn solve_treewidth(
    inst: &Instance,
    supplied: Option<&TreeDecomposition>,
    objective: Objective,
) -> Result<SolveOutcome> {
    let (dec, _) = build_nice_decomposition(inst, supplied)?;
    match inst.mode() {
        Mode::Vertex => dp_vertex(inst, &dec, objective),
        Mode::Edge => dp_edge(inst, &dec, objective),
    }
}

struct Engine<'a> {
    inst: &'a Instance,
    objective: Objective,
    dec: &'a NiceDecomposition,
    /// Sorted bag items per node.
    items: Vec<Vec<usize>>,
    /// Flattened bound matrix, index `h * k + c`.
    target: Vec<u64>,
    k: usize,
    stats: DpStats,
}

fn run(
    inst: &Instance,
    dec: &NiceDecomposition,
    objective: Objective,
) -> Result<(SolveOutcome, DpStats)> {
    objective.require_profit(inst)?;
    let items = dec
        .nodes()
        .iter()
        .map(|node| match inst.mode() {
            Mode::Vertex => node.bag.clone(),
            Mode::Edge => {
                let mut out: Vec<usize> = node
                    .bag
                    .iter()
                    .flat_map(|&v| inst.neighbors(v).iter().map(move |&u| (u, v)))
                    .filter_map(|(u, v)| inst.edge_index(u, v))
                    .collect();
                out.sort_unstable();
                out.dedup();
                out
            }
        })
        .collect();
    let target = inst.bounds().iter().flatten().copied().collect();
    let mut engine = Engine {
        inst,
        objective,
        dec,
        items,
        target,
        k: inst.k(),
        stats: DpStats::default(),
    };
    let tables = engine.fill()?;
    let root = dec.root();
    let root_key: Key = (Vec::new(), engine.target.clone());
    debug_assert!(engine.items[root].is_empty());
    let Some(&value) = tables[root].get(&root_key) else {
        return Ok((SolveOutcome::infeasible(), engine.stats));
    };
    let colors = engine.trace(&tables, value);
    let witness = Coloring::new(colors);
    debug_assert_eq!(
        value,
        (0..inst.element_count())
            .map(|e| objective.scaled_profit(inst, e, witness.color_of(e)))
            .sum::<i64>()
    );
    Ok((SolveOutcome::feasible(inst, witness), engine.stats))
}

/// Positions of `sub` inside the sorted superset `sup`.
fn positions(sup: &[usize], sub: &[usize]) -> Vec<usize> {
    sub.iter()
        .map(|x| sup.binary_search(x).expect("subset item"))
        .collect()
}

impl Engine<'_> {
    fn slot(&self, e: usize, c: usize) -> usize {
        self.inst.part_of(e) * self.k + c
    }

    fn gain(&self, e: usize, c: usize) -> i64 {
        self.objective.scaled_profit(self.inst, e, c)
    }

    /// Weight tuple and gain of the bag items colored `colors`.
    fn bag_load(&self, node: usize, colors: &[usize]) -> (Vec<u64>, i64) {
        let mut load = vec![0u64; self.target.len()];
        let mut gain = 0;
        for (&e, &c) in self.items[node].iter().zip(colors) {
            load[self.slot(e, c)] += self.inst.weight(e);
            gain += self.gain(e, c);
        }
        (load, gain)
    }

    fn fill(&mut self) -> Result<Vec<Table>> {
        let dec = self.dec;
        let mut tables: Vec<Table> = vec![Table::new(); dec.nodes().len()];
        for x in dec.post_order() {
            let node = &dec.nodes()[x];
            let table = match node.kind {
                NodeKind::Leaf => self.leaf(x),
                NodeKind::Introduce(_) => self.grow(x, node.children[0], &tables[node.children[0]]),
                NodeKind::Forget(_) => self.shrink(x, node.children[0], &tables[node.children[0]]),
                NodeKind::Join => {
                    let (a, b) = (node.children[0], node.children[1]);
                    self.join(x, &tables[a], &tables[b])
                }
            };
            self.stats.entries += table.len();
            if self.stats.entries > TABLE_ENTRY_LIMIT {
                return Err(Error::TableLimit {
                    limit: TABLE_ENTRY_LIMIT,
                });
            }
            tables[x] = table;
        }
        Ok(tables)
    }

    fn leaf(&self, x: usize) -> Table {
        // leaves have empty bags, so nothing but the all-zero tuple is reachable
        debug_assert!(self.items[x].is_empty());
        Table::from([((Vec::new(), vec![0; self.target.len()]), 0)])
    }

    /// New items of `x` relative to child `y`, with their positions in `x`.
    fn new_items(&self, x: usize, y: usize) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
        let fresh: Vec<usize> = self.items[x]
            .iter()
            .copied()
            .filter(|e| self.items[y].binary_search(e).is_err())
            .collect();
        let fresh_pos = positions(&self.items[x], &fresh);
        let kept_pos = positions(&self.items[x], &self.items[y]);
        (fresh, fresh_pos, kept_pos)
    }

    /// Introduce: extend every child entry by each proper, list-respecting
    /// coloring of the new items that keeps the tuple within the bounds.
    fn grow(&self, x: usize, y: usize, child: &Table) -> Table {
        let (fresh, fresh_pos, kept_pos) = self.new_items(x, y);
        let width = self.items[x].len();
        let mut out = Table::new();
        for ((cy, tuple), &value) in child {
            let mut colors = vec![usize::MAX; width];
            for (&p, &c) in kept_pos.iter().zip(cy) {
                colors[p] = c;
            }
            let mut tuple = tuple.clone();
            self.extend(
                x,
                &fresh,
                &fresh_pos,
                0,
                &mut colors,
                &mut tuple,
                value,
                &mut out,
            );
        }
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn extend(
        &self,
        x: usize,
        fresh: &[usize],
        fresh_pos: &[usize],
        i: usize,
        colors: &mut Vec<usize>,
        tuple: &mut Vec<u64>,
        value: i64,
        out: &mut Table,
    ) {
        if i == fresh.len() {
            let key = (colors.clone(), tuple.clone());
            let slot = out.entry(key).or_insert(i64::MIN);
            *slot = (*slot).max(value);
            return;
        }
        let e = fresh[i];
        let w = self.inst.weight(e);
        let bag = &self.items[x];
        'color: for &c in self.inst.allowed(e) {
            let s = self.slot(e, c);
            if tuple[s] + w > self.target[s] {
                continue;
            }
            for (p, &f) in bag.iter().enumerate() {
                if colors[p] == c && self.inst.elements_conflict(e, f) {
                    continue 'color;
                }
            }
            colors[fresh_pos[i]] = c;
            tuple[s] += w;
            self.extend(
                x,
                fresh,
                fresh_pos,
                i + 1,
                colors,
                tuple,
                value + self.gain(e, c),
                out,
            );
            tuple[s] -= w;
            colors[fresh_pos[i]] = usize::MAX;
        }
    }

    /// Forget: project child entries onto the smaller bag, keeping the best value.
    fn shrink(&self, x: usize, y: usize, child: &Table) -> Table {
        let kept_pos = positions(&self.items[y], &self.items[x]);
        let mut out = Table::new();
        for ((cy, tuple), &value) in child {
            let cx: Vec<usize> = kept_pos.iter().map(|&p| cy[p]).collect();
            let slot = out.entry((cx, tuple.clone())).or_insert(i64::MIN);
            *slot = (*slot).max(value);
        }
        out
    }

    /// Join: for equal bag colorings, `ω = q + q' − w^i`; bag items were
    /// counted on both sides, as was their profit.
    fn join(&mut self, x: usize, left: &Table, right: &Table) -> Table {
        let mut by_colors: BTreeMap<&Vec<usize>, Vec<(&Vec<u64>, i64)>> = BTreeMap::new();
        for ((c, t), &v) in right {
            by_colors.entry(c).or_default().push((t, v));
        }
        let mut out = Table::new();
        for ((colors, q), &vl) in left {
            let Some(rights) = by_colors.get(colors) else {
                continue;
            };
            let (load, gain) = self.bag_load(x, colors);
            'pair: for &(q2, vr) in rights {
                let mut omega = Vec::with_capacity(q.len());
                for s in 0..q.len() {
                    let combined = q[s] + q2[s] - load[s];
                    if combined > self.target[s] {
                        continue 'pair;
                    }
                    omega.push(combined);
                }
                self.stats.join_checks += 1;
                let conserved = (0..q.len()).all(|s| {
                    q[s] >= load[s] && q2[s] >= load[s] && q[s] + q2[s] == omega[s] + load[s]
                });
                if !conserved {
                    self.stats.join_violations += 1;
                }
                debug_assert!(conserved);
                let slot = out.entry((colors.clone(), omega)).or_insert(i64::MIN);
                *slot = (*slot).max(vl + vr - gain);
            }
        }
        out
    }

    /// Top-down reconstruction of one optimal coloring. Forget nodes try the
    /// removed items' colors in lexicographic order; join nodes scan the right
    /// child's tuples in order.
    fn trace(&mut self, tables: &[Table], value: i64) -> Vec<usize> {
        let dec = self.dec;
        let mut colors = vec![usize::MAX; self.inst.element_count()];
        let mut stack: Vec<(usize, Vec<usize>, Vec<u64>, i64)> =
            vec![(dec.root(), Vec::new(), self.target.clone(), value)];
        while let Some((x, cx, tuple, val)) = stack.pop() {
            let node = &dec.nodes()[x];
            for (&e, &c) in self.items[x].iter().zip(&cx) {
                colors[e] = c;
            }
            match node.kind {
                NodeKind::Leaf => {}
                NodeKind::Introduce(_) => {
                    let y = node.children[0];
                    let (fresh, fresh_pos, kept_pos) = self.new_items(x, y);
                    let mut t = tuple.clone();
                    let mut v = val;
                    for (&e, &p) in fresh.iter().zip(&fresh_pos) {
                        t[self.slot(e, cx[p])] -= self.inst.weight(e);
                        v -= self.gain(e, cx[p]);
                    }
                    let cy: Vec<usize> = kept_pos.iter().map(|&p| cx[p]).collect();
                    debug_assert_eq!(tables[y].get(&(cy.clone(), t.clone())), Some(&v));
                    stack.push((y, cy, t, v));
                }
                NodeKind::Forget(_) => {
                    let y = node.children[0];
                    let removed: Vec<usize> = self.items[y]
                        .iter()
                        .copied()
                        .filter(|e| self.items[x].binary_search(e).is_err())
                        .collect();
                    let removed_pos = positions(&self.items[y], &removed);
                    let kept_pos = positions(&self.items[y], &self.items[x]);
                    let mut cy = vec![0; self.items[y].len()];
                    for (&p, &c) in kept_pos.iter().zip(&cx) {
                        cy[p] = c;
                    }
                    let found = self.pick_removed(
                        &tables[y],
                        &removed,
                        &removed_pos,
                        0,
                        &mut cy,
                        &tuple,
                        val,
                    );
                    assert!(found, "forget node {x} has no matching child entry");
                    stack.push((y, cy, tuple, val));
                }
                NodeKind::Join => {
                    let (a, b) = (node.children[0], node.children[1]);
                    let (load, gain) = self.bag_load(x, &cx);
                    let lo = (cx.clone(), Vec::new());
                    let mut chosen = None;
                    for ((c, q2), &vr) in tables[b].range(lo..) {
                        if *c != cx {
                            break;
                        }
                        if (0..q2.len()).any(|s| tuple[s] + load[s] < q2[s]) {
                            continue;
                        }
                        let q: Vec<u64> =
                            (0..q2.len()).map(|s| tuple[s] + load[s] - q2[s]).collect();
                        if let Some(&vl) = tables[a].get(&(cx.clone(), q.clone())) {
                            if vl + vr - gain == val {
                                chosen = Some((q, vl, q2.clone(), vr));
                                break;
                            }
                        }
                    }
                    let (q, vl, q2, vr) = chosen.expect("join node has no matching child pair");
                    self.stats.join_checks += 1;
                    let conserved = (0..q.len()).all(|s| {
                        q[s] >= load[s] && q2[s] >= load[s] && q[s] + q2[s] == tuple[s] + load[s]
                    });
                    if !conserved {
                        self.stats.join_violations += 1;
                    }
                    stack.push((b, cx.clone(), q2, vr));
                    stack.push((a, cx, q, vl));
                }
            }
        }
        debug_assert!(colors.iter().all(|&c| c != usize::MAX));
        colors
    }

    #[allow(clippy::too_many_arguments)]
    fn pick_removed(
        &self,
        child: &Table,
        removed: &[usize],
        removed_pos: &[usize],
        i: usize,
        cy: &mut Vec<usize>,
        tuple: &[u64],
        val: i64,
    ) -> bool {
        if i == removed.len() {
            return child.get(&(cy.clone(), tuple.to_vec())) == Some(&val);
        }
        for &c in self.inst.allowed(removed[i]) {
            cy[removed_pos[i]] = c;
            if self.pick_removed(child, removed, removed_pos, i + 1, cy, tuple, val) {
                return true;
            }
        }
        false
    }
}
