//! Cotree DP: per node, the reachable per-part, per-color weight tuples of
//! the cograph below it, each with its best (sign-adjusted) profit.

use std::collections::BTreeMap;

use super::cotree::{Cotree, CotreeNode};
use crate::error::{Error, Result};
use crate::model::{Coloring, Instance, Mode, Objective, SolveOutcome};
use crate::TABLE_ENTRY_LIMIT;

type Table = BTreeMap<Vec<u64>, i64>;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CographStats {
    /// Join combinations inspected on the traced witness.
    pub join_checks: u64,
    /// Traced join combinations where some color got weight from both children.
    pub exclusivity_violations: u64,
    pub entries: usize,
}

pub fn dp_cograph(inst: &Instance, ct: &Cotree, objective: Objective) -> Result<SolveOutcome> {
    dp_cograph_with_stats(inst, ct, objective).map(|(o, _)| o)
}

pub fn dp_cograph_with_stats(
    inst: &Instance,
    ct: &Cotree,
    objective: Objective,
) -> Result<(SolveOutcome, CographStats)> {
    if inst.mode() != Mode::Vertex {
        return Err(Error::precondition("vertex mode is required"));
    }
    if ct.leaf_count() != inst.n() {
        return Err(Error::precondition("cotree does not match the instance"));
    }
    objective.require_profit(inst)?;
    let (p, k) = (inst.p(), inst.k());
    let target: Vec<u64> = inst.bounds().iter().flatten().copied().collect();
    let mut stats = CographStats::default();
    let Some(root) = ct.root() else {
        let ok = target.iter().all(|&b| b == 0);
        return Ok((
            SolveOutcome::from_witness(inst, ok.then(|| Coloring::new(Vec::new()))),
            stats,
        ));
    };

    let column_used = |t: &[u64], c: usize| (0..p).any(|h| t[h * k + c] > 0);
    let exclusive = |a: &[u64], b: &[u64]| (0..k).all(|c| !column_used(a, c) || !column_used(b, c));

    let mut tables: Vec<Table> = Vec::with_capacity(ct.nodes().len());
    for node in ct.nodes() {
        let mut table = Table::new();
        match *node {
            CotreeNode::Leaf(v) => {
                let h = inst.part_of(v);
                for &c in inst.allowed(v) {
                    if inst.weight(v) <= target[h * k + c] {
                        let mut t = vec![0; p * k];
                        t[h * k + c] = inst.weight(v);
                        table.insert(t, objective.scaled_profit(inst, v, c));
                    }
                }
            }
            CotreeNode::Union(a, b) | CotreeNode::Join(a, b) => {
                let join = matches!(node, CotreeNode::Join(..));
                for (qa, &va) in &tables[a] {
                    for (qb, &vb) in &tables[b] {
                        if join && !exclusive(qa, qb) {
                            continue;
                        }
                        let t: Vec<u64> = qa.iter().zip(qb).map(|(x, y)| x + y).collect();
                        if t.iter().zip(&target).any(|(x, y)| x > y) {
                            continue;
                        }
                        let slot = table.entry(t).or_insert(i64::MIN);
                        *slot = (*slot).max(va + vb);
                    }
                    if stats.entries + table.len() > TABLE_ENTRY_LIMIT {
                        return Err(Error::TableLimit {
                            limit: TABLE_ENTRY_LIMIT,
                        });
                    }
                }
            }
        }
        stats.entries += table.len();
        tables.push(table);
    }

    let Some(&value) = tables[root].get(&target) else {
        return Ok((SolveOutcome::infeasible(), stats));
    };

    let mut colors = vec![usize::MAX; inst.n()];
    let mut stack = vec![(root, target.clone(), value)];
    while let Some((x, t, val)) = stack.pop() {
        match ct.nodes()[x] {
            CotreeNode::Leaf(v) => {
                let h = inst.part_of(v);
                let c = inst
                    .allowed(v)
                    .iter()
                    .copied()
                    .find(|&c| {
                        t[h * k + c] == inst.weight(v) && objective.scaled_profit(inst, v, c) == val
                    })
                    .expect("leaf entry has a matching color");
                colors[v] = c;
            }
            node @ (CotreeNode::Union(a, b) | CotreeNode::Join(a, b)) => {
                let join = matches!(node, CotreeNode::Join(..));
                let mut chosen = None;
                for (qb, &vb) in &tables[b] {
                    if qb.iter().zip(&t).any(|(x, y)| x > y) {
                        continue;
                    }
                    let qa: Vec<u64> = t.iter().zip(qb).map(|(x, y)| x - y).collect();
                    if join && !exclusive(&qa, qb) {
                        continue;
                    }
                    if let Some(&va) = tables[a].get(&qa) {
                        if va + vb == val {
                            chosen = Some((qa, va, qb.clone(), vb));
                            break;
                        }
                    }
                }
                let (qa, va, qb, vb) = chosen.expect("inner entry has a matching child pair");
                if join {
                    stats.join_checks += 1;
                    if !exclusive(&qa, &qb) {
                        stats.exclusivity_violations += 1;
                    }
                }
                stack.push((b, qb, vb));
                stack.push((a, qa, va));
            }
        }
    }
    Ok((SolveOutcome::feasible(inst, Coloring::new(colors)), stats))
}
