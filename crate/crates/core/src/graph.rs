//! Small graph utilities over an instance's underlying graph.

use std::collections::VecDeque;

use crate::model::Instance;

/// Connected components, each sorted, ordered by smallest vertex.
pub fn components(inst: &Instance) -> Vec<Vec<usize>> {
    let all: Vec<usize> = (0..inst.n()).collect();
    components_within(inst, &all, false)
}

/// Components of the subgraph induced by `subset` (of its complement when
/// `complement` is set).
pub fn components_within(inst: &Instance, subset: &[usize], complement: bool) -> Vec<Vec<usize>> {
    let n = inst.n();
    let mut inside = vec![false; n];
    for &v in subset {
        inside[v] = true;
    }
    let mut seen = vec![false; n];
    let mut order: Vec<usize> = subset.to_vec();
    order.sort_unstable();
    let mut out = Vec::new();
    for &start in &order {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut comp = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            if complement {
                for &x in &order {
                    if !seen[x] && x != u && !inst.adjacent(u, x) {
                        seen[x] = true;
                        comp.push(x);
                        queue.push_back(x);
                    }
                }
            } else {
                for &x in inst.neighbors(u) {
                    if inside[x] && !seen[x] {
                        seen[x] = true;
                        comp.push(x);
                        queue.push_back(x);
                    }
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Two-coloring of a connected vertex set: `side[i]` for `comp[i]`, with
/// `comp[0]` on side `false`. `None` if the set induces an odd cycle.
pub fn bipartition(inst: &Instance, comp: &[usize]) -> Option<Vec<bool>> {
    let mut side = vec![None; inst.n()];
    let mut queue = VecDeque::new();
    for &s in comp {
        if side[s].is_some() {
            continue;
        }
        side[s] = Some(false);
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            let su = side[u].unwrap();
            for &x in inst.neighbors(u) {
                match side[x] {
                    None => {
                        side[x] = Some(!su);
                        queue.push_back(x);
                    }
                    Some(sx) if sx == su => return None,
                    Some(_) => {}
                }
            }
        }
    }
    Some(comp.iter().map(|&v| side[v].unwrap()).collect())
}

pub fn is_edgeless(inst: &Instance) -> bool {
    inst.edges().is_empty()
}

pub fn is_complete(inst: &Instance) -> bool {
    let n = inst.n();
    inst.edges().len() == n * n.saturating_sub(1) / 2
}

/// Sides `(A, B)` if the graph is `K_{a,b}` with `a, b ≥ 1`; `A` holds vertex 0.
pub fn complete_bipartite_sides(inst: &Instance) -> Option<(Vec<usize>, Vec<usize>)> {
    if inst.n() < 2 || inst.edges().is_empty() {
        return None;
    }
    let all: Vec<usize> = (0..inst.n()).collect();
    let comps = components(inst);
    if comps.len() != 1 {
        return None;
    }
    let side = bipartition(inst, &all)?;
    let a: Vec<usize> = all.iter().copied().filter(|&v| !side[v]).collect();
    let b: Vec<usize> = all.iter().copied().filter(|&v| side[v]).collect();
    if inst.edges().len() == a.len() * b.len() {
        Some((a, b))
    } else {
        None
    }
}
