//! Edgeless graphs and the two-color component DP.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{bipartition, components};
use crate::matching::{max_flow_saturate, CapacitatedBipartiteNetwork};
use crate::model::{Coloring, Instance, Mode, Objective, SolveOutcome};

/// One element of a part being filled independently of everything else.
#[derive(Debug, Clone)]
pub(crate) struct FillItem {
    pub weight: u64,
    pub colors: Vec<usize>,
    /// Gain per color, indexed by color; empty means all zero.
    pub gain: Vec<i64>,
}

impl FillItem {
    #[cfg(test)]
    pub fn plain(weight: u64, colors: Vec<usize>) -> Self {
        FillItem {
            weight,
            colors,
            gain: Vec::new(),
        }
    }

    fn gain(&self, c: usize) -> i64 {
        self.gain.get(c).copied().unwrap_or(0)
    }
}

/// Colors items so that color `c` collects exactly `target[c]` weight,
/// maximizing total gain. Layered DP over partial weight tuples, each tuple
/// componentwise at most `target`. Returns the colors and the gain.
pub(crate) fn fill_part(items: &[FillItem], target: &[u64]) -> Option<(Vec<usize>, i64)> {
    let total: u64 = items.iter().map(|it| it.weight).sum();
    if total != target.iter().sum::<u64>() {
        return None;
    }
    // layers[i]: tuple reached after i items -> (best gain, color of item i-1)
    let mut layers: Vec<BTreeMap<Vec<u64>, (i64, usize)>> = Vec::with_capacity(items.len() + 1);
    layers.push(BTreeMap::from([(vec![0; target.len()], (0, usize::MAX))]));
    for it in items {
        let mut next: BTreeMap<Vec<u64>, (i64, usize)> = BTreeMap::new();
        for (tuple, &(value, _)) in layers.last().unwrap() {
            for &c in &it.colors {
                if tuple[c] + it.weight > target[c] {
                    continue;
                }
                let mut t = tuple.clone();
                t[c] += it.weight;
                let v = value + it.gain(c);
                match next.get(&t) {
                    Some(&(best, _)) if best >= v => {}
                    _ => {
                        next.insert(t, (v, c));
                    }
                }
            }
        }
        if next.is_empty() {
            return None;
        }
        layers.push(next);
    }
    let &(value, _) = layers.last().unwrap().get(target)?;
    let mut tuple = target.to_vec();
    let mut colors = vec![0; items.len()];
    for i in (0..items.len()).rev() {
        let (_, c) = layers[i + 1][&tuple];
        colors[i] = c;
        tuple[c] -= items[i].weight;
    }
    Some((colors, value))
}

fn require_edgeless_vertex(inst: &Instance) -> Result<()> {
    if inst.mode() != Mode::Vertex {
        return Err(Error::precondition("vertex mode is required"));
    }
    if !inst.edges().is_empty() {
        return Err(Error::precondition("the graph must be edgeless"));
    }
    Ok(())
}

/// Edgeless graph with unit weights: a saturating flow from vertices to
/// `(part, color)` slots of capacity `W[h][c]` is exactly a valid coloring.
pub fn solve_isolated_unit(inst: &Instance) -> Result<SolveOutcome> {
    require_edgeless_vertex(inst)?;
    if (0..inst.n()).any(|v| inst.weight(v) != 1) {
        return Err(Error::precondition("all vertex weights must be 1"));
    }
    let part_of: Vec<usize> = (0..inst.n()).map(|v| inst.part_of(v)).collect();
    let lists: Vec<Vec<usize>> = (0..inst.n()).map(|v| inst.allowed(v).to_vec()).collect();
    let witness = unit_flow_fill(&part_of, &lists, inst.bounds()).map(Coloring::new);
    Ok(SolveOutcome::from_witness(inst, witness))
}

/// Colors unit-weight, pairwise non-conflicting items so that part `h` puts
/// exactly `bounds[h][c]` items on color `c`, via one saturating flow.
pub(crate) fn unit_flow_fill(
    part_of: &[usize],
    lists: &[Vec<usize>],
    bounds: &[Vec<u64>],
) -> Option<Vec<usize>> {
    let m = part_of.len();
    let k = bounds.first().map_or(0, Vec::len);
    let mut net = CapacitatedBipartiteNetwork::new(m, bounds.len() * k);
    net.supply = vec![1; m];
    for (h, row) in bounds.iter().enumerate() {
        for (c, &b) in row.iter().enumerate() {
            net.demand[h * k + c] = b;
        }
    }
    let mut arc_owner = Vec::new();
    for e in 0..m {
        let h = part_of[e];
        for &c in &lists[e] {
            if bounds[h][c] > 0 {
                net.add_arc(e, h * k + c, 1);
                arc_owner.push((e, c));
            }
        }
    }
    let flow = max_flow_saturate(&net);
    let demanded: u64 = net.demand.iter().sum();
    if !flow.saturated || flow.value != demanded {
        return None;
    }
    let mut colors = vec![0; m];
    for (&(e, c), &f) in arc_owner.iter().zip(&flow.arc_flow) {
        if f > 0 {
            colors[e] = c;
        }
    }
    Some(colors)
}

/// Edgeless graph, arbitrary weights: each part is filled on its own by a DP
/// over weight tuples bounded by the part's bound row.
pub fn solve_isolated_k_fixed(inst: &Instance, objective: Objective) -> Result<SolveOutcome> {
    require_edgeless_vertex(inst)?;
    objective.require_profit(inst)?;
    let mut colors = vec![0; inst.n()];
    for h in 0..inst.p() {
        let members: Vec<usize> = (0..inst.n()).filter(|&v| inst.part_of(v) == h).collect();
        let items: Vec<FillItem> = members
            .iter()
            .map(|&v| FillItem {
                weight: inst.weight(v),
                colors: inst.allowed(v).to_vec(),
                gain: (0..inst.k())
                    .map(|c| objective.scaled_profit(inst, v, c))
                    .collect(),
            })
            .collect();
        match fill_part(&items, &inst.bounds()[h]) {
            Some((part_colors, _)) => {
                for (&v, c) in members.iter().zip(part_colors) {
                    colors[v] = c;
                }
            }
            None => return Ok(SolveOutcome::infeasible()),
        }
    }
    Ok(SolveOutcome::feasible(inst, Coloring::new(colors)))
}

/// `k = 2`: every component is bipartite with at most two colorings, so a DP
/// over components only needs the color-1 weight of each part.
pub fn solve_components_k2(inst: &Instance, objective: Objective) -> Result<SolveOutcome> {
    if inst.mode() != Mode::Vertex {
        return Err(Error::precondition("vertex mode is required"));
    }
    if inst.k() != 2 {
        return Err(Error::precondition(format!(
            "k must be 2, found {}",
            inst.k()
        )));
    }
    objective.require_profit(inst)?;
    let p = inst.p();

    // per component: the list-valid colorings, each as (vertex colors, part color-0 weights, gain)
    let comps = components(inst);
    let mut options: Vec<Vec<(Vec<usize>, Vec<u64>, i64)>> = Vec::with_capacity(comps.len());
    for comp in &comps {
        let Some(side) = bipartition(inst, comp) else {
            return Ok(SolveOutcome::infeasible());
        };
        let mut opts = Vec::new();
        for flip in [false, true] {
            let cols: Vec<usize> = side.iter().map(|&s| usize::from(s != flip)).collect();
            if comp
                .iter()
                .zip(&cols)
                .any(|(&v, &c)| !inst.is_allowed(v, c))
            {
                continue;
            }
            let mut zero = vec![0u64; p];
            let mut gain = 0;
            for (&v, &c) in comp.iter().zip(&cols) {
                if c == 0 {
                    zero[inst.part_of(v)] += inst.weight(v);
                }
                gain += objective.scaled_profit(inst, v, c);
            }
            opts.push((cols, zero, gain));
        }
        if opts.is_empty() {
            return Ok(SolveOutcome::infeasible());
        }
        options.push(opts);
    }

    let target: Vec<u64> = (0..p).map(|h| inst.bound(h, 0)).collect();
    let mut layers: Vec<BTreeMap<Vec<u64>, (i64, usize)>> =
        vec![BTreeMap::from([(vec![0; p], (0, usize::MAX))])];
    for opts in &options {
        let mut next: BTreeMap<Vec<u64>, (i64, usize)> = BTreeMap::new();
        for (tuple, &(value, _)) in layers.last().unwrap() {
            for (i, (_, zero, gain)) in opts.iter().enumerate() {
                let t: Vec<u64> = tuple.iter().zip(zero).map(|(a, b)| a + b).collect();
                if t.iter().zip(&target).any(|(a, b)| a > b) {
                    continue;
                }
                let v = value + gain;
                match next.get(&t) {
                    Some(&(best, _)) if best >= v => {}
                    _ => {
                        next.insert(t, (v, i));
                    }
                }
            }
        }
        layers.push(next);
    }
    if !layers.last().unwrap().contains_key(&target) {
        return Ok(SolveOutcome::infeasible());
    }
    let mut colors = vec![0; inst.n()];
    let mut tuple = target;
    for (ci, comp) in comps.iter().enumerate().rev() {
        let (_, choice) = layers[ci + 1][&tuple];
        let (cols, zero, _) = &options[ci][choice];
        for (&v, &c) in comp.iter().zip(cols) {
            colors[v] = c;
        }
        for (a, b) in tuple.iter_mut().zip(zero) {
            *a -= b;
        }
    }
    Ok(SolveOutcome::feasible(inst, Coloring::new(colors)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{RawInstance, Status};
    use crate::oracle::brute_force_solve;
    use crate::validate::is_valid;

    fn vertex(
        n: usize,
        edges: Vec<(usize, usize)>,
        k: usize,
        part_of: Vec<usize>,
        weight: Vec<u64>,
        bounds: Vec<Vec<u64>>,
    ) -> Instance {
        Instance::new(RawInstance {
            mode: Mode::Vertex,
            n,
            edges,
            k,
            p: bounds.len(),
            part_of,
            weight,
            bounds,
            allowed: vec![(0..k).collect(); n],
            profit: None,
        })
        .unwrap()
    }

    #[test]
    fn isolated_unit_basics() {
        let inst = vertex(2, vec![], 2, vec![0, 0], vec![1, 1], vec![vec![1, 1]]);
        let out = solve_isolated_unit(&inst).unwrap();
        assert!(is_valid(&inst, out.witness.as_ref().unwrap()));

        let mut raw = inst.into_raw();
        raw.allowed = vec![vec![0], vec![0]];
        let inst = Instance::new(raw).unwrap();
        assert_eq!(
            solve_isolated_unit(&inst).unwrap().status,
            Status::Infeasible
        );
    }

    #[test]
    fn isolated_unit_rejects_weights() {
        let inst = vertex(1, vec![], 1, vec![0], vec![2], vec![vec![2]]);
        assert!(matches!(
            solve_isolated_unit(&inst),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn isolated_k_fixed_examples() {
        let inst = vertex(
            5,
            vec![],
            2,
            vec![0; 5],
            vec![2, 2, 2, 3, 3],
            vec![vec![6, 6]],
        );
        let out = solve_isolated_k_fixed(&inst, Objective::Decide).unwrap();
        assert!(is_valid(&inst, out.witness.as_ref().unwrap()));

        let inst = vertex(2, vec![], 2, vec![0; 2], vec![1, 3], vec![vec![2, 2]]);
        assert_eq!(
            solve_isolated_k_fixed(&inst, Objective::Decide)
                .unwrap()
                .status,
            Status::Infeasible
        );

        let inst = vertex(
            10,
            vec![],
            2,
            vec![0, 0, 0, 0, 0, 1, 1, 1, 1, 1],
            vec![2, 2, 2, 3, 3, 2, 2, 2, 3, 3],
            vec![vec![6, 6], vec![6, 6]],
        );
        let out = solve_isolated_k_fixed(&inst, Objective::Decide).unwrap();
        assert!(is_valid(&inst, out.witness.as_ref().unwrap()));
    }

    #[test]
    fn components_k2_examples() {
        let path = vertex(
            3,
            vec![(0, 1), (1, 2)],
            2,
            vec![0; 3],
            vec![1; 3],
            vec![vec![2, 1]],
        );
        let out = solve_components_k2(&path, Objective::Decide).unwrap();
        assert_eq!(out.witness, Some(Coloring::new(vec![0, 1, 0])));

        let c5 = vertex(
            5,
            vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)],
            2,
            vec![0; 5],
            vec![1; 5],
            vec![vec![3, 2]],
        );
        assert_eq!(
            solve_components_k2(&c5, Objective::Decide).unwrap().status,
            Status::Infeasible
        );

        let three = vertex(
            5,
            vec![(0, 1), (2, 3)],
            2,
            vec![0, 1, 1, 0, 1],
            vec![2, 1, 3, 1, 2],
            vec![vec![1, 2], vec![4, 2]],
        );
        let ours = solve_components_k2(&three, Objective::Decide).unwrap();
        assert_eq!(
            ours.status,
            brute_force_solve(&three, Objective::Decide).unwrap().status
        );
    }

    #[test]
    fn components_k2_needs_two_colors() {
        let inst = vertex(1, vec![], 1, vec![0], vec![1], vec![vec![1]]);
        assert!(matches!(
            solve_components_k2(&inst, Objective::Decide),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn fill_part_prefers_gain() {
        let items = vec![
            FillItem {
                weight: 1,
                colors: vec![0, 1],
                gain: vec![0, 5],
            },
            FillItem::plain(1, vec![0, 1]),
        ];
        assert_eq!(fill_part(&items, &[1, 1]), Some((vec![1, 0], 5)));
    }
}
