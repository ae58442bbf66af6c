//! Split graphs: recognition and the clique-enumeration, singular-color and
//! edge-coloring solvers.

use std::collections::BTreeMap;

use crate::basic::{fill_part, unit_flow_fill, FillItem};
use crate::cographs::for_each_edge_coloring;
use crate::error::{Error, Result};
use crate::matching::{max_weight_perfect_assignment, AssignmentProblem};
use crate::model::{Coloring, Instance, Mode, Objective, SolveOutcome};

/// A clique `clique` and an independent set `independent` covering all vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitPartition {
    pub clique: Vec<usize>,
    pub independent: Vec<usize>,
}

/// Degree-sequence recognition. With degrees sorted non-increasingly (ties by
/// index) and `m = max{i : d_i ≥ i − 1}`, the graph is split iff
/// `Σ_{i≤m} d_i = m(m−1) + Σ_{i>m} d_i`; the first `m` vertices then form a
/// maximum clique. Works on the underlying graph in either mode.
pub fn split_partition(inst: &Instance) -> Result<SplitPartition> {
    let n = inst.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(inst.degree(v)), v));
    let d: Vec<usize> = order.iter().map(|&v| inst.degree(v)).collect();
    let m = (1..=n).filter(|&i| d[i - 1] + 1 >= i).max().unwrap_or(0);
    let head: usize = d[..m].iter().sum();
    let tail: usize = d[m..].iter().sum();
    if head != m * m.saturating_sub(1) + tail {
        return Err(Error::NotSplit);
    }
    let mut clique = order[..m].to_vec();
    let mut independent = order[m..].to_vec();
    clique.sort_unstable();
    independent.sort_unstable();
    debug_assert!(clique
        .iter()
        .all(|&a| clique.iter().all(|&b| a == b || inst.adjacent(a, b))));
    debug_assert!(independent
        .iter()
        .all(|&a| independent.iter().all(|&b| !inst.adjacent(a, b))));
    Ok(SplitPartition {
        clique,
        independent,
    })
}

fn require_vertex_split(inst: &Instance) -> Result<SplitPartition> {
    if inst.mode() != Mode::Vertex {
        return Err(Error::precondition("vertex mode is required"));
    }
    split_partition(inst)
}

/// Fills the independent side against `bounds` once the clique is colored,
/// part by part. Independent vertices lose the colors of their clique neighbors.
fn fill_independent(
    inst: &Instance,
    independent: &[usize],
    colors: &[usize],
    bounds: &[Vec<u64>],
    objective: Objective,
) -> Option<(Vec<usize>, i64)> {
    let mut out = colors.to_vec();
    let mut total = 0;
    for (h, row) in bounds.iter().enumerate() {
        let members: Vec<usize> = independent
            .iter()
            .copied()
            .filter(|&v| inst.part_of(v) == h)
            .collect();
        let items: Vec<FillItem> = members
            .iter()
            .map(|&v| FillItem {
                weight: inst.weight(v),
                colors: inst
                    .allowed(v)
                    .iter()
                    .copied()
                    .filter(|&c| inst.neighbors(v).iter().all(|&u| colors[u] != c))
                    .collect(),
                gain: (0..inst.k())
                    .map(|c| objective.scaled_profit(inst, v, c))
                    .collect(),
            })
            .collect();
        let (cols, gain) = fill_part(&items, row)?;
        for (&v, c) in members.iter().zip(cols) {
            out[v] = c;
        }
        total += gain;
    }
    Some((out, total))
}

/// A clique needs `|K|` distinct colors, so for fixed `k` all colorings of
/// `K` can be tried; each leaves an edgeless residual on `S`.
pub fn solve_split_k_fixed(inst: &Instance, objective: Objective) -> Result<SolveOutcome> {
    let sp = require_vertex_split(inst)?;
    objective.require_profit(inst)?;
    if sp.clique.len() > inst.k() {
        return Ok(SolveOutcome::infeasible());
    }
    let mut search = CliqueSearch {
        inst,
        objective,
        sp: &sp,
        colors: vec![usize::MAX; inst.n()],
        bounds: inst.bounds().to_vec(),
        best: None,
    };
    search.descend(0, 0);
    Ok(SolveOutcome::from_witness(
        inst,
        search.best.map(|(_, c)| Coloring::new(c)),
    ))
}

struct CliqueSearch<'a> {
    inst: &'a Instance,
    objective: Objective,
    sp: &'a SplitPartition,
    colors: Vec<usize>,
    /// Bounds left after the clique vertices colored so far.
    bounds: Vec<Vec<u64>>,
    best: Option<(i64, Vec<usize>)>,
}

impl CliqueSearch<'_> {
    /// Returns `true` when the search can stop.
    fn descend(&mut self, i: usize, gain: i64) -> bool {
        let inst = self.inst;
        if i == self.sp.clique.len() {
            let Some((colors, rest)) = fill_independent(
                inst,
                &self.sp.independent,
                &self.colors,
                &self.bounds,
                self.objective,
            ) else {
                return false;
            };
            let total = gain + rest;
            if self.best.as_ref().is_none_or(|(b, _)| total > *b) {
                self.best = Some((total, colors));
            }
            return self.objective == Objective::Decide;
        }
        let u = self.sp.clique[i];
        let (h, w) = (inst.part_of(u), inst.weight(u));
        for &c in inst.allowed(u) {
            if self.bounds[h][c] < w || self.sp.clique[..i].iter().any(|&x| self.colors[x] == c) {
                continue;
            }
            self.colors[u] = c;
            self.bounds[h][c] -= w;
            let stop = self.descend(i + 1, gain + self.objective.scaled_profit(inst, u, c));
            self.bounds[h][c] += w;
            self.colors[u] = usize::MAX;
            if stop {
                return true;
            }
        }
        false
    }
}

/// Bound structure assumed by the singular-color solver: every color outside
/// `singular` has bound `common` in every part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularSpec {
    pub singular: Vec<usize>,
    pub common: Option<u64>,
}

impl SingularSpec {
    /// `common` is the value shared by the most constant bound columns,
    /// provided at least two columns share it (smaller value on ties). With no
    /// such value every color is singular.
    pub fn infer(inst: &Instance) -> SingularSpec {
        let constant: Vec<Option<u64>> = (0..inst.k())
            .map(|c| {
                let b = inst.bound(0, c);
                (0..inst.p()).all(|h| inst.bound(h, c) == b).then_some(b)
            })
            .collect();
        let mut count: BTreeMap<u64, usize> = BTreeMap::new();
        for b in constant.iter().flatten() {
            *count.entry(*b).or_default() += 1;
        }
        let common = count
            .iter()
            .filter(|(_, &n)| n >= 2)
            .max_by_key(|(&b, &n)| (n, std::cmp::Reverse(b)))
            .map(|(&b, _)| b);
        let singular = (0..inst.k())
            .filter(|&c| common.is_none() || constant[c] != common)
            .collect();
        SingularSpec { singular, common }
    }

    pub fn k_prime(&self) -> usize {
        self.singular.len()
    }
}

/// Cap on `(|K| + 1)^{k'}` for the singular-color enumeration.
pub const SINGULAR_ENUMERATION_CAP: u128 = 10_000_000;

/// Split graphs whose bounds equal a common `B` outside a few singular colors.
///
/// Each singular color is either unused on the clique or given to one clique
/// vertex; the other clique vertices take distinct non-singular colors (the
/// lowest free ones, or a matching against lists and weights when
/// `clique_general` is set). The unit-weight independent side is then one flow.
pub fn solve_split_singular(inst: &Instance, clique_general: bool) -> Result<SolveOutcome> {
    let sp = require_vertex_split(inst)?;
    for &v in &sp.independent {
        if inst.weight(v) != 1 || !inst.has_full_list(v) {
            return Err(Error::precondition(format!(
                "independent-side vertex {v} must have weight 1 and a full color list"
            )));
        }
    }
    if !clique_general {
        for &u in &sp.clique {
            if inst.weight(u) != 1 || !inst.has_full_list(u) {
                return Err(Error::precondition(format!(
                    "clique vertex {u} must have weight 1 and a full color list (or enable clique_general)"
                )));
            }
        }
    }
    let spec = SingularSpec::infer(inst);
    let options = (sp.clique.len() as u128 + 1).checked_pow(spec.k_prime() as u32);
    if options.is_none_or(|o| o > SINGULAR_ENUMERATION_CAP) {
        return Err(Error::precondition(format!(
            "{} singular colors with a clique of {} give more than {SINGULAR_ENUMERATION_CAP} options",
            spec.k_prime(),
            sp.clique.len()
        )));
    }
    let mut search = SingularSearch {
        inst,
        sp: &sp,
        spec: &spec,
        clique_general,
        colors: vec![usize::MAX; inst.n()],
    };
    let witness = search.descend(0).map(Coloring::new);
    Ok(SolveOutcome::from_witness(inst, witness))
}

struct SingularSearch<'a> {
    inst: &'a Instance,
    sp: &'a SplitPartition,
    spec: &'a SingularSpec,
    clique_general: bool,
    colors: Vec<usize>,
}

impl SingularSearch<'_> {
    fn descend(&mut self, i: usize) -> Option<Vec<usize>> {
        let inst = self.inst;
        if i == self.spec.singular.len() {
            return self.finish();
        }
        let c = self.spec.singular[i];
        if let Some(found) = self.descend(i + 1) {
            return Some(found);
        }
        for &u in &self.sp.clique {
            if self.colors[u] != usize::MAX
                || !inst.is_allowed(u, c)
                || inst.bound(inst.part_of(u), c) < inst.weight(u)
            {
                continue;
            }
            self.colors[u] = c;
            let found = self.descend(i + 1);
            self.colors[u] = usize::MAX;
            if found.is_some() {
                return found;
            }
        }
        None
    }

    fn finish(&self) -> Option<Vec<usize>> {
        let inst = self.inst;
        let mut colors = self.colors.clone();
        let rest: Vec<usize> = self
            .sp
            .clique
            .iter()
            .copied()
            .filter(|&u| colors[u] == usize::MAX)
            .collect();
        let free: Vec<usize> = (0..inst.k())
            .filter(|c| !self.spec.singular.contains(c))
            .collect();
        let b = self.spec.common.unwrap_or(0);
        if !rest.is_empty() {
            if self.clique_general {
                let mut ap = AssignmentProblem::new(rest.len(), free.len());
                for (r, &u) in rest.iter().enumerate() {
                    for (j, &c) in free.iter().enumerate() {
                        if inst.is_allowed(u, c) && inst.weight(u) <= b {
                            ap.allow(r, j, 0);
                        }
                    }
                }
                let a = max_weight_perfect_assignment(&ap)?;
                for (r, &u) in rest.iter().enumerate() {
                    colors[u] = free[a.col_of_row[r]];
                }
            } else {
                if rest.len() > free.len() || b == 0 {
                    return None;
                }
                for (&u, &c) in rest.iter().zip(&free) {
                    colors[u] = c;
                }
            }
        }
        let mut bounds = inst.bounds().to_vec();
        for &u in &self.sp.clique {
            let slot = &mut bounds[inst.part_of(u)][colors[u]];
            *slot = slot.checked_sub(inst.weight(u))?;
        }
        let s = &self.sp.independent;
        let part_of: Vec<usize> = s.iter().map(|&v| inst.part_of(v)).collect();
        let lists: Vec<Vec<usize>> = s
            .iter()
            .map(|&v| {
                (0..inst.k())
                    .filter(|&c| inst.neighbors(v).iter().all(|&u| colors[u] != c))
                    .collect()
            })
            .collect();
        let side = unit_flow_fill(&part_of, &lists, &bounds)?;
        for (&v, c) in s.iter().zip(side) {
            colors[v] = c;
        }
        Some(colors)
    }
}

/// Edge coloring of a split graph: degrees are at most `k` and the clique has
/// at most `k + 1` vertices, so only `O(k²)` edges remain to be enumerated.
pub fn solve_split_edges(inst: &Instance, objective: Objective) -> Result<SolveOutcome> {
    if inst.mode() != Mode::Edge {
        return Err(Error::precondition("edge mode is required"));
    }
    let sp = split_partition(inst)?;
    objective.require_profit(inst)?;
    if (0..inst.n()).any(|v| inst.degree(v) > inst.k()) || sp.clique.len() > inst.k() + 1 {
        return Ok(SolveOutcome::infeasible());
    }
    let target: Vec<u64> = inst.bounds().iter().flatten().copied().collect();
    let all: Vec<usize> = (0..inst.element_count()).collect();
    let mut best: Option<(i64, Vec<usize>)> = None;
    for_each_edge_coloring(inst, &all, objective, &mut |colors, tally, gain| {
        if tally != target.as_slice() {
            return false;
        }
        if best.as_ref().is_none_or(|(b, _)| gain > *b) {
            best = Some((gain, colors.to_vec()));
        }
        objective == Objective::Decide
    });
    Ok(SolveOutcome::from_witness(
        inst,
        best.map(|(_, c)| Coloring::new(c)),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{RawInstance, Status};
    use crate::validate::is_valid;

    fn instance(
        mode: Mode,
        n: usize,
        edges: Vec<(usize, usize)>,
        k: usize,
        bounds: Vec<u64>,
    ) -> Instance {
        let m = if mode == Mode::Vertex { n } else { edges.len() };
        Instance::new(RawInstance {
            mode,
            n,
            edges,
            k,
            p: 1,
            part_of: vec![0; m],
            weight: vec![1; m],
            bounds: vec![bounds],
            allowed: vec![(0..k).collect(); m],
            profit: None,
        })
        .unwrap()
    }

    #[test]
    fn triangle_with_pendant() {
        let inst = instance(
            Mode::Vertex,
            4,
            vec![(0, 1), (1, 2), (0, 2), (2, 3)],
            1,
            vec![4],
        );
        let sp = split_partition(&inst).unwrap();
        assert_eq!(sp.clique, vec![0, 1, 2]);
        assert_eq!(sp.independent, vec![3]);
    }

    #[test]
    fn four_cycle_is_not_split() {
        let inst = instance(
            Mode::Vertex,
            4,
            vec![(0, 1), (1, 2), (2, 3), (3, 0)],
            1,
            vec![4],
        );
        assert_eq!(split_partition(&inst), Err(Error::NotSplit));
    }

    #[test]
    fn edgeless_takes_one_vertex_as_clique() {
        let inst = instance(Mode::Vertex, 3, vec![], 1, vec![3]);
        let sp = split_partition(&inst).unwrap();
        assert_eq!((sp.clique, sp.independent), (vec![0], vec![1, 2]));
    }

    #[test]
    fn k_fixed_examples() {
        let inst = instance(Mode::Vertex, 3, vec![(0, 1), (0, 2)], 2, vec![2, 1]);
        let out = solve_split_k_fixed(&inst, Objective::Decide).unwrap();
        assert_eq!(out.witness, Some(Coloring::new(vec![1, 0, 0])));

        let tri = instance(Mode::Vertex, 3, vec![(0, 1), (1, 2), (0, 2)], 2, vec![2, 1]);
        assert_eq!(
            solve_split_k_fixed(&tri, Objective::Decide).unwrap().status,
            Status::Infeasible
        );
    }

    #[test]
    fn singular_star_examples() {
        let edges = vec![(0, 1), (0, 2), (0, 3)];
        let even = instance(Mode::Vertex, 4, edges.clone(), 2, vec![2, 2]);
        assert_eq!(SingularSpec::infer(&even).k_prime(), 0);
        assert_eq!(
            solve_split_singular(&even, false).unwrap().status,
            Status::Infeasible
        );

        let uneven = instance(Mode::Vertex, 4, edges, 2, vec![1, 3]);
        assert_eq!(SingularSpec::infer(&uneven).k_prime(), 2);
        let out = solve_split_singular(&uneven, false).unwrap();
        assert_eq!(out.witness, Some(Coloring::new(vec![0, 1, 1, 1])));
    }

    #[test]
    fn singular_with_one_special_color() {
        // clique {0, 1}; vertices 2 and 3 hang off vertex 0
        let inst = instance(
            Mode::Vertex,
            4,
            vec![(0, 1), (0, 2), (0, 3)],
            3,
            vec![2, 1, 1],
        );
        let spec = SingularSpec::infer(&inst);
        assert_eq!((spec.singular.clone(), spec.common), (vec![0], Some(1)));
        let out = solve_split_singular(&inst, false).unwrap();
        assert!(is_valid(&inst, out.witness.as_ref().unwrap()));
        let out = solve_split_singular(&inst, true).unwrap();
        assert!(is_valid(&inst, out.witness.as_ref().unwrap()));
    }

    #[test]
    fn split_edges_examples() {
        let one = instance(Mode::Edge, 2, vec![(0, 1)], 1, vec![1]);
        assert!(solve_split_edges(&one, Objective::Decide)
            .unwrap()
            .is_feasible());
        let tri = instance(Mode::Edge, 3, vec![(0, 1), (1, 2), (0, 2)], 2, vec![2, 1]);
        assert_eq!(
            solve_split_edges(&tri, Objective::Decide).unwrap().status,
            Status::Infeasible
        );
    }
}
