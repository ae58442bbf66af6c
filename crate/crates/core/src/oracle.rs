//! Exhaustive search over all total assignments. Every other solver is
//! tested against this one.

use crate::error::{Error, Result};
use crate::model::{Coloring, Instance, Objective, SolveOutcome};

/// Default cap on `k^|elements|`.
pub const DEFAULT_ORACLE_CAP: u128 = 10_000_000;

/// Size of the raw search space, `k^m`, saturating.
pub fn search_space(inst: &Instance) -> u128 {
    let k = inst.k() as u128;
    (0..inst.element_count()).fold(1u128, |acc, _| acc.saturating_mul(k))
}

pub fn within_oracle_range(inst: &Instance) -> bool {
    search_space(inst) <= DEFAULT_ORACLE_CAP
}

pub fn brute_force_solve(inst: &Instance, objective: Objective) -> Result<SolveOutcome> {
    brute_force_solve_capped(inst, objective, DEFAULT_ORACLE_CAP)
}

/// Enumerates assignments in lexicographic order of `(color of element 0, 1, ...)`.
///
/// `Decide` stops at the first valid assignment; the optimizing objectives keep
/// the first assignment reaching the extreme profit. Branches that already
/// break properness or exceed a bound are cut, which never drops a valid
/// assignment.
pub fn brute_force_solve_capped(
    inst: &Instance,
    objective: Objective,
    cap: u128,
) -> Result<SolveOutcome> {
    let space = search_space(inst);
    if space > cap {
        return Err(Error::TooLarge {
            assignments: space,
            cap,
        });
    }
    objective.require_profit(inst)?;

    let m = inst.element_count();
    let earlier: Vec<Vec<usize>> = (0..m)
        .map(|e| {
            inst.conflicts_of(e)
                .into_iter()
                .filter(|&f| f < e)
                .collect()
        })
        .collect();
    let mut search = Search {
        inst,
        objective,
        earlier,
        colors: vec![0; m],
        tally: vec![vec![0; inst.k()]; inst.p()],
        best: None,
    };
    search.descend(0, 0);
    Ok(SolveOutcome::from_witness(
        inst,
        search.best.map(|(_, c)| c),
    ))
}

struct Search<'a> {
    inst: &'a Instance,
    objective: Objective,
    earlier: Vec<Vec<usize>>,
    colors: Vec<usize>,
    tally: Vec<Vec<u64>>,
    best: Option<(i64, Coloring)>,
}

impl Search<'_> {
    /// Returns `true` when the search can stop.
    fn descend(&mut self, e: usize, profit: i64) -> bool {
        let inst = self.inst;
        if e == inst.element_count() {
            let complete = (0..inst.p()).all(|h| self.tally[h] == inst.bounds()[h]);
            if !complete {
                return false;
            }
            let improves = self.best.as_ref().is_none_or(|(b, _)| profit > *b);
            if improves {
                self.best = Some((profit, Coloring::new(self.colors.clone())));
            }
            return self.objective == Objective::Decide;
        }
        let h = inst.part_of(e);
        let w = inst.weight(e);
        for &c in inst.allowed(e) {
            if self.earlier[e].iter().any(|&f| self.colors[f] == c) {
                continue;
            }
            if self.tally[h][c] + w > inst.bound(h, c) {
                continue;
            }
            self.colors[e] = c;
            self.tally[h][c] += w;
            let gain = self.objective.scaled_profit(inst, e, c);
            let stop = self.descend(e + 1, profit + gain);
            self.tally[h][c] -= w;
            if stop {
                return true;
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Mode, RawInstance, Status};
    use crate::validate::is_valid;

    fn vertex_instance(
        n: usize,
        edges: Vec<(usize, usize)>,
        k: usize,
        bounds: Vec<u64>,
    ) -> Instance {
        Instance::new(RawInstance {
            mode: Mode::Vertex,
            n,
            edges,
            k,
            p: 1,
            part_of: vec![0; n],
            weight: vec![1; n],
            bounds: vec![bounds],
            allowed: vec![(0..k).collect(); n],
            profit: None,
        })
        .unwrap()
    }

    #[test]
    fn path_has_unique_witness() {
        let inst = vertex_instance(3, vec![(0, 1), (1, 2)], 2, vec![2, 1]);
        let out = brute_force_solve(&inst, Objective::Decide).unwrap();
        assert_eq!(out.witness, Some(Coloring::new(vec![0, 1, 0])));
    }

    #[test]
    fn triangle_is_not_two_colorable() {
        for bounds in [vec![3, 0], vec![2, 1], vec![1, 2], vec![0, 3]] {
            let inst = vertex_instance(3, vec![(0, 1), (1, 2), (0, 2)], 2, bounds);
            assert_eq!(
                brute_force_solve(&inst, Objective::Decide).unwrap().status,
                Status::Infeasible
            );
        }
    }

    #[test]
    fn cap_is_enforced() {
        let inst = vertex_instance(3, vec![], 2, vec![2, 1]);
        assert!(matches!(
            brute_force_solve_capped(&inst, Objective::Decide, 7),
            Err(Error::TooLarge {
                assignments: 8,
                cap: 7
            })
        ));
        assert!(brute_force_solve_capped(&inst, Objective::Decide, 8).is_ok());
    }

    #[test]
    fn maximize_requires_profit() {
        let inst = vertex_instance(1, vec![], 1, vec![1]);
        assert!(matches!(
            brute_force_solve(&inst, Objective::Maximize),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn maximize_and_minimize_pick_extremes() {
        let mut raw = vertex_instance(2, vec![], 2, vec![1, 1]).into_raw();
        raw.profit = Some(vec![vec![5, 0], vec![1, 3]]);
        let inst = Instance::new(raw).unwrap();
        let max = brute_force_solve(&inst, Objective::Maximize).unwrap();
        assert_eq!(max.objective, Some(8));
        assert!(is_valid(&inst, max.witness.as_ref().unwrap()));
        let min = brute_force_solve(&inst, Objective::Minimize).unwrap();
        assert_eq!(min.objective, Some(1));
    }
}
