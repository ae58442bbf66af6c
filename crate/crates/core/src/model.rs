//! Instance data model.
//!
//! Everything here is 0-indexed: vertices, edges, parts and colors. The JSON
//! codec is the only place where parts and colors become 1-based.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Which element set is colored.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Vertex,
    Edge,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Vertex => "vertex",
            Mode::Edge => "edge",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Unchecked instance fields. Turn into an [`Instance`] with [`Instance::new`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawInstance {
    pub mode: Mode,
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    pub k: usize,
    pub p: usize,
    pub part_of: Vec<usize>,
    pub weight: Vec<u64>,
    /// `bounds[h][c]`, a `p × k` matrix.
    pub bounds: Vec<Vec<u64>>,
    pub allowed: Vec<Vec<usize>>,
    /// Optional `element × color` profit matrix.
    pub profit: Option<Vec<Vec<i64>>>,
}

/// A validated WeightedLocallyBoundedListColoring instance (vertex or edge variant).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    raw: RawInstance,
    adjacency: Vec<Vec<usize>>,
    edge_index: HashMap<(usize, usize), usize>,
    part_totals: Vec<u64>,
}

fn edge_key(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl Instance {
    /// Checks every invariant and builds the instance.
    pub fn new(mut raw: RawInstance) -> Result<Self> {
        if raw.k == 0 {
            return Err(Error::invalid("k", "at least one color is required"));
        }
        if raw.p == 0 {
            return Err(Error::invalid("p", "at least one part is required"));
        }
        let mut adjacency = vec![Vec::new(); raw.n];
        let mut edge_index = HashMap::with_capacity(raw.edges.len());
        for (i, &(u, v)) in raw.edges.iter().enumerate() {
            let path = format!("edges[{i}]");
            if u >= raw.n || v >= raw.n {
                return Err(Error::invalid(
                    path,
                    format!("endpoint out of range 0..{}", raw.n),
                ));
            }
            if u == v {
                return Err(Error::invalid(path, "self-loop"));
            }
            if edge_index.insert(edge_key(u, v), i).is_some() {
                return Err(Error::invalid(path, "duplicate edge"));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }

        let m = match raw.mode {
            Mode::Vertex => raw.n,
            Mode::Edge => raw.edges.len(),
        };
        for (name, len) in [
            ("part_of", raw.part_of.len()),
            ("weight", raw.weight.len()),
            ("allowed", raw.allowed.len()),
        ] {
            if len != m {
                return Err(Error::invalid(
                    name,
                    format!("expected {m} entries ({} mode), found {len}", raw.mode),
                ));
            }
        }
        let mut part_totals = vec![0u64; raw.p];
        for e in 0..m {
            let h = raw.part_of[e];
            if h >= raw.p {
                return Err(Error::invalid(
                    format!("part_of[{e}]"),
                    format!("part {} out of range 1..={}", h + 1, raw.p),
                ));
            }
            let w = raw.weight[e];
            if w == 0 {
                return Err(Error::invalid(
                    format!("weight[{e}]"),
                    "weights must be positive",
                ));
            }
            part_totals[h] = part_totals[h]
                .checked_add(w)
                .ok_or_else(|| Error::invalid(format!("weight[{e}]"), "weight overflow"))?;
            let list = &mut raw.allowed[e];
            if list.is_empty() {
                return Err(Error::invalid(
                    format!("allowed[{e}]"),
                    "color list is empty",
                ));
            }
            if let Some(&c) = list.iter().find(|&&c| c >= raw.k) {
                return Err(Error::invalid(
                    format!("allowed[{e}]"),
                    format!("color {} out of range 1..={}", c + 1, raw.k),
                ));
            }
            list.sort_unstable();
            list.dedup();
        }

        if raw.bounds.len() != raw.p {
            return Err(Error::invalid(
                "bounds",
                format!("expected {} rows, found {}", raw.p, raw.bounds.len()),
            ));
        }
        for (h, row) in raw.bounds.iter().enumerate() {
            let path = format!("bounds[{}]", h + 1);
            if row.len() != raw.k {
                return Err(Error::invalid(
                    path,
                    format!("expected {} columns, found {}", raw.k, row.len()),
                ));
            }
            let sum = row
                .iter()
                .try_fold(0u64, |acc, &b| acc.checked_add(b))
                .ok_or_else(|| Error::invalid(path.clone(), "bound overflow"))?;
            if sum != part_totals[h] {
                return Err(Error::invalid(
                    path,
                    format!(
                        "bounds sum to {sum} but part {} has total weight {}",
                        h + 1,
                        part_totals[h]
                    ),
                ));
            }
        }

        if let Some(profit) = &raw.profit {
            if profit.len() != m {
                return Err(Error::invalid(
                    "profit",
                    format!("expected {m} rows, found {}", profit.len()),
                ));
            }
            for (e, row) in profit.iter().enumerate() {
                if row.len() != raw.k {
                    return Err(Error::invalid(
                        format!("profit[{e}]"),
                        format!("expected {} columns, found {}", raw.k, row.len()),
                    ));
                }
            }
        }

        Ok(Instance {
            raw,
            adjacency,
            edge_index,
            part_totals,
        })
    }

    pub fn raw(&self) -> &RawInstance {
        &self.raw
    }

    pub fn into_raw(self) -> RawInstance {
        self.raw
    }

    pub fn mode(&self) -> Mode {
        self.raw.mode
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.raw.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.raw.edges
    }

    pub fn k(&self) -> usize {
        self.raw.k
    }

    pub fn p(&self) -> usize {
        self.raw.p
    }

    /// Number of colored elements: vertices in vertex mode, edges in edge mode.
    pub fn element_count(&self) -> usize {
        self.raw.part_of.len()
    }

    pub fn part_of(&self, e: usize) -> usize {
        self.raw.part_of[e]
    }

    pub fn weight(&self, e: usize) -> u64 {
        self.raw.weight[e]
    }

    pub fn bound(&self, h: usize, c: usize) -> u64 {
        self.raw.bounds[h][c]
    }

    pub fn bounds(&self) -> &[Vec<u64>] {
        &self.raw.bounds
    }

    pub fn part_total(&self, h: usize) -> u64 {
        self.part_totals[h]
    }

    /// Sorted allowed colors of element `e`.
    pub fn allowed(&self, e: usize) -> &[usize] {
        &self.raw.allowed[e]
    }

    pub fn is_allowed(&self, e: usize, c: usize) -> bool {
        self.raw.allowed[e].binary_search(&c).is_ok()
    }

    pub fn has_full_list(&self, e: usize) -> bool {
        self.raw.allowed[e].len() == self.raw.k
    }

    pub fn profit(&self) -> Option<&[Vec<i64>]> {
        self.raw.profit.as_deref()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.edge_index.contains_key(&edge_key(u, v))
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edge_index.get(&edge_key(u, v)).copied()
    }

    /// Whether two distinct elements must receive different colors.
    pub fn elements_conflict(&self, a: usize, b: usize) -> bool {
        if a == b {
            return false;
        }
        match self.raw.mode {
            Mode::Vertex => self.adjacent(a, b),
            Mode::Edge => {
                let (u1, v1) = self.raw.edges[a];
                let (u2, v2) = self.raw.edges[b];
                u1 == u2 || u1 == v2 || v1 == u2 || v1 == v2
            }
        }
    }

    /// Elements conflicting with `e`, sorted.
    pub fn conflicts_of(&self, e: usize) -> Vec<usize> {
        match self.raw.mode {
            Mode::Vertex => self.adjacency[e].clone(),
            Mode::Edge => {
                let (u, v) = self.raw.edges[e];
                let mut out: Vec<usize> = [u, v]
                    .iter()
                    .flat_map(|&end| self.adjacency[end].iter().map(move |&x| (end, x)))
                    .filter_map(|(end, x)| self.edge_index(end, x))
                    .filter(|&f| f != e)
                    .collect();
                out.sort_unstable();
                out.dedup();
                out
            }
        }
    }

    /// Same instance with its profit matrix replaced.
    pub fn with_profit(&self, profit: Option<Vec<Vec<i64>>>) -> Result<Instance> {
        let mut raw = self.raw.clone();
        raw.profit = profit;
        Instance::new(raw)
    }

    /// Profit of a total assignment, if a profit matrix is present.
    pub fn profit_of(&self, col: &Coloring) -> Option<i64> {
        self.profit().map(|pi| {
            col.as_slice()
                .iter()
                .enumerate()
                .map(|(e, &c)| pi[e][c])
                .sum()
        })
    }
}

/// One color per element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coloring {
    color_of: Vec<usize>,
}

impl Coloring {
    pub fn new(color_of: Vec<usize>) -> Self {
        Coloring { color_of }
    }

    pub fn color_of(&self, e: usize) -> usize {
        self.color_of[e]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.color_of
    }

    pub fn len(&self) -> usize {
        self.color_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.color_of.is_empty()
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.color_of
    }

    /// Per-part, per-color weight totals. Colors outside `0..k` are ignored.
    pub fn tally(&self, inst: &Instance) -> Vec<Vec<u64>> {
        let mut t = vec![vec![0u64; inst.k()]; inst.p()];
        for (e, &c) in self.color_of.iter().enumerate().take(inst.element_count()) {
            if c < inst.k() {
                t[inst.part_of(e)][c] += inst.weight(e);
            }
        }
        t
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Feasible,
    Infeasible,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Feasible => "feasible",
            Status::Infeasible => "infeasible",
        }
    }
}

/// What a solver is asked to do with the profit matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Objective {
    Decide,
    Maximize,
    Minimize,
}

impl Objective {
    /// Multiplier applied to profits so that every engine only ever maximizes.
    pub(crate) fn sign(self) -> i64 {
        match self {
            Objective::Decide => 0,
            Objective::Maximize => 1,
            Objective::Minimize => -1,
        }
    }

    pub(crate) fn require_profit(self, inst: &Instance) -> Result<()> {
        if self != Objective::Decide && inst.profit().is_none() {
            return Err(Error::precondition(format!(
                "objective {self:?} requires a profit matrix"
            )));
        }
        Ok(())
    }

    /// Profit of assigning color `c` to element `e` as seen by a maximizing engine.
    pub(crate) fn scaled_profit(self, inst: &Instance, e: usize, c: usize) -> i64 {
        match (self, inst.profit()) {
            (Objective::Decide, _) | (_, None) => 0,
            (o, Some(pi)) => o.sign() * pi[e][c],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOutcome {
    pub status: Status,
    pub witness: Option<Coloring>,
    /// Profit of the witness; present iff feasible and the instance has a profit matrix.
    pub objective: Option<i64>,
}

impl SolveOutcome {
    pub fn infeasible() -> Self {
        SolveOutcome {
            status: Status::Infeasible,
            witness: None,
            objective: None,
        }
    }

    pub fn feasible(inst: &Instance, witness: Coloring) -> Self {
        let objective = inst.profit_of(&witness);
        SolveOutcome {
            status: Status::Feasible,
            witness: Some(witness),
            objective,
        }
    }

    pub fn from_witness(inst: &Instance, witness: Option<Coloring>) -> Self {
        match witness {
            Some(w) => SolveOutcome::feasible(inst, w),
            None => SolveOutcome::infeasible(),
        }
    }

    pub fn is_feasible(&self) -> bool {
        self.status == Status::Feasible
    }
}
