//! Tree decompositions: validation of supplied ones, construction from
//! elimination orderings, and normalization to nice form.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::Instance;

/// A tree decomposition as written in instance documents (vertices 0-based).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeDecomposition {
    pub bags: Vec<Vec<usize>>,
    pub tree_edges: Vec<[usize; 2]>,
    pub root: usize,
}

impl TreeDecomposition {
    pub fn width(&self) -> usize {
        self.bags
            .iter()
            .map(Vec::len)
            .max()
            .unwrap_or(0)
            .saturating_sub(1)
    }

    /// Index ranges only; the decomposition conditions are checked by [`TreeDecomposition::validate`].
    pub fn check_shape(&self, n: usize) -> Result<()> {
        let nodes = self.bags.len();
        if nodes == 0 {
            return Err(Error::InvalidDecomposition("no bags".into()));
        }
        if self.root >= nodes {
            return Err(Error::InvalidDecomposition(format!(
                "root {} out of range",
                self.root
            )));
        }
        for (i, bag) in self.bags.iter().enumerate() {
            if let Some(v) = bag.iter().find(|&&v| v >= n) {
                return Err(Error::InvalidDecomposition(format!(
                    "bag {i} holds unknown vertex {v}"
                )));
            }
        }
        for &[a, b] in &self.tree_edges {
            if a >= nodes || b >= nodes || a == b {
                return Err(Error::InvalidDecomposition(format!(
                    "bad tree edge [{a}, {b}]"
                )));
            }
        }
        Ok(())
    }

    /// Checks that the bags form a tree covering every vertex and edge, and
    /// that the bags holding any one vertex are connected.
    pub fn validate(&self, inst: &Instance) -> Result<()> {
        self.check_shape(inst.n())?;
        let nodes = self.bags.len();
        let adj = self.adjacency();
        if self.tree_edges.len() != nodes - 1 || reach(&adj, self.root, |_| true).len() != nodes {
            return Err(Error::InvalidDecomposition(
                "bags are not connected as a tree".into(),
            ));
        }
        let mut holds = vec![vec![false; inst.n()]; nodes];
        for (i, bag) in self.bags.iter().enumerate() {
            for &v in bag {
                holds[i][v] = true;
            }
        }
        for v in 0..inst.n() {
            if !(0..nodes).any(|i| holds[i][v]) {
                return Err(Error::InvalidDecomposition(format!(
                    "vertex {v} is in no bag"
                )));
            }
        }
        for &(u, v) in inst.edges() {
            if !(0..nodes).any(|i| holds[i][u] && holds[i][v]) {
                return Err(Error::InvalidDecomposition(format!(
                    "edge ({u}, {v}) is in no bag"
                )));
            }
        }
        for v in 0..inst.n() {
            let with_v: Vec<usize> = (0..nodes).filter(|&i| holds[i][v]).collect();
            if reach(&adj, with_v[0], |i| holds[i][v]).len() != with_v.len() {
                return Err(Error::InvalidDecomposition(format!(
                    "bags holding vertex {v} are not connected"
                )));
            }
        }
        Ok(())
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.bags.len()];
        for &[a, b] in &self.tree_edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }
}

fn reach(adj: &[Vec<usize>], start: usize, keep: impl Fn(usize) -> bool) -> Vec<usize> {
    let mut seen = vec![false; adj.len()];
    seen[start] = true;
    let mut out = vec![start];
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for &y in &adj[x] {
            if !seen[y] && keep(y) {
                seen[y] = true;
                out.push(y);
                queue.push_back(y);
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    Leaf,
    Introduce(usize),
    Forget(usize),
    Join,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiceNode {
    /// Sorted.
    pub bag: Vec<usize>,
    pub kind: NodeKind,
    pub children: Vec<usize>,
}

/// A nice tree decomposition. Leaves and the root have empty bags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiceDecomposition {
    nodes: Vec<NiceNode>,
    root: usize,
}

impl NiceDecomposition {
    pub fn nodes(&self) -> &[NiceNode] {
        &self.nodes
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn width(&self) -> usize {
        self.nodes
            .iter()
            .map(|x| x.bag.len())
            .max()
            .unwrap_or(0)
            .saturating_sub(1)
    }

    /// Children before parents.
    pub fn post_order(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![(self.root, false)];
        while let Some((x, expanded)) = stack.pop() {
            if expanded {
                out.push(x);
            } else {
                stack.push((x, true));
                for &c in self.nodes[x].children.iter().rev() {
                    stack.push((c, false));
                }
            }
        }
        out
    }

    /// Node-kind shape rules plus the decomposition conditions for `inst`.
    pub fn check(&self, inst: &Instance) -> Result<()> {
        let bad =
            |i: usize, what: &str| Err(Error::InvalidDecomposition(format!("node {i}: {what}")));
        for (i, node) in self.nodes.iter().enumerate() {
            let child_bag = |j: usize| &self.nodes[node.children[j]].bag;
            match node.kind {
                NodeKind::Leaf => {
                    if !node.children.is_empty() || !node.bag.is_empty() {
                        return bad(i, "leaf must have an empty bag and no children");
                    }
                }
                NodeKind::Introduce(v) => {
                    if node.children.len() != 1
                        || child_bag(0).contains(&v)
                        || without(&node.bag, v) != *child_bag(0)
                    {
                        return bad(i, "introduce must add exactly its vertex to the child bag");
                    }
                }
                NodeKind::Forget(v) => {
                    if node.children.len() != 1
                        || node.bag.contains(&v)
                        || without(child_bag(0), v) != node.bag
                    {
                        return bad(i, "forget must drop exactly its vertex from the child bag");
                    }
                }
                NodeKind::Join => {
                    if node.children.len() != 2
                        || *child_bag(0) != node.bag
                        || *child_bag(1) != node.bag
                    {
                        return bad(i, "join children must share its bag");
                    }
                }
            }
        }
        if self.post_order().len() != self.nodes.len() {
            return Err(Error::InvalidDecomposition(
                "nodes unreachable from the root".into(),
            ));
        }
        let mut tree_edges = Vec::new();
        for (i, node) in self.nodes.iter().enumerate() {
            for &c in &node.children {
                tree_edges.push([i, c]);
            }
        }
        TreeDecomposition {
            bags: self.nodes.iter().map(|x| x.bag.clone()).collect(),
            tree_edges,
            root: self.root,
        }
        .validate(inst)
    }

    fn push(&mut self, bag: Vec<usize>, kind: NodeKind, children: Vec<usize>) -> usize {
        self.nodes.push(NiceNode {
            bag,
            kind,
            children,
        });
        self.nodes.len() - 1
    }

    /// Converts a (validated) decomposition into nice form.
    pub fn from_tree(td: &TreeDecomposition) -> NiceDecomposition {
        let count = td.bags.len();
        let adj = td.adjacency();
        let bags: Vec<Vec<usize>> = td
            .bags
            .iter()
            .map(|b| {
                let mut b = b.clone();
                b.sort_unstable();
                b.dedup();
                b
            })
            .collect();

        // root the tree and list nodes parents-first
        let mut parent = vec![usize::MAX; count];
        let mut order = vec![td.root];
        let mut seen = vec![false; count];
        seen[td.root] = true;
        let mut head = 0;
        while head < order.len() {
            let x = order[head];
            head += 1;
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = x;
                    order.push(y);
                }
            }
        }
        let mut kids = vec![Vec::new(); count];
        for &x in &order[1..] {
            kids[parent[x]].push(x);
        }

        let mut nice = NiceDecomposition {
            nodes: Vec::new(),
            root: 0,
        };
        let mut top = vec![usize::MAX; count];
        for &t in order.iter().rev() {
            let bag = &bags[t];
            let mut branches: Vec<usize> =
                kids[t].iter().map(|&c| nice.morph(top[c], bag)).collect();
            if branches.is_empty() {
                let leaf = nice.push(Vec::new(), NodeKind::Leaf, Vec::new());
                branches.push(nice.morph(leaf, bag));
            }
            let mut acc = branches[0];
            for &b in &branches[1..] {
                acc = nice.push(bag.clone(), NodeKind::Join, vec![acc, b]);
            }
            top[t] = acc;
        }
        nice.root = nice.morph(top[td.root], &[]);
        nice
    }

    /// Chain of forgets then introduces turning node `from`'s bag into `target`.
    fn morph(&mut self, from: usize, target: &[usize]) -> usize {
        let mut cur = from;
        let start = self.nodes[from].bag.clone();
        for &v in start.iter().filter(|v| !target.contains(v)) {
            let bag = without(&self.nodes[cur].bag, v);
            cur = self.push(bag, NodeKind::Forget(v), vec![cur]);
        }
        for &v in target.iter().filter(|v| !start.contains(v)) {
            let mut bag = self.nodes[cur].bag.clone();
            bag.push(v);
            bag.sort_unstable();
            cur = self.push(bag, NodeKind::Introduce(v), vec![cur]);
        }
        cur
    }
}

fn without(bag: &[usize], v: usize) -> Vec<usize> {
    bag.iter().copied().filter(|&x| x != v).collect()
}

/// Width of the elimination ordering `order`: the largest number of
/// not-yet-eliminated neighbors a vertex has when it is eliminated.
pub fn elimination_width(inst: &Instance, order: &[usize]) -> usize {
    eliminate(inst, order)
        .iter()
        .map(Vec::len)
        .max()
        .unwrap_or(0)
}

/// For each vertex in `order`, its higher neighbors at elimination time.
fn eliminate(inst: &Instance, order: &[usize]) -> Vec<Vec<usize>> {
    let n = inst.n();
    let mut adj: Vec<Vec<bool>> = vec![vec![false; n]; n];
    for &(u, v) in inst.edges() {
        adj[u][v] = true;
        adj[v][u] = true;
    }
    let mut gone = vec![false; n];
    let mut out = Vec::with_capacity(order.len());
    for &v in order {
        let higher: Vec<usize> = (0..n)
            .filter(|&u| !gone[u] && u != v && adj[v][u])
            .collect();
        for (i, &a) in higher.iter().enumerate() {
            for &b in &higher[i + 1..] {
                adj[a][b] = true;
                adj[b][a] = true;
            }
        }
        gone[v] = true;
        out.push(higher);
    }
    out
}

/// Greedy min-fill ordering; ties go to the smaller degree, then the smaller index.
pub fn min_fill_order(inst: &Instance) -> Vec<usize> {
    let n = inst.n();
    let mut adj: Vec<Vec<bool>> = vec![vec![false; n]; n];
    for &(u, v) in inst.edges() {
        adj[u][v] = true;
        adj[v][u] = true;
    }
    let mut gone = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let mut best: Option<(usize, usize, usize)> = None;
        for v in (0..n).filter(|&v| !gone[v]) {
            let nb: Vec<usize> = (0..n).filter(|&u| !gone[u] && adj[v][u]).collect();
            let mut fill = 0;
            for (i, &a) in nb.iter().enumerate() {
                fill += nb[i + 1..].iter().filter(|&&b| !adj[a][b]).count();
            }
            let key = (fill, nb.len(), v);
            if best.is_none_or(|b| key < b) {
                best = Some(key);
            }
        }
        let (_, _, v) = best.unwrap();
        let nb: Vec<usize> = (0..n).filter(|&u| !gone[u] && adj[v][u]).collect();
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                adj[a][b] = true;
                adj[b][a] = true;
            }
        }
        gone[v] = true;
        order.push(v);
    }
    order
}

/// Largest vertex count for which the exact treewidth is computed.
pub const EXACT_TREEWIDTH_LIMIT: usize = 10;

/// Exact treewidth and an optimal elimination ordering, by dynamic
/// programming over the set of already eliminated vertices.
pub fn exact_treewidth(inst: &Instance) -> Option<(usize, Vec<usize>)> {
    let n = inst.n();
    if n > EXACT_TREEWIDTH_LIMIT {
        return None;
    }
    if n == 0 {
        return Some((0, Vec::new()));
    }
    let nb: Vec<u32> = (0..n)
        .map(|v| inst.neighbors(v).iter().fold(0u32, |m, &u| m | (1 << u)))
        .collect();
    // vertices outside `s ∪ {v}` reachable from v through s
    let q = |s: u32, v: usize| -> u32 {
        let mut seen = 1u32 << v;
        let mut frontier = 1u32 << v;
        let mut found = 0u32;
        while frontier != 0 {
            let x = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let out = nb[x] & !seen;
            seen |= out;
            found |= out & !s;
            frontier |= out & s;
        }
        found
    };
    let full = (1u32 << n) - 1;
    let mut tw = vec![i32::MAX; 1 << n];
    let mut pick = vec![0usize; 1 << n];
    tw[0] = -1;
    for s in 1..=full {
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let before = s & !(1 << v);
            let cost = tw[before as usize].max(q(before, v).count_ones() as i32);
            if cost < tw[s as usize] {
                tw[s as usize] = cost;
                pick[s as usize] = v;
            }
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut s = full;
    while s != 0 {
        let v = pick[s as usize];
        order.push(v);
        s &= !(1 << v);
    }
    order.reverse();
    Some((tw[full as usize].max(0) as usize, order))
}

/// Decomposition with one bag `{v} ∪ N⁺(v)` per eliminated vertex.
pub fn decomposition_from_order(inst: &Instance, order: &[usize]) -> TreeDecomposition {
    let n = inst.n();
    if n == 0 {
        return TreeDecomposition {
            bags: vec![Vec::new()],
            tree_edges: Vec::new(),
            root: 0,
        };
    }
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let higher = eliminate(inst, order);
    let mut bags = Vec::with_capacity(n);
    let mut tree_edges = Vec::new();
    let mut roots = Vec::new();
    for (i, &v) in order.iter().enumerate() {
        let mut bag = higher[i].clone();
        bag.push(v);
        bag.sort_unstable();
        bags.push(bag);
        match higher[i].iter().map(|&u| pos[u]).min() {
            Some(j) => tree_edges.push([i, j]),
            None => roots.push(i),
        }
    }
    for w in roots.windows(2) {
        tree_edges.push([w[0], w[1]]);
    }
    TreeDecomposition {
        bags,
        tree_edges,
        root: *roots.last().unwrap(),
    }
}

/// Validates and normalizes `supplied`, or builds a decomposition (exact for
/// small graphs, min-fill otherwise). Returns the nice form and its width.
pub fn build_nice_decomposition(
    inst: &Instance,
    supplied: Option<&TreeDecomposition>,
) -> Result<(NiceDecomposition, usize)> {
    let td = match supplied {
        Some(td) => {
            td.validate(inst)?;
            td.clone()
        }
        None => {
            let order = match exact_treewidth(inst) {
                Some((_, order)) => order,
                None => min_fill_order(inst),
            };
            decomposition_from_order(inst, &order)
        }
    };
    let nice = NiceDecomposition::from_tree(&td);
    let width = nice.width();
    Ok((nice, width))
}

/// Treewidth upper bound from the construction above; exact when `n ≤ 10`.
pub fn treewidth_estimate(inst: &Instance) -> (usize, bool) {
    match exact_treewidth(inst) {
        Some((w, _)) => (w, true),
        None => (elimination_width(inst, &min_fill_order(inst)), false),
    }
}
