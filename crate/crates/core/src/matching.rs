//! Flow and matching primitives for the special-case solvers.

use std::collections::VecDeque;

/// An arc from a left node to a right node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arc {
    pub left: usize,
    pub right: usize,
    pub capacity: u64,
}

/// Bipartite transportation network: each left node may send up to its
/// supply, each right node may absorb up to its demand.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CapacitatedBipartiteNetwork {
    pub supply: Vec<u64>,
    pub demand: Vec<u64>,
    pub arcs: Vec<Arc>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowResult {
    pub value: u64,
    /// Flow on each arc, aligned with `network.arcs`.
    pub arc_flow: Vec<u64>,
    /// All left supplies are fully shipped.
    pub saturated: bool,
}

impl CapacitatedBipartiteNetwork {
    pub fn new(left: usize, right: usize) -> Self {
        CapacitatedBipartiteNetwork {
            supply: vec![0; left],
            demand: vec![0; right],
            arcs: Vec::new(),
        }
    }

    pub fn left_len(&self) -> usize {
        self.supply.len()
    }

    pub fn right_len(&self) -> usize {
        self.demand.len()
    }

    pub fn add_arc(&mut self, left: usize, right: usize, capacity: u64) -> usize {
        assert!(
            left < self.left_len() && right < self.right_len(),
            "arc endpoint out of range"
        );
        self.arcs.push(Arc {
            left,
            right,
            capacity,
        });
        self.arcs.len() - 1
    }
}

struct Residual {
    to: Vec<usize>,
    cap: Vec<u64>,
    head: Vec<Vec<usize>>,
}

impl Residual {
    fn new(nodes: usize) -> Self {
        Residual {
            to: Vec::new(),
            cap: Vec::new(),
            head: vec![Vec::new(); nodes],
        }
    }

    /// Adds a forward/backward pair and returns the forward index.
    fn add(&mut self, from: usize, to: usize, cap: u64) -> usize {
        let id = self.to.len();
        self.to.push(to);
        self.cap.push(cap);
        self.head[from].push(id);
        self.to.push(from);
        self.cap.push(0);
        self.head[to].push(id + 1);
        id
    }
}

/// Integral maximum flow by shortest augmenting paths (Edmonds–Karp).
pub fn max_flow_saturate(net: &CapacitatedBipartiteNetwork) -> FlowResult {
    let left = net.left_len();
    let right = net.right_len();
    let source = left + right;
    let sink = source + 1;
    let mut g = Residual::new(left + right + 2);
    for (i, &s) in net.supply.iter().enumerate() {
        g.add(source, i, s);
    }
    for (j, &d) in net.demand.iter().enumerate() {
        g.add(left + j, sink, d);
    }
    let arc_ids: Vec<usize> = net
        .arcs
        .iter()
        .map(|a| g.add(a.left, left + a.right, a.capacity))
        .collect();

    let mut value = 0u64;
    let mut via = vec![usize::MAX; left + right + 2];
    loop {
        via.iter_mut().for_each(|x| *x = usize::MAX);
        let mut queue = VecDeque::from([source]);
        let mut reached = false;
        while let Some(u) = queue.pop_front() {
            for &id in &g.head[u] {
                let x = g.to[id];
                if g.cap[id] > 0 && x != source && via[x] == usize::MAX {
                    via[x] = id;
                    if x == sink {
                        reached = true;
                        break;
                    }
                    queue.push_back(x);
                }
            }
            if reached {
                break;
            }
        }
        if !reached {
            break;
        }
        let mut push = u64::MAX;
        let mut x = sink;
        while x != source {
            let id = via[x];
            push = push.min(g.cap[id]);
            x = g.to[id ^ 1];
        }
        let mut x = sink;
        while x != source {
            let id = via[x];
            g.cap[id] -= push;
            g.cap[id ^ 1] += push;
            x = g.to[id ^ 1];
        }
        value += push;
    }

    let arc_flow = arc_ids.iter().map(|&id| g.cap[id ^ 1]).collect();
    let total_supply: u64 = net.supply.iter().sum();
    FlowResult {
        value,
        arc_flow,
        saturated: value == total_supply,
    }
}

/// Rows must each be matched to a distinct column; `None` marks a forbidden pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssignmentProblem {
    pub rows: usize,
    pub cols: usize,
    pub weight: Vec<Vec<Option<i64>>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    /// Column matched to each row.
    pub col_of_row: Vec<usize>,
    pub total: i64,
}

impl AssignmentProblem {
    pub fn new(rows: usize, cols: usize) -> Self {
        AssignmentProblem {
            rows,
            cols,
            weight: vec![vec![None; cols]; rows],
        }
    }

    pub fn allow(&mut self, row: usize, col: usize, weight: i64) {
        self.weight[row][col] = Some(weight);
    }
}

/// Row count up to which the exhaustive search is used.
pub const EXHAUSTIVE_ROWS: usize = 8;

/// Perfect assignment of maximum total weight, or `None` if every row cannot be matched.
pub fn max_weight_perfect_assignment(ap: &AssignmentProblem) -> Option<Assignment> {
    if ap.rows <= EXHAUSTIVE_ROWS {
        assignment_exhaustive(ap)
    } else {
        assignment_hungarian(ap)
    }
}

/// Depth-first search over all injective row → column maps. Ties keep the
/// lexicographically first map.
pub fn assignment_exhaustive(ap: &AssignmentProblem) -> Option<Assignment> {
    fn go(
        ap: &AssignmentProblem,
        row: usize,
        used: &mut [bool],
        cur: &mut Vec<usize>,
        sum: i64,
        best: &mut Option<Assignment>,
    ) {
        if row == ap.rows {
            if best.as_ref().is_none_or(|b| sum > b.total) {
                *best = Some(Assignment {
                    col_of_row: cur.clone(),
                    total: sum,
                });
            }
            return;
        }
        for col in 0..ap.cols {
            if used[col] {
                continue;
            }
            if let Some(w) = ap.weight[row][col] {
                used[col] = true;
                cur.push(col);
                go(ap, row + 1, used, cur, sum + w, best);
                cur.pop();
                used[col] = false;
            }
        }
    }
    if ap.rows > ap.cols {
        return None;
    }
    let mut best = None;
    go(
        ap,
        0,
        &mut vec![false; ap.cols],
        &mut Vec::with_capacity(ap.rows),
        0,
        &mut best,
    );
    best
}

/// Hungarian method with potentials (shortest augmenting paths), `O(rows² · cols)`.
/// Forbidden pairs get a cost large enough that they are only used when no
/// perfect assignment avoids them, in which case the result is `None`.
pub fn assignment_hungarian(ap: &AssignmentProblem) -> Option<Assignment> {
    let (n, m) = (ap.rows, ap.cols);
    if n > m {
        return None;
    }
    if n == 0 {
        return Some(Assignment {
            col_of_row: Vec::new(),
            total: 0,
        });
    }
    let max_abs = ap
        .weight
        .iter()
        .flatten()
        .flatten()
        .map(|w| w.unsigned_abs() as i128)
        .max()
        .unwrap_or(0);
    let forbidden = (max_abs + 1) * 2 * (n as i128 + 1);
    // minimize cost = -weight
    let cost = |i: usize, j: usize| -> i128 {
        match ap.weight[i][j] {
            Some(w) => -(w as i128),
            None => forbidden,
        }
    };

    // 1-based arrays, column 0 is the virtual start
    let mut u = vec![0i128; n + 1];
    let mut v = vec![0i128; m + 1];
    let mut row_of = vec![0usize; m + 1];
    let mut way = vec![0usize; m + 1];
    for i in 1..=n {
        row_of[0] = i;
        let mut j0 = 0usize;
        let mut minv = vec![i128::MAX; m + 1];
        let mut used = vec![false; m + 1];
        loop {
            used[j0] = true;
            let i0 = row_of[j0];
            let mut delta = i128::MAX;
            let mut j1 = 0usize;
            for j in 1..=m {
                if used[j] {
                    continue;
                }
                let cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=m {
                if used[j] {
                    u[row_of[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if row_of[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            row_of[j0] = row_of[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }

    let mut col_of_row = vec![0usize; n];
    for j in 1..=m {
        if row_of[j] != 0 {
            col_of_row[row_of[j] - 1] = j - 1;
        }
    }
    let mut total = 0i64;
    for (i, &j) in col_of_row.iter().enumerate() {
        total += ap.weight[i][j]?;
    }
    Some(Assignment { col_of_row, total })
}
