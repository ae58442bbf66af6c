//! Random instances, a naive reference enumerator and source-problem solvers
//! shared by the integration tests and the acceptance harness.
#![allow(dead_code)]

use lbcolor::generators::SourceProblem;
use lbcolor::treewidth::treewidth_estimate;
use lbcolor::{Instance, Mode, Objective, RawInstance};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect()
}

pub fn random_graph(rng: &mut TestRng, n: usize, density: f64) -> Vec<(usize, usize)> {
    all_pairs(n)
        .into_iter()
        .filter(|_| rng.gen_bool(density))
        .collect()
}

/// Element conflicts computed from scratch, without the library's adjacency.
fn conflict(mode: Mode, edges: &[(usize, usize)], a: usize, b: usize) -> bool {
    if a == b {
        return false;
    }
    match mode {
        Mode::Vertex => edges
            .iter()
            .any(|&(u, v)| (u, v) == (a, b) || (u, v) == (b, a)),
        Mode::Edge => {
            let (x, y) = (edges[a], edges[b]);
            x.0 == y.0 || x.0 == y.1 || x.1 == y.0 || x.1 == y.1
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Shape {
    pub k: usize,
    pub p: usize,
    pub max_weight: u64,
    pub profit: bool,
    /// Probability that bounds are read off a greedy proper coloring rather than drawn at random.
    pub planted: f64,
    /// Probability that an element gets the full color list.
    pub full_list: f64,
}

/// Lists, parts, weights, bounds and profits over a fixed graph.
pub fn random_instance(
    rng: &mut TestRng,
    mode: Mode,
    n: usize,
    edges: Vec<(usize, usize)>,
    s: Shape,
) -> Instance {
    let m = match mode {
        Mode::Vertex => n,
        Mode::Edge => edges.len(),
    };
    let part_of: Vec<usize> = (0..m).map(|_| rng.gen_range(0..s.p)).collect();
    let weight: Vec<u64> = (0..m).map(|_| rng.gen_range(1..=s.max_weight)).collect();
    let allowed: Vec<Vec<usize>> = (0..m)
        .map(|_| {
            if rng.gen_bool(s.full_list) {
                return (0..s.k).collect();
            }
            let mut l: Vec<usize> = (0..s.k).filter(|_| rng.gen_bool(0.6)).collect();
            if l.is_empty() {
                l.push(rng.gen_range(0..s.k));
            }
            l
        })
        .collect();
    let mut bounds = vec![vec![0u64; s.k]; s.p];
    if rng.gen_bool(s.planted) {
        let mut colors: Vec<usize> = Vec::with_capacity(m);
        for e in 0..m {
            let free: Vec<usize> = allowed[e]
                .iter()
                .copied()
                .filter(|&c| (0..e).all(|f| colors[f] != c || !conflict(mode, &edges, e, f)))
                .collect();
            let c = *free.choose(rng).unwrap_or(&allowed[e][0]);
            colors.push(c);
            bounds[part_of[e]][c] += weight[e];
        }
    } else {
        for e in 0..m {
            bounds[part_of[e]][rng.gen_range(0..s.k)] += weight[e];
        }
    }
    let profit = s.profit.then(|| {
        (0..m)
            .map(|_| (0..s.k).map(|_| rng.gen_range(-5..=5)).collect())
            .collect()
    });
    Instance::new(RawInstance {
        mode,
        n,
        edges,
        k: s.k,
        p: s.p,
        part_of,
        weight,
        bounds,
        allowed,
        profit,
    })
    .unwrap()
}

pub fn small_shape(rng: &mut TestRng, profit: bool) -> Shape {
    Shape {
        k: rng.gen_range(1..=3),
        p: rng.gen_range(1..=2),
        max_weight: 3,
        profit,
        planted: 0.7,
        full_list: 0.5,
    }
}

/// `n ≤ 7`, `k ≤ 3`, `p ≤ 2`, weights `≤ 3`, treewidth `≤ 3`.
pub fn vertex_instance(rng: &mut TestRng, profit: bool) -> Instance {
    let n = rng.gen_range(1..=7);
    let density = rng.gen_range(0.1..0.8);
    let mut edges = random_graph(rng, n, density);
    loop {
        let probe = random_instance(
            rng,
            Mode::Vertex,
            n,
            edges.clone(),
            Shape {
                k: 1,
                p: 1,
                max_weight: 1,
                profit: false,
                planted: 0.0,
                full_list: 1.0,
            },
        );
        if treewidth_estimate(&probe).0 <= 3 {
            break;
        }
        edges.remove(rng.gen_range(0..edges.len()));
    }
    let shape = small_shape(rng, profit);
    random_instance(rng, Mode::Vertex, n, edges, shape)
}

/// At most 7 edges, `k ≤ 3`, `p ≤ 2`.
pub fn edge_instance(rng: &mut TestRng, profit: bool) -> Instance {
    let n = rng.gen_range(2..=6);
    let mut pairs = all_pairs(n);
    pairs.shuffle(rng);
    pairs.truncate(rng.gen_range(1..=7));
    pairs.sort_unstable();
    let shape = small_shape(rng, profit);
    random_instance(rng, Mode::Edge, n, pairs, shape)
}

pub fn edgeless_instance(rng: &mut TestRng, profit: bool) -> Instance {
    let n = rng.gen_range(1..=7);
    let mut shape = small_shape(rng, profit);
    if rng.gen_bool(0.5) {
        shape.max_weight = 1;
    }
    random_instance(rng, Mode::Vertex, n, Vec::new(), shape)
}

pub fn complete_instance(rng: &mut TestRng, profit: bool) -> Instance {
    let n = rng.gen_range(1..=6);
    let shape = Shape {
        k: rng.gen_range(n..=n + 2),
        p: rng.gen_range(1..=2),
        max_weight: 2,
        profit,
        planted: 0.8,
        full_list: 0.6,
    };
    random_instance(rng, Mode::Vertex, n, all_pairs(n), shape)
}

pub fn complete_bipartite_instance(rng: &mut TestRng, profit: bool) -> Instance {
    let n = rng.gen_range(2..=6);
    let a = rng.gen_range(1..n);
    let edges = (0..a).flat_map(|u| (a..n).map(move |v| (u, v))).collect();
    let shape = small_shape(rng, profit);
    random_instance(rng, Mode::Vertex, n, edges, shape)
}

/// Every total assignment checked by a validity test written from scratch.
/// Returns whether one is valid and, for the optimizing objectives, the best profit.
pub fn naive_solve(inst: &Instance, objective: Objective) -> (bool, Option<i64>) {
    let m = inst.element_count();
    let mut colors = vec![0; m];
    let mut found = false;
    let mut best: Option<i64> = None;
    loop {
        if naive_valid(inst, &colors) {
            found = true;
            if let Some(pi) = inst.profit() {
                let v: i64 = (0..m).map(|e| pi[e][colors[e]]).sum();
                best = Some(match (objective, best) {
                    (_, None) => v,
                    (Objective::Minimize, Some(b)) => b.min(v),
                    (_, Some(b)) => b.max(v),
                });
            }
        }
        let mut i = 0;
        while i < m && colors[i] + 1 == inst.k() {
            colors[i] = 0;
            i += 1;
        }
        if i == m {
            break;
        }
        colors[i] += 1;
    }
    (
        found,
        if objective == Objective::Decide {
            None
        } else {
            best
        },
    )
}

pub fn naive_valid(inst: &Instance, colors: &[usize]) -> bool {
    let raw = inst.raw();
    let m = colors.len();
    for a in 0..m {
        if !raw.allowed[a].contains(&colors[a]) {
            return false;
        }
        for b in a + 1..m {
            if colors[a] == colors[b] && conflict(raw.mode, &raw.edges, a, b) {
                return false;
            }
        }
    }
    let mut tally = vec![vec![0u64; raw.k]; raw.p];
    for e in 0..m {
        tally[raw.part_of[e]][colors[e]] += raw.weight[e];
    }
    tally == raw.bounds
}

pub fn random_partition(rng: &mut TestRng) -> SourceProblem {
    loop {
        let n = rng.gen_range(2..=6);
        let a: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=8)).collect();
        let s: u64 = a.iter().sum();
        if s.is_multiple_of(2) {
            return SourceProblem::Partition { a, b: s / 2 };
        }
    }
}

/// `n = 2`, every integer strictly between `b/4` and `b/2`.
pub fn random_three_partition(rng: &mut TestRng) -> SourceProblem {
    loop {
        let b = rng.gen_range(9..=30);
        let lo = b / 4 + 1;
        let hi = (b - 1) / 2;
        if lo > hi {
            continue;
        }
        let mut a: Vec<u64> = (0..5).map(|_| rng.gen_range(lo..=hi)).collect();
        let rest = (2 * b).checked_sub(a.iter().sum());
        if let Some(last) = rest.filter(|&x| 4 * x > b && 2 * x < b) {
            a.push(last);
            a.shuffle(rng);
            return SourceProblem::ThreePartition { a, b };
        }
    }
}

pub fn random_one_in_three_sat(rng: &mut TestRng) -> SourceProblem {
    let variables = rng.gen_range(3..=4);
    let clauses = (0..rng.gen_range(1..=3))
        .map(|_| {
            let mut vars: Vec<usize> = (1..=variables).collect();
            vars.shuffle(rng);
            [vars[0], vars[1], vars[2]]
        })
        .collect();
    SourceProblem::OneInThreeSat { variables, clauses }
}

/// Every element of every coordinate occurs in some triple.
pub fn random_three_dim_matching(rng: &mut TestRng) -> SourceProblem {
    loop {
        let size = rng.gen_range(1..=2);
        let count = rng.gen_range(size..=size + 2);
        let triples: Vec<[usize; 3]> = (0..count)
            .map(|_| {
                [
                    rng.gen_range(1..=size),
                    rng.gen_range(1..=size),
                    rng.gen_range(1..=size),
                ]
            })
            .collect();
        if (0..3).all(|axis| (1..=size).all(|x| triples.iter().any(|t| t[axis] == x))) {
            return SourceProblem::ThreeDimMatching { size, triples };
        }
    }
}

/// Exhaustive answer to the source problem itself.
pub fn source_answer(src: &SourceProblem) -> bool {
    match src {
        SourceProblem::Partition { a, b } => (0u32..1 << a.len()).any(|mask| {
            (0..a.len())
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| a[i])
                .sum::<u64>()
                == *b
        }),
        SourceProblem::ThreePartition { a, b } => triples_fill(a, *b, &mut vec![false; a.len()]),
        SourceProblem::OneInThreeSat { variables, clauses } => (0u32..1 << variables).any(|mask| {
            clauses
                .iter()
                .all(|cl| cl.iter().filter(|&&x| mask >> (x - 1) & 1 == 1).count() == 1)
        }),
        SourceProblem::ThreeDimMatching { size, triples } => {
            (0u32..1 << triples.len()).any(|mask| {
                let chosen: Vec<&[usize; 3]> = (0..triples.len())
                    .filter(|&i| mask >> i & 1 == 1)
                    .map(|i| &triples[i])
                    .collect();
                chosen.len() == *size
                    && (0..3).all(|axis| {
                        let mut seen: Vec<usize> = chosen.iter().map(|t| t[axis]).collect();
                        seen.sort_unstable();
                        seen.dedup();
                        seen.len() == *size
                    })
            })
        }
    }
}

fn triples_fill(a: &[u64], b: u64, used: &mut Vec<bool>) -> bool {
    let Some(first) = used.iter().position(|&u| !u) else {
        return true;
    };
    used[first] = true;
    for j in first + 1..a.len() {
        for l in j + 1..a.len() {
            if !used[j] && !used[l] && a[first] + a[j] + a[l] == b {
                used[j] = true;
                used[l] = true;
                if triples_fill(a, b, used) {
                    return true;
                }
                used[j] = false;
                used[l] = false;
            }
        }
    }
    used[first] = false;
    false
}
