mod common;

use common::*;
use lbcolor::codec::{parse_document, write_document, Document};
use lbcolor::cographs::build_cotree;
use lbcolor::matching::{
    assignment_exhaustive, assignment_hungarian, max_flow_saturate, AssignmentProblem,
    CapacitatedBipartiteNetwork,
};
use lbcolor::split::{solve_split_singular, split_partition};
use lbcolor::treewidth::{
    build_nice_decomposition, decomposition_from_order, elimination_width, exact_treewidth,
    min_fill_order, TreeDecomposition,
};
use lbcolor::{brute_force_solve, is_valid, Error, Instance, Mode, Objective, RawInstance};
use proptest::prelude::*;
use rand::Rng;

fn graph(n: usize, edges: Vec<(usize, usize)>) -> Instance {
    Instance::new(RawInstance {
        mode: Mode::Vertex,
        n,
        edges,
        k: 1,
        p: 1,
        part_of: vec![0; n],
        weight: vec![1; n],
        bounds: vec![vec![n as u64]],
        allowed: vec![vec![0]; n],
        profit: None,
    })
    .unwrap()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn induced_p4(inst: &Instance) -> bool {
    let n = inst.n();
    let adj = |a: usize, b: usize| inst.adjacent(a, b);
    (0..n).any(|a| {
        (0..n).any(|b| {
            (0..n).any(|c| {
                (0..n).any(|d| {
                    let all = [a, b, c, d];
                    let distinct = (0..4).all(|i| (i + 1..4).all(|j| all[i] != all[j]));
                    distinct
                        && adj(a, b)
                        && adj(b, c)
                        && adj(c, d)
                        && !adj(a, c)
                        && !adj(b, d)
                        && !adj(a, d)
                })
            })
        })
    })
}

#[test]
fn known_treewidths() {
    let cycle: Vec<(usize, usize)> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
    let grid: Vec<(usize, usize)> = (0..9)
        .flat_map(|v| {
            let mut e = Vec::new();
            if v % 3 < 2 {
                e.push((v, v + 1));
            }
            if v < 6 {
                e.push((v, v + 3));
            }
            e
        })
        .collect();
    let cases = [
        (graph(5, vec![(0, 1), (1, 2), (1, 3), (3, 4)]), 1),
        (graph(6, cycle), 2),
        (graph(4, all_pairs(4)), 3),
        (graph(4, vec![(0, 2), (0, 3), (1, 2), (1, 3)]), 2),
        (graph(9, grid), 3),
        (graph(3, vec![]), 0),
    ];
    for (inst, tw) in cases {
        assert_eq!(exact_treewidth(&inst).unwrap().0, tw);
    }
}

#[test]
fn supplied_decompositions_are_validated() {
    let path = graph(3, vec![(0, 1), (1, 2)]);
    let good = TreeDecomposition {
        bags: vec![vec![0, 1], vec![1, 2]],
        tree_edges: vec![[0, 1]],
        root: 0,
    };
    let (nice, width) = build_nice_decomposition(&path, Some(&good)).unwrap();
    assert_eq!(width, 1);
    nice.check(&path).unwrap();
    let missing_edge = TreeDecomposition {
        bags: vec![vec![0, 1], vec![2]],
        tree_edges: vec![[0, 1]],
        root: 0,
    };
    assert!(matches!(
        build_nice_decomposition(&path, Some(&missing_edge)),
        Err(Error::InvalidDecomposition(_))
    ));
    let split_vertex = TreeDecomposition {
        bags: vec![vec![0, 1], vec![2], vec![1, 2]],
        tree_edges: vec![[0, 1], [1, 2]],
        root: 0,
    };
    assert!(build_nice_decomposition(&path, Some(&split_vertex)).is_err());
}

#[test]
fn document_round_trip_keeps_decomposition() {
    let mut r = rng(5);
    let inst = vertex_instance(&mut r, true);
    let (_, order) = exact_treewidth(&inst).unwrap();
    let doc = Document {
        decomposition: Some(decomposition_from_order(&inst, &order)),
        metadata: Some(serde_json::json!({"note": "x"})),
        instance: inst,
    };
    assert_eq!(parse_document(&write_document(&doc)).unwrap(), doc);
}

#[test]
fn flow_on_a_tight_network() {
    let mut net = CapacitatedBipartiteNetwork::new(2, 2);
    net.supply = vec![2, 1];
    net.demand = vec![1, 2];
    net.add_arc(0, 0, 1);
    net.add_arc(0, 1, 1);
    net.add_arc(1, 1, 1);
    let f = max_flow_saturate(&net);
    assert_eq!((f.value, f.saturated), (3, true));
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(120) })]

    #[test]
    fn exact_treewidth_matches_every_ordering(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=7);
        let density = r.gen_range(0.1..0.9);
        let inst = graph(n, random_graph(&mut r, n, density));
        let best = permutations(n).iter().map(|o| elimination_width(&inst, o)).min().unwrap();
        let (tw, order) = exact_treewidth(&inst).unwrap();
        prop_assert_eq!(tw, best);
        prop_assert_eq!(elimination_width(&inst, &order), tw);
        prop_assert!(elimination_width(&inst, &min_fill_order(&inst)) >= tw);
        let td = decomposition_from_order(&inst, &order);
        td.validate(&inst).unwrap();
        prop_assert_eq!(td.width(), tw);
        let (nice, width) = build_nice_decomposition(&inst, Some(&td)).unwrap();
        nice.check(&inst).unwrap();
        prop_assert_eq!(width, tw);
    }

    #[test]
    fn min_fill_decompositions_are_valid(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=16);
        let inst = graph(n, random_graph(&mut r, n, 0.25));
        let (nice, _) = build_nice_decomposition(&inst, None).unwrap();
        nice.check(&inst).unwrap();
        let td = decomposition_from_order(&inst, &min_fill_order(&inst));
        td.validate(&inst).unwrap();
    }

    #[test]
    fn max_flow_equals_min_cut(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (left, right) = (r.gen_range(1..=4), r.gen_range(1..=4));
        let mut net = CapacitatedBipartiteNetwork::new(left, right);
        net.supply = (0..left).map(|_| r.gen_range(0..=4)).collect();
        net.demand = (0..right).map(|_| r.gen_range(0..=4)).collect();
        for l in 0..left {
            for rt in 0..right {
                if r.gen_bool(0.5) {
                    net.add_arc(l, rt, r.gen_range(1..=3));
                }
            }
        }
        let f = max_flow_saturate(&net);
        let cut = (0u32..1 << (left + right))
            .map(|a| {
                let src = |x: usize| a >> x & 1 == 1;
                let s: u64 = (0..left).filter(|&l| !src(l)).map(|l| net.supply[l]).sum();
                let m: u64 = net.arcs.iter().filter(|arc| src(arc.left) && !src(left + arc.right)).map(|arc| arc.capacity).sum();
                let t: u64 = (0..right).filter(|&x| src(left + x)).map(|x| net.demand[x]).sum();
                s + m + t
            })
            .min()
            .unwrap();
        prop_assert_eq!(f.value, cut);
        for (arc, &x) in net.arcs.iter().zip(&f.arc_flow) {
            prop_assert!(x <= arc.capacity);
        }
        for l in 0..left {
            let out: u64 = net.arcs.iter().zip(&f.arc_flow).filter(|(a, _)| a.left == l).map(|(_, &x)| x).sum();
            prop_assert!(out <= net.supply[l]);
        }
        for x in 0..right {
            let inflow: u64 = net.arcs.iter().zip(&f.arc_flow).filter(|(a, _)| a.right == x).map(|(_, &x)| x).sum();
            prop_assert!(inflow <= net.demand[x]);
        }
        prop_assert_eq!(f.saturated, f.value == net.supply.iter().sum::<u64>());
    }

    #[test]
    fn hungarian_matches_exhaustive(seed in any::<u64>()) {
        let mut r = rng(seed);
        let rows = r.gen_range(1..=6);
        let cols = r.gen_range(rows..=rows + 2);
        let mut ap = AssignmentProblem::new(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if r.gen_bool(0.7) {
                    ap.allow(i, j, r.gen_range(-9..=9));
                }
            }
        }
        let a = assignment_exhaustive(&ap);
        let b = assignment_hungarian(&ap);
        prop_assert_eq!(a.as_ref().map(|x| x.total), b.as_ref().map(|x| x.total));
        if let Some(b) = b {
            let total: i64 = b.col_of_row.iter().enumerate().map(|(i, &j)| ap.weight[i][j].unwrap()).sum();
            prop_assert_eq!(total, b.total);
            let mut cols_used = b.col_of_row.clone();
            cols_used.sort_unstable();
            cols_used.dedup();
            prop_assert_eq!(cols_used.len(), rows);
        }
    }

    #[test]
    fn split_recognition_matches_brute_force(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=7);
        let density = r.gen_range(0.0..1.0);
        let inst = graph(n, random_graph(&mut r, n, density));
        let best_clique = (0u32..1 << n)
            .filter(|&k| {
                (0..n).all(|a| (a + 1..n).all(|b| {
                    let (ia, ib) = (k >> a & 1 == 1, k >> b & 1 == 1);
                    if ia && ib { inst.adjacent(a, b) } else if !ia && !ib { !inst.adjacent(a, b) } else { true }
                }))
            })
            .map(u32::count_ones)
            .max();
        match split_partition(&inst) {
            Ok(sp) => {
                prop_assert_eq!(Some(sp.clique.len() as u32), best_clique);
                prop_assert_eq!(sp.clique.len() + sp.independent.len(), n);
            }
            Err(e) => {
                prop_assert_eq!(e, Error::NotSplit);
                prop_assert_eq!(best_clique, None);
            }
        }
    }

    #[test]
    fn cotree_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=7);
        let density = r.gen_range(0.0..1.0);
        let inst = graph(n, random_graph(&mut r, n, density));
        match build_cotree(&inst) {
            Ok(ct) => {
                prop_assert!(!induced_p4(&inst));
                let mut got = ct.reconstruct_edges();
                got.sort_unstable();
                let mut want: Vec<(usize, usize)> = inst.edges().to_vec();
                want.sort_unstable();
                prop_assert_eq!(got, want);
                prop_assert_eq!(ct.leaf_count(), n);
            }
            Err(Error::NotACograph([a, b, c, d])) => {
                prop_assert!(inst.adjacent(a, b) && inst.adjacent(b, c) && inst.adjacent(c, d));
                prop_assert!(!inst.adjacent(a, c) && !inst.adjacent(b, d) && !inst.adjacent(a, d));
            }
            Err(e) => prop_assert!(false, "{e}"),
        }
    }

    #[test]
    fn singular_split_solver_matches_oracle(seed in any::<u64>(), general in any::<bool>()) {
        let mut r = rng(seed);
        let q = r.gen_range(1..=3);
        let n = q + r.gen_range(0..=4);
        let mut edges = all_pairs(q);
        for s in q..n {
            for c in 0..q {
                if r.gen_bool(0.5) {
                    edges.push((c, s));
                }
            }
        }
        let k = r.gen_range(q.max(2)..=4);
        let p = r.gen_range(1..=2);
        let mut shape = Shape { k, p, max_weight: 1, profit: false, planted: 0.8, full_list: 1.0 };
        if general {
            shape.max_weight = 2;
            shape.full_list = 0.5;
        }
        let inst = random_instance(&mut r, Mode::Vertex, n, edges, shape);
        let sp = split_partition(&inst).unwrap();
        let s_ok = sp.independent.iter().all(|&v| inst.weight(v) == 1 && inst.has_full_list(v));
        prop_assume!(s_ok);
        let want = brute_force_solve(&inst, Objective::Decide).unwrap();
        let got = solve_split_singular(&inst, general).unwrap();
        prop_assert_eq!(got.status, want.status);
        if let Some(w) = &got.witness {
            prop_assert!(is_valid(&inst, w));
        }
    }

    #[test]
    fn documents_round_trip(seed in any::<u64>(), edge in any::<bool>()) {
        let mut r = rng(seed);
        let profit = r.gen_bool(0.5);
        let inst = if edge { edge_instance(&mut r, true) } else { vertex_instance(&mut r, profit) };
        let doc = Document::new(inst);
        prop_assert_eq!(parse_document(&write_document(&doc)).unwrap(), doc);
    }
}
