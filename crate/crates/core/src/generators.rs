//! Instances built from classic NP-complete source problems.
//!
//! Layouts follow the usual 1-based formulas (colors `n + i`, `ni + 3n + h`,
//! parts `2Σocc + l`, ...); a color or part written `x` there is stored as `x − 1`.
//!
//! * Partition, `vertex`: `v_i` for `a_i`. `edge`: edge `i` is `(2i, 2i+1)`.
//! * 3-Partition, `isolated`: `v_i` for `a_i`. `star_forest`: for `i` in `1..=3n`,
//!   for `j` in `1..=n`, the center `v_i^j` followed by its `3n·a_i` leaves;
//!   then `u_1, ..., u_{3n}`.
//! * 1-in-3-SAT, `star_forest`: per variable `v_i, u_i^0, u_i^1, ..., u_i^{occ(i)}`.
//!   `complete_bipartite`: `u_1..u_μ`, then all `v_i^j`, then all `w_i^j`.
//!   `cycles_edges`: per variable and occurrence, a 4-cycle on fresh vertices
//!   `q0..q3` with edges `a = q0q1, b = q1q2, c = q2q3, d = q3q0`, then the
//!   single edge `e`.
//!   The `j`-th occurrence of a variable is its `j`-th appearance when
//!   clauses are read in order.
//! * 3-dimensional matching, `split`: `t_1..t_|T|`, then `x`, `y`, `z` elements.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::codec::Document;
use crate::error::{Error, Result};
use crate::model::{Instance, Mode, RawInstance};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum SourceProblem {
    /// Split `a` into two halves of sum `b`.
    Partition { a: Vec<u64>, b: u64 },
    /// Split `a` (length `3n`) into `n` triples of sum `b`.
    ThreePartition { a: Vec<u64>, b: u64 },
    /// Monotone clauses over variables `1..=variables`, each with three distinct variables.
    OneInThreeSat {
        variables: usize,
        clauses: Vec<[usize; 3]>,
    },
    /// Triples over `1..=size` in each coordinate.
    ThreeDimMatching {
        size: usize,
        triples: Vec<[usize; 3]>,
    },
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidSource(msg.into())
}

impl SourceProblem {
    pub fn parse(text: &str) -> Result<SourceProblem> {
        let src: SourceProblem = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
        src.validate()?;
        Ok(src)
    }

    pub fn kind(&self) -> &'static str {
        match self {
            SourceProblem::Partition { .. } => "partition",
            SourceProblem::ThreePartition { .. } => "three_partition",
            SourceProblem::OneInThreeSat { .. } => "one_in_three_sat",
            SourceProblem::ThreeDimMatching { .. } => "three_dim_matching",
        }
    }

    pub fn variants(&self) -> &'static [&'static str] {
        match self {
            SourceProblem::Partition { .. } => &["vertex", "edge"],
            SourceProblem::ThreePartition { .. } => &["isolated", "star_forest"],
            SourceProblem::OneInThreeSat { .. } => {
                &["star_forest", "complete_bipartite", "cycles_edges"]
            }
            SourceProblem::ThreeDimMatching { .. } => &["split"],
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            SourceProblem::Partition { a, b } => {
                if a.is_empty() || *b == 0 || a.contains(&0) {
                    return Err(bad("partition needs positive integers and a positive b"));
                }
                if a.iter().sum::<u64>() != 2 * b {
                    return Err(bad("partition integers must sum to 2b"));
                }
            }
            SourceProblem::ThreePartition { a, b } => {
                if a.is_empty() || a.len() % 3 != 0 {
                    return Err(bad("three_partition needs 3n integers with n ≥ 1"));
                }
                let n = (a.len() / 3) as u64;
                if a.iter().sum::<u64>() != n * b {
                    return Err(bad("three_partition integers must sum to n·b"));
                }
                if let Some(x) = a.iter().find(|&&x| !(4 * x > *b && 2 * x < *b)) {
                    return Err(bad(format!(
                        "three_partition integer {x} is not strictly between b/4 and b/2"
                    )));
                }
            }
            SourceProblem::OneInThreeSat { variables, clauses } => {
                if *variables == 0 || clauses.is_empty() {
                    return Err(bad(
                        "one_in_three_sat needs at least one variable and one clause",
                    ));
                }
                for (l, cl) in clauses.iter().enumerate() {
                    if cl.iter().any(|&x| x == 0 || x > *variables) {
                        return Err(bad(format!(
                            "clause {} uses a variable outside 1..={variables}",
                            l + 1
                        )));
                    }
                    if cl[0] == cl[1] || cl[0] == cl[2] || cl[1] == cl[2] {
                        return Err(bad(format!("clause {} repeats a variable", l + 1)));
                    }
                }
            }
            SourceProblem::ThreeDimMatching { size, triples } => {
                if *size == 0 {
                    return Err(bad("three_dim_matching needs size ≥ 1"));
                }
                if triples.iter().flatten().any(|&x| x == 0 || x > *size) {
                    return Err(bad(format!("triple element outside 1..={size}")));
                }
                if triples.len() < *size {
                    return Err(bad("three_dim_matching needs at least `size` triples"));
                }
            }
        }
        Ok(())
    }

    /// Generates the instance for `variant` (the first listed variant when `None`).
    pub fn generate(&self, variant: Option<&str>) -> Result<Instance> {
        self.validate()?;
        let variant = variant.unwrap_or(self.variants()[0]);
        match (self, variant) {
            (SourceProblem::Partition { a, b }, "vertex") => {
                Ok(gen_from_partition(a, *b, Mode::Vertex))
            }
            (SourceProblem::Partition { a, b }, "edge") => {
                Ok(gen_from_partition(a, *b, Mode::Edge))
            }
            (SourceProblem::ThreePartition { a, b }, "isolated") => {
                Ok(gen_three_partition_isolated(a, *b))
            }
            (SourceProblem::ThreePartition { a, b }, "star_forest") => {
                gen_three_partition_star_forest(a, *b)
            }
            (SourceProblem::OneInThreeSat { variables, clauses }, "star_forest") => {
                Ok(gen_sat_star_forest(*variables, clauses))
            }
            (SourceProblem::OneInThreeSat { variables, clauses }, "complete_bipartite") => {
                Ok(gen_sat_complete_bipartite(*variables, clauses))
            }
            (SourceProblem::OneInThreeSat { variables, clauses }, "cycles_edges") => {
                Ok(gen_sat_cycles_edges(*variables, clauses))
            }
            (SourceProblem::ThreeDimMatching { size, triples }, "split") => {
                Ok(gen_from_three_dim_matching(*size, triples))
            }
            _ => Err(bad(format!(
                "unknown variant `{variant}` for {} (expected one of: {})",
                self.kind(),
                self.variants().join(", ")
            ))),
        }
    }

    /// Generated instance plus a metadata block naming the source and variant.
    pub fn generate_document(
        &self,
        variant: Option<&str>,
        expected: Option<bool>,
    ) -> Result<Document> {
        let instance = self.generate(variant)?;
        let variant = variant.unwrap_or(self.variants()[0]);
        Ok(Document {
            instance,
            decomposition: None,
            metadata: Some(json!({
                "source": serde_json::to_value(self).expect("sources serialize"),
                "variant": variant,
                "expected": expected.map_or(Value::Null, Value::Bool),
            })),
        })
    }
}

fn build(raw: RawInstance) -> Instance {
    Instance::new(raw).expect("generated instances satisfy every invariant")
}

/// Number of occurrences per variable and, for each clause, the occurrence
/// index (0-based) of each of its three variables.
fn occurrences(variables: usize, clauses: &[[usize; 3]]) -> (Vec<usize>, Vec<[usize; 3]>) {
    let mut occ = vec![0; variables];
    let mut which = Vec::with_capacity(clauses.len());
    for cl in clauses {
        let mut idx = [0; 3];
        for (t, &x) in cl.iter().enumerate() {
            idx[t] = occ[x - 1];
            occ[x - 1] += 1;
        }
        which.push(idx);
    }
    (occ, which)
}

/// `p = 1`, `k = 2`, `W = (B, B)`, element weights `a_i`, full lists.
pub fn gen_from_partition(a: &[u64], b: u64, mode: Mode) -> Instance {
    let m = a.len();
    let (n, edges) = match mode {
        Mode::Vertex => (m, Vec::new()),
        Mode::Edge => (2 * m, (0..m).map(|i| (2 * i, 2 * i + 1)).collect()),
    };
    build(RawInstance {
        mode,
        n,
        edges,
        k: 2,
        p: 1,
        part_of: vec![0; m],
        weight: a.to_vec(),
        bounds: vec![vec![b, b]],
        allowed: vec![vec![0, 1]; m],
        profit: None,
    })
}

/// Isolated vertices of weight `a_i`, `p = 1`, `k = n`, every bound `B`.
pub fn gen_three_partition_isolated(a: &[u64], b: u64) -> Instance {
    let k = a.len() / 3;
    build(RawInstance {
        mode: Mode::Vertex,
        n: a.len(),
        edges: Vec::new(),
        k,
        p: 1,
        part_of: vec![0; a.len()],
        weight: a.to_vec(),
        bounds: vec![vec![b; k]],
        allowed: vec![(0..k).collect(); a.len()],
        profit: None,
    })
}

/// Unit-weight star forest with `3n²(nB+1) + 3n` vertices and `k = 3n² + 4n`.
pub fn gen_three_partition_star_forest(a: &[u64], b: u64) -> Result<Instance> {
    let n = a.len() / 3;
    if n < 2 {
        return Err(bad("the star_forest variant needs n ≥ 2"));
    }
    let k = 3 * n * n + 4 * n;
    // 1-based color x is stored as x - 1
    let col = |x: usize| x - 1;
    let private = |i: usize| (1..=n).map(move |h| col(n * i + 3 * n + h));
    let mut edges = Vec::new();
    let mut allowed: Vec<Vec<usize>> = Vec::new();
    for i in 1..=3 * n {
        for j in 1..=n {
            let center = allowed.len();
            let mut list = vec![col(n + i)];
            list.extend(private(i));
            allowed.push(list);
            for _ in 0..3 * n as u64 * a[i - 1] {
                edges.push((center, allowed.len()));
                allowed.push(vec![col(j), col(n + i)]);
            }
        }
    }
    for i in 1..=3 * n {
        allowed.push(private(i).collect());
    }
    let mut bounds = vec![0u64; k];
    for j in 1..=n {
        bounds[col(j)] = 3 * n as u64 * b;
    }
    for i in 1..=3 * n {
        bounds[col(n + i)] = 3 * n as u64 * a[i - 1] * (n as u64 - 1) + 1;
        for c in private(i) {
            bounds[c] = 1;
        }
    }
    let count = allowed.len();
    Ok(build(RawInstance {
        mode: Mode::Vertex,
        n: count,
        edges,
        k,
        p: 1,
        part_of: vec![0; count],
        weight: vec![1; count],
        bounds: vec![bounds],
        allowed,
        profit: None,
    }))
}

/// One star per variable, `k = 2`, `p = ν + μ`. Variable `x_i` is true iff `v_i` takes color 2.
pub fn gen_sat_star_forest(variables: usize, clauses: &[[usize; 3]]) -> Instance {
    let (occ, which) = occurrences(variables, clauses);
    let mut edges = Vec::new();
    let mut part_of = Vec::new();
    // leaf_of[i][t]: vertex of u_i^t
    let mut leaf_of: Vec<Vec<usize>> = Vec::with_capacity(variables);
    for i in 0..variables {
        let center = part_of.len();
        part_of.push(i);
        let mut leaves = Vec::with_capacity(occ[i] + 1);
        for t in 0..=occ[i] {
            let u = part_of.len();
            edges.push((center, u));
            part_of.push(if t == 0 { i } else { usize::MAX });
            leaves.push(u);
        }
        leaf_of.push(leaves);
    }
    for (l, cl) in clauses.iter().enumerate() {
        for t in 0..3 {
            part_of[leaf_of[cl[t] - 1][which[l][t] + 1]] = variables + l;
        }
    }
    let mut bounds = vec![vec![1, 1]; variables];
    bounds.extend(std::iter::repeat_n(vec![1, 2], clauses.len()));
    let count = part_of.len();
    build(RawInstance {
        mode: Mode::Vertex,
        n: count,
        edges,
        k: 2,
        p: variables + clauses.len(),
        part_of,
        weight: vec![1; count],
        bounds,
        allowed: vec![vec![0, 1]; count],
        profit: None,
    })
}

/// Complete bipartite graph with `p = 1`, `k = 2ν + 1`. Variable `x_i` is
/// true iff every `w_i^j` takes color `i`.
pub fn gen_sat_complete_bipartite(variables: usize, clauses: &[[usize; 3]]) -> Instance {
    let (occ, _) = occurrences(variables, clauses);
    let nu = variables;
    let col = |x: usize| x - 1;
    let mut allowed: Vec<Vec<usize>> = clauses
        .iter()
        .map(|cl| {
            let mut l: Vec<usize> = cl.iter().map(|&i| col(nu + i)).collect();
            l.sort_unstable();
            l
        })
        .collect();
    for i in 1..=nu {
        for _ in 0..occ[i - 1] {
            allowed.push(vec![col(i), col(2 * nu + 1)]);
        }
    }
    let left = allowed.len();
    for i in 1..=nu {
        for _ in 0..occ[i - 1] {
            allowed.push(vec![col(i), col(nu + i)]);
        }
    }
    let count = allowed.len();
    let edges = (0..left)
        .flat_map(|u| (left..count).map(move |w| (u, w)))
        .collect();
    let mut bounds = vec![0u64; 2 * nu + 1];
    for i in 1..=nu {
        bounds[col(i)] = occ[i - 1] as u64;
        bounds[col(nu + i)] = occ[i - 1] as u64;
    }
    bounds[col(2 * nu + 1)] = clauses.len() as u64;
    build(RawInstance {
        mode: Mode::Vertex,
        n: count,
        edges,
        k: 2 * nu + 1,
        p: 1,
        part_of: vec![0; count],
        weight: vec![1; count],
        bounds: vec![bounds],
        allowed,
        profit: None,
    })
}

/// Edge instance on disjoint 4-cycles and single edges, `k = 2`, unit weights,
/// full lists. Variable `x_i` is true iff its `a` edges take color 1.
pub fn gen_sat_cycles_edges(variables: usize, clauses: &[[usize; 3]]) -> Instance {
    let (occ, which) = occurrences(variables, clauses);
    let total: usize = occ.iter().sum();
    let mut edges = Vec::new();
    let mut part_of = Vec::new();
    // a_edge[i][j]: edge index of a_i^{j+1}
    let mut a_edge: Vec<Vec<usize>> = Vec::with_capacity(variables);
    let mut before = 0;
    for i in 0..variables {
        let mut a_here = Vec::with_capacity(occ[i]);
        for j in 0..occ[i] {
            let q = 6 * edges.len() / 5;
            let (pair_b, pair_c) = (2 * before + j, 2 * before + (j + occ[i] - 1) % occ[i]);
            let pair_d = 2 * before + occ[i] + j;
            a_here.push(edges.len());
            edges.push((q, q + 1));
            part_of.push(usize::MAX);
            edges.push((q + 1, q + 2));
            part_of.push(pair_b);
            edges.push((q + 2, q + 3));
            part_of.push(pair_c);
            edges.push((q + 3, q));
            part_of.push(pair_d);
            edges.push((q + 4, q + 5));
            part_of.push(pair_d);
        }
        a_edge.push(a_here);
        before += occ[i];
    }
    for (l, cl) in clauses.iter().enumerate() {
        for t in 0..3 {
            part_of[a_edge[cl[t] - 1][which[l][t]]] = 2 * total + l;
        }
    }
    let mut bounds = vec![vec![1, 1]; 2 * total];
    bounds.extend(std::iter::repeat_n(vec![1, 2], clauses.len()));
    let m = edges.len();
    build(RawInstance {
        mode: Mode::Edge,
        n: 6 * m / 5,
        edges,
        k: 2,
        p: 2 * total + clauses.len(),
        part_of,
        weight: vec![1; m],
        bounds,
        allowed: vec![vec![0, 1]; m],
        profit: None,
    })
}

/// Split graph with `p = 1`, `k = |T|`, unit weights and full lists: `t_h` is
/// adjacent to everything except its own three elements.
pub fn gen_from_three_dim_matching(size: usize, triples: &[[usize; 3]]) -> Instance {
    let t = triples.len();
    let count = t + 3 * size;
    let elem = |axis: usize, x: usize| t + axis * size + x - 1;
    let mut edges = Vec::new();
    for (h, tr) in triples.iter().enumerate() {
        let own = [elem(0, tr[0]), elem(1, tr[1]), elem(2, tr[2])];
        for v in h + 1..count {
            if !own.contains(&v) {
                edges.push((h, v));
            }
        }
    }
    let mut bounds = vec![1u64; t];
    for b in bounds.iter_mut().take(size) {
        *b = 4;
    }
    build(RawInstance {
        mode: Mode::Vertex,
        n: count,
        edges,
        k: t,
        p: 1,
        part_of: vec![0; count],
        weight: vec![1; count],
        bounds: vec![bounds],
        allowed: vec![(0..t).collect(); count],
        profit: None,
    })
}
