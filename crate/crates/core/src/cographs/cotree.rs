use crate::error::{Error, Result};
use crate::graph::components_within;
use crate::model::Instance;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CotreeNode {
    Leaf(usize),
    /// Disjoint union of the two children.
    Union(usize, usize),
    /// Children plus every edge between them.
    Join(usize, usize),
}

/// Binary cotree. Children always precede their parent in `nodes`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cotree {
    nodes: Vec<CotreeNode>,
    /// `None` only for the empty graph.
    root: Option<usize>,
}

impl Cotree {
    pub fn nodes(&self) -> &[CotreeNode] {
        &self.nodes
    }

    pub fn root(&self) -> Option<usize> {
        self.root
    }

    pub fn leaf_count(&self) -> usize {
        self.nodes
            .iter()
            .filter(|x| matches!(x, CotreeNode::Leaf(_)))
            .count()
    }

    /// Leaves below `node`, sorted.
    pub fn leaves(&self, node: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![node];
        while let Some(x) = stack.pop() {
            match self.nodes[x] {
                CotreeNode::Leaf(v) => out.push(v),
                CotreeNode::Union(a, b) | CotreeNode::Join(a, b) => {
                    stack.push(a);
                    stack.push(b);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Edge set of the graph the cotree describes, as sorted `(u, v)` pairs with `u < v`.
    pub fn reconstruct_edges(&self) -> Vec<(usize, usize)> {
        let mut edges = Vec::new();
        for node in &self.nodes {
            if let CotreeNode::Join(a, b) = *node {
                for u in self.leaves(a) {
                    for v in self.leaves(b) {
                        edges.push((u.min(v), u.max(v)));
                    }
                }
            }
        }
        edges.sort_unstable();
        edges
    }

    fn push(&mut self, node: CotreeNode) -> usize {
        self.nodes.push(node);
        self.nodes.len() - 1
    }
}

/// Recursive cotree construction: a disconnected vertex set becomes a union
/// over its components, a set with disconnected complement a join over the
/// complement's components. A set where both are connected holds an induced
/// `P4`, which is reported.
pub fn build_cotree(inst: &Instance) -> Result<Cotree> {
    let mut tree = Cotree {
        nodes: Vec::new(),
        root: None,
    };
    if inst.n() == 0 {
        return Ok(tree);
    }
    let all: Vec<usize> = (0..inst.n()).collect();
    let root = build(inst, &all, &mut tree)?;
    tree.root = Some(root);
    Ok(tree)
}

fn build(inst: &Instance, set: &[usize], tree: &mut Cotree) -> Result<usize> {
    if set.len() == 1 {
        return Ok(tree.push(CotreeNode::Leaf(set[0])));
    }
    let parts = components_within(inst, set, false);
    let (parts, join) = if parts.len() > 1 {
        (parts, false)
    } else {
        let co = components_within(inst, set, true);
        if co.len() == 1 {
            return Err(Error::NotACograph(find_p4(inst, set)));
        }
        (co, true)
    };
    let mut acc = build(inst, &parts[0], tree)?;
    for part in &parts[1..] {
        let next = build(inst, part, tree)?;
        acc = tree.push(if join {
            CotreeNode::Join(acc, next)
        } else {
            CotreeNode::Union(acc, next)
        });
    }
    Ok(acc)
}

/// An induced path `a-b-c-d` inside `set`; one exists whenever both the
/// induced subgraph and its complement are connected.
fn find_p4(inst: &Instance, set: &[usize]) -> [usize; 4] {
    for &b in set {
        for &c in set {
            if !inst.adjacent(b, c) {
                continue;
            }
            for &a in set {
                if a == c || !inst.adjacent(a, b) || inst.adjacent(a, c) {
                    continue;
                }
                for &d in set {
                    if d != b
                        && inst.adjacent(c, d)
                        && !inst.adjacent(b, d)
                        && !inst.adjacent(a, d)
                        && a != d
                    {
                        return [a, b, c, d];
                    }
                }
            }
        }
    }
    unreachable!("a prime vertex set always contains an induced P4")
}
