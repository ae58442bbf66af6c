use std::fmt;

use crate::error::{Error, Result};
use crate::model::{Coloring, Instance, Mode};

/// First reason a total assignment is not a valid coloring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Two conflicting elements share a color.
    Properness {
        first: usize,
        second: usize,
        color: usize,
    },
    /// An element's color is not in its list.
    List { element: usize, color: usize },
    /// A part/color total differs from its bound.
    Bound {
        part: usize,
        color: usize,
        actual: u64,
        expected: u64,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // colors and parts are reported 1-based, like the files
        match *self {
            Violation::Properness {
                first,
                second,
                color,
            } => write!(
                f,
                "properness: elements {first} and {second} conflict but both have color {}",
                color + 1
            ),
            Violation::List { element, color } => write!(
                f,
                "list: element {element} has color {} which is not in its list",
                color + 1
            ),
            Violation::Bound {
                part,
                color,
                actual,
                expected,
            } => write!(
                f,
                "bound: part {} carries weight {actual} in color {} but the bound is {expected}",
                part + 1,
                color + 1
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidityReport {
    pub violation: Option<Violation>,
}

impl ValidityReport {
    pub fn is_ok(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks properness, list membership and the exact per-part bounds, in that order.
///
/// A coloring over the wrong number of elements, or using a color outside
/// `0..k`, is a structural error rather than a validity failure.
pub fn validate_coloring(inst: &Instance, col: &Coloring) -> Result<ValidityReport> {
    let m = inst.element_count();
    if col.len() != m {
        return Err(Error::Structural(format!(
            "coloring has {} entries but the instance has {m} {}s",
            col.len(),
            inst.mode()
        )));
    }
    if let Some(e) = (0..m).find(|&e| col.color_of(e) >= inst.k()) {
        return Err(Error::Structural(format!(
            "element {e} has color {} outside 1..={}",
            col.color_of(e) + 1,
            inst.k()
        )));
    }
    Ok(ValidityReport {
        violation: first_violation(inst, col),
    })
}

fn first_violation(inst: &Instance, col: &Coloring) -> Option<Violation> {
    match inst.mode() {
        Mode::Vertex => {
            for &(u, v) in inst.edges() {
                if col.color_of(u) == col.color_of(v) {
                    return Some(Violation::Properness {
                        first: u.min(v),
                        second: u.max(v),
                        color: col.color_of(u),
                    });
                }
            }
        }
        Mode::Edge => {
            // edges around each vertex must be pairwise distinct
            for v in 0..inst.n() {
                let around: Vec<usize> = inst
                    .neighbors(v)
                    .iter()
                    .filter_map(|&u| inst.edge_index(u, v))
                    .collect();
                for (i, &a) in around.iter().enumerate() {
                    for &b in &around[i + 1..] {
                        if col.color_of(a) == col.color_of(b) {
                            return Some(Violation::Properness {
                                first: a.min(b),
                                second: a.max(b),
                                color: col.color_of(a),
                            });
                        }
                    }
                }
            }
        }
    }
    for e in 0..inst.element_count() {
        if !inst.is_allowed(e, col.color_of(e)) {
            return Some(Violation::List {
                element: e,
                color: col.color_of(e),
            });
        }
    }
    let tally = col.tally(inst);
    for (h, row) in tally.iter().enumerate() {
        for (c, &actual) in row.iter().enumerate() {
            let expected = inst.bound(h, c);
            if actual != expected {
                return Some(Violation::Bound {
                    part: h,
                    color: c,
                    actual,
                    expected,
                });
            }
        }
    }
    None
}

/// Convenience: `true` iff the coloring is structurally sound and valid.
pub fn is_valid(inst: &Instance, col: &Coloring) -> bool {
    validate_coloring(inst, col)
        .map(|r| r.is_ok())
        .unwrap_or(false)
}
