//! Solvers for weighted, locally bounded list coloring of vertices and edges.
//!
//! An instance fixes a graph, element weights, a partition of the elements
//! into parts, per-element color lists and a `p × k` bound matrix. A coloring is
//! valid when it is proper, respects every list, and puts exactly `W[h][c]`
//! weight of part `h` on color `c`.

pub mod basic;
pub mod classify;
pub mod codec;
pub mod cographs;
pub mod dispatch;
pub mod error;
pub mod generators;
pub mod graph;
pub mod matching;
pub mod model;
pub mod oracle;
pub mod split;
pub mod treewidth;
pub mod validate;

pub use classify::{classify_instance, ClassReport};
pub use dispatch::{run_solver, solve_auto, SolveOptions, SolverKind};
pub use error::{Error, Result};

/// Total entries the table-based dynamic programs may hold before giving up.
pub const TABLE_ENTRY_LIMIT: usize = 1_000_000;
pub use model::{Coloring, Instance, Mode, Objective, RawInstance, SolveOutcome, Status};
pub use oracle::brute_force_solve;
pub use validate::{is_valid, validate_coloring, ValidityReport, Violation};
