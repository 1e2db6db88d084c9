//! Instance generators and reductions.
//!
//! * [`qbf`]: 2-QBF formulas `∃x ∀y (D1 ∨ ... ∨ Dr)` and their translation
//!   to disjunctive programs;
//! * [`pclique`]: k-partite graphs and the reduction from partitioned
//!   clique, which also yields a narrow expression;
//! * [`grid`]: programs whose incidence graph is complete bipartite while
//!   the head edges trace an `n × n` grid;
//! * [`random`]: seeded random programs and formulas.

pub mod grid;
pub mod pclique;
pub mod qbf;
pub mod random;

use thiserror::Error;

pub use grid::gen_grid_program;
pub use pclique::{gen_pclique, has_partitioned_clique, reduce_pclique_to_asp, KPartiteGraph};
pub use qbf::{reduce_qbf_to_asp, Literal, QbfEA};
pub use random::{gen_random_program, gen_random_qbf, PartProbabilities};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("{what} needs {size} cases, bound is {bound}")]
    BoundExceeded { what: &'static str, size: u128, bound: u128 },
    #[error("invalid formula: {0}")]
    InvalidQbf(String),
    #[error("invalid k-partite graph: {0}")]
    InvalidGraph(String),
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
}
