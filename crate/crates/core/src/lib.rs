//! Deciding classical-model and answer-set existence for ground disjunctive
//! programs by dynamic programming over k-expressions of the signed
//! incidence graph.
//!
//! ```
//! use cwasp::dp::{has_answer_set_dp, has_model_dp};
//! use cwasp::expr::{heuristic_expression, validate_against};
//! use cwasp::program::Program;
//!
//! let program = Program::parse("a | b.\nc :- a, not b.").unwrap();
//! let e = heuristic_expression(&program).unwrap();
//! assert!(validate_against(&e, &program).is_ok());
//! assert!(has_model_dp(&e).unwrap());
//! assert!(has_answer_set_dp(&e).unwrap());
//! ```
//!
//! The modules, bottom up:
//!
//! * [`program`]: programs, parsing, models and reducts;
//! * [`oracle`]: brute-force enumeration used as ground truth;
//! * [`graph`]: dependency and incidence graphs, cycle-rank;
//! * [`expr`]: k-expressions, their evaluation and construction;
//! * [`dp`]: the two dynamic programs;
//! * [`gen`]: generators and reductions.

pub mod dp;
pub mod expr;
pub mod gen;
pub mod graph;
pub mod oracle;
pub mod program;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/programs.md")]
    mod programs {}
    #[doc = include_str!("../../../book/src/graphs.md")]
    mod graphs {}
    #[doc = include_str!("../../../book/src/expressions.md")]
    mod expressions {}
    #[doc = include_str!("../../../book/src/classical.md")]
    mod classical {}
    #[doc = include_str!("../../../book/src/answer-sets.md")]
    mod answer_sets {}
    #[doc = include_str!("../../../book/src/reductions.md")]
    mod reductions {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
