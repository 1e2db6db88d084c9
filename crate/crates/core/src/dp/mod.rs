//! Dynamic programming over k-expressions.
//!
//! [`dp_classical`] computes, bottom-up, the set of k-triples `(T, F, U)`
//! realized at each node: `T` and `F` are the labels of true and false
//! atoms and `U` the labels of rules not yet satisfied. [`dp_asp`] pairs each
//! triple with the triples of all proper subsets, evaluated against the
//! reduct, which is enough to decide answer-set existence.
//!
//! Both work for any expression over atom and rule vertices whose edge
//! insertions only ever join atoms to rules, and whose labels lie in
//! `1..=64`.

mod answer_set;
mod classical;
mod triple;

use serde::Serialize;
use thiserror::Error;

use crate::expr::{CwdExpression, Label, Op};
use crate::graph::Sign;

pub use answer_set::{dp_asp, dp_asp_run, has_answer_set_dp, AspRun, AspTraceNode, KPair};
pub use classical::{dp_classical, dp_classical_run, has_model_dp, ClassicalRun, ClassicalTraceNode};
pub use triple::{KTriple, LabelSet, MAX_LABEL};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DpError {
    #[error("edge insertion with sign alpha at node {node}: the tables need h, p or n")]
    AlphaSign { node: usize },
    #[error("label {0} is outside 1..=64; compact the labels first")]
    LabelOutOfRange(Label),
    #[error("edge insertion eta({i},{j}) at node {node} would join two atoms or two rules")]
    NonBipartiteEdgeInsert { node: usize, i: Label, j: Label },
}

#[derive(Clone, Copy, Debug, Default)]
pub struct DpOptions {
    /// Keep a copy of every node's table.
    pub trace: bool,
}

/// Table sizes per node (in postorder) and their maximum.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DpStats {
    pub table_sizes: Vec<usize>,
    pub max_table_size: usize,
    /// For the answer-set tables: the largest `Γ` seen.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_gamma_size: Option<usize>,
}

impl DpStats {
    fn record(&mut self, size: usize) {
        self.table_sizes.push(size);
        self.max_table_size = self.max_table_size.max(size);
    }
}

/// One node of an expression, reduced to what the tables need.
#[derive(Clone, Copy, Debug)]
pub(crate) enum Step {
    Atom(Label),
    Rule(Label),
    Union(usize, usize),
    Relabel {
        from: Label,
        to: Label,
        child: usize,
    },
    /// An edge insertion between atom label `atom` and rule label `rule`.
    Edge {
        sign: Sign,
        atom: Label,
        rule: Label,
        child: usize,
    },
    /// A node that leaves every table unchanged.
    Same(usize),
}

fn checked(l: Label) -> Result<Label, DpError> {
    if (1..=MAX_LABEL).contains(&l) {
        Ok(l)
    } else {
        Err(DpError::LabelOutOfRange(l))
    }
}

/// Translates `e` into steps, orienting every edge insertion from its atom
/// label to its rule label by looking at which labels carry atoms and
/// which carry rules below the node.
pub(crate) fn plan(e: &CwdExpression) -> Result<Vec<Step>, DpError> {
    // per node: labels carried by atoms, labels carried by rules
    let mut present: Vec<(LabelSet, LabelSet)> = Vec::with_capacity(e.len());
    let mut steps = Vec::with_capacity(e.len());
    for (node, op) in e.nodes().iter().enumerate() {
        let (step, here) = match op {
            Op::Introduce { label, vertex } => {
                let l = checked(*label)?;
                let one = LabelSet::from_labels(&[l]);
                if vertex.is_atom() {
                    (Step::Atom(l), (one, LabelSet::EMPTY))
                } else {
                    (Step::Rule(l), (LabelSet::EMPTY, one))
                }
            }
            Op::Union(a, b) => {
                let (pa, pb) = (present[a.0], present[b.0]);
                (Step::Union(a.0, b.0), (pa.0.union(pb.0), pa.1.union(pb.1)))
            }
            Op::Relabel { from, to, child } => {
                let (from, to) = (checked(*from)?, checked(*to)?);
                let (atoms, rules) = present[child.0];
                let here = (atoms.relabel(from, to), rules.relabel(from, to));
                if from == to {
                    (Step::Same(child.0), here)
                } else {
                    (Step::Relabel { from, to, child: child.0 }, here)
                }
            }
            Op::EdgeInsert { sign, i, j, child } => {
                let (i, j) = (checked(*i)?, checked(*j)?);
                if *sign == Sign::Alpha {
                    return Err(DpError::AlphaSign { node });
                }
                let (atoms, rules) = present[child.0];
                let has = |l| atoms.contains(l) || rules.contains(l);
                let step = if !has(i) || !has(j) {
                    Step::Same(child.0)
                } else if !rules.contains(i) && !atoms.contains(j) {
                    Step::Edge { sign: *sign, atom: i, rule: j, child: child.0 }
                } else if !atoms.contains(i) && !rules.contains(j) {
                    Step::Edge { sign: *sign, atom: j, rule: i, child: child.0 }
                } else {
                    return Err(DpError::NonBipartiteEdgeInsert { node, i, j });
                };
                (step, present[child.0])
            }
        };
        steps.push(step);
        present.push(here);
    }
    Ok(steps)
}

/// `2^(3k)`, or `None` if it does not fit a `usize`.
pub(crate) fn triple_bound(width: usize) -> Option<usize> {
    1usize.checked_shl(u32::try_from(3 * width).ok()?)
}
