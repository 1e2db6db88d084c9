use serde::Serialize;

use super::{plan, triple_bound, DpError, DpOptions, DpStats, KTriple, Step};
use crate::expr::CwdExpression;
use crate::graph::Sign;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassicalTraceNode {
    pub index: usize,
    pub node: String,
    pub children: Vec<usize>,
    pub table: Vec<KTriple>,
}

#[derive(Clone, Debug)]
pub struct ClassicalRun {
    /// The table at the root, sorted.
    pub table: Vec<KTriple>,
    pub stats: DpStats,
    pub trace: Option<Vec<ClassicalTraceNode>>,
}

impl ClassicalRun {
    /// Some triple has every rule satisfied.
    pub fn decision(&self) -> bool {
        self.table.iter().any(|q| q.u.is_empty())
    }
}

fn normalize(mut table: Vec<KTriple>) -> Vec<KTriple> {
    table.sort_unstable();
    table.dedup();
    table
}

pub fn dp_classical_run(e: &CwdExpression, options: DpOptions) -> Result<ClassicalRun, DpError> {
    let steps = plan(e)?;
    let bound = triple_bound(e.width());
    let mut tables: Vec<Vec<KTriple>> = Vec::with_capacity(steps.len());
    let mut stats = DpStats::default();
    let mut trace = options.trace.then(Vec::new);
    for (index, step) in steps.iter().enumerate() {
        let table = match *step {
            Step::Atom(i) => vec![KTriple::from_labels(&[i], &[], &[]), KTriple::from_labels(&[], &[i], &[])],
            Step::Rule(i) => vec![KTriple::from_labels(&[], &[], &[i])],
            Step::Union(a, b) => {
                let (left, right) = (std::mem::take(&mut tables[a]), std::mem::take(&mut tables[b]));
                let mut out = Vec::with_capacity(left.len() * right.len());
                for q in &left {
                    for r in &right {
                        out.push(q.union(*r));
                    }
                }
                out
            }
            Step::Relabel { from, to, child } => {
                std::mem::take(&mut tables[child]).into_iter().map(|q| q.relabel(from, to)).collect()
            }
            Step::Edge { sign, atom, rule, child } => std::mem::take(&mut tables[child])
                .into_iter()
                .map(|q| {
                    let s = if sign == Sign::Pos { q.f } else { q.t };
                    q.edge_update(s, atom, rule)
                })
                .collect(),
            Step::Same(child) => std::mem::take(&mut tables[child]),
        };
        let table = normalize(table);
        if let Some(b) = bound {
            assert!(table.len() <= b, "table of size {} exceeds 2^(3k) = {b}", table.len());
        }
        stats.record(table.len());
        if let Some(t) = trace.as_mut() {
            let op = &e.nodes()[index];
            t.push(ClassicalTraceNode {
                index,
                node: op.describe(),
                children: op.children().into_iter().map(|c| c.0).collect(),
                table: table.clone(),
            });
        }
        tables.push(table);
    }
    Ok(ClassicalRun { table: tables.pop().unwrap_or_default(), stats, trace })
}

/// The root table of the classical dynamic program, sorted.
pub fn dp_classical(e: &CwdExpression) -> Result<Vec<KTriple>, DpError> {
    Ok(dp_classical_run(e, DpOptions::default())?.table)
}

/// `true` iff the program whose signed incidence graph `e` defines has a
/// classical model.
pub fn has_model_dp(e: &CwdExpression) -> Result<bool, DpError> {
    Ok(dp_classical_run(e, DpOptions::default())?.decision())
}
