use serde::Serialize;

use super::{plan, triple_bound, DpError, DpOptions, DpStats, KTriple, Step};
use crate::expr::CwdExpression;
use crate::graph::Sign;

/// A triple `q` for a candidate interpretation together with the triples of
/// its proper subsets, taken against the reduct. `gamma` is sorted and
/// duplicate-free.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct KPair {
    pub q: KTriple,
    pub gamma: Vec<KTriple>,
}

impl KPair {
    pub fn new(q: KTriple, gamma: impl IntoIterator<Item = KTriple>) -> Self {
        let mut gamma: Vec<KTriple> = gamma.into_iter().collect();
        gamma.sort_unstable();
        gamma.dedup();
        KPair { q, gamma }
    }

    /// `q` satisfies every rule and no member of `gamma` does.
    pub fn witnesses_answer_set(&self) -> bool {
        self.q.u.is_empty() && self.gamma.iter().all(|r| !r.u.is_empty())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AspTraceNode {
    pub index: usize,
    pub node: String,
    pub children: Vec<usize>,
    pub table: Vec<KPair>,
}

#[derive(Clone, Debug)]
pub struct AspRun {
    /// The table at the root, sorted.
    pub table: Vec<KPair>,
    pub stats: DpStats,
    pub trace: Option<Vec<AspTraceNode>>,
}

impl AspRun {
    pub fn decision(&self) -> bool {
        self.table.iter().any(KPair::witnesses_answer_set)
    }
}

fn normalize(mut table: Vec<KPair>) -> Vec<KPair> {
    table.sort_unstable();
    table.dedup();
    table
}

fn union(left: &[KPair], right: &[KPair]) -> Vec<KPair> {
    let mut out = Vec::with_capacity(left.len() * right.len());
    for a in left {
        for b in right {
            let mut gamma = Vec::with_capacity(a.gamma.len() * b.gamma.len() + a.gamma.len() + b.gamma.len());
            for s1 in &a.gamma {
                for s2 in &b.gamma {
                    gamma.push(s1.union(*s2));
                }
            }
            gamma.extend(b.gamma.iter().map(|s| a.q.union(*s)));
            gamma.extend(a.gamma.iter().map(|s| s.union(b.q)));
            out.push(KPair::new(a.q.union(b.q), gamma));
        }
    }
    out
}

fn edge(table: Vec<KPair>, sign: Sign, atom: u32, rule: u32) -> Vec<KPair> {
    table
        .into_iter()
        .map(|KPair { q, gamma }| {
            let gamma = gamma.into_iter().map(|r| match sign {
                Sign::Head => r.edge_update(r.t, atom, rule),
                Sign::Pos => r.edge_update(r.f, atom, rule),
                // gated by the candidate's true atoms, not the subset's
                _ => r.edge_update(q.t, atom, rule),
            });
            let s = if sign == Sign::Pos { q.f } else { q.t };
            KPair::new(q.edge_update(s, atom, rule), gamma)
        })
        .collect()
}

pub fn dp_asp_run(e: &CwdExpression, options: DpOptions) -> Result<AspRun, DpError> {
    let steps = plan(e)?;
    let bound = triple_bound(e.width());
    let mut tables: Vec<Vec<KPair>> = Vec::with_capacity(steps.len());
    let mut stats = DpStats { max_gamma_size: Some(0), ..Default::default() };
    let mut trace = options.trace.then(Vec::new);
    for (index, step) in steps.iter().enumerate() {
        let table = match *step {
            Step::Atom(i) => vec![
                KPair::new(KTriple::from_labels(&[i], &[], &[]), [KTriple::from_labels(&[], &[i], &[])]),
                KPair::new(KTriple::from_labels(&[], &[i], &[]), []),
            ],
            Step::Rule(i) => vec![KPair::new(KTriple::from_labels(&[], &[], &[i]), [])],
            Step::Union(a, b) => {
                let (left, right) = (std::mem::take(&mut tables[a]), std::mem::take(&mut tables[b]));
                union(&left, &right)
            }
            Step::Relabel { from, to, child } => std::mem::take(&mut tables[child])
                .into_iter()
                .map(|p| KPair::new(p.q.relabel(from, to), p.gamma.into_iter().map(|r| r.relabel(from, to))))
                .collect(),
            Step::Edge { sign, atom, rule, child } => edge(std::mem::take(&mut tables[child]), sign, atom, rule),
            Step::Same(child) => std::mem::take(&mut tables[child]),
        };
        let table = normalize(table);
        let gamma_max = table.iter().map(|p| p.gamma.len()).max().unwrap_or(0);
        if let Some(b) = bound {
            assert!(gamma_max <= b, "a gamma of size {gamma_max} exceeds 2^(3k) = {b}");
        }
        stats.max_gamma_size = stats.max_gamma_size.max(Some(gamma_max));
        stats.record(table.len());
        if let Some(t) = trace.as_mut() {
            let op = &e.nodes()[index];
            t.push(AspTraceNode {
                index,
                node: op.describe(),
                children: op.children().into_iter().map(|c| c.0).collect(),
                table: table.clone(),
            });
        }
        tables.push(table);
    }
    Ok(AspRun { table: tables.pop().unwrap_or_default(), stats, trace })
}

/// The root table of the answer-set dynamic program, sorted.
pub fn dp_asp(e: &CwdExpression) -> Result<Vec<KPair>, DpError> {
    Ok(dp_asp_run(e, DpOptions::default())?.table)
}

/// `true` iff the program whose signed incidence graph `e` defines has an
/// answer set.
pub fn has_answer_set_dp(e: &CwdExpression) -> Result<bool, DpError> {
    Ok(dp_asp_run(e, DpOptions::default())?.decision())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dp::{dp_classical, LabelSet};
    use crate::expr::tests::THREE_EXPR;

    fn q(t: &[u32], f: &[u32], u: &[u32]) -> KTriple {
        KTriple::from_labels(t, f, u)
    }

    #[test]
    fn single_atom() {
        let e = CwdExpression::parse("a(1,x)").unwrap();
        let mut expect = vec![KPair::new(q(&[1], &[], &[]), [q(&[], &[1], &[])]), KPair::new(q(&[], &[1], &[]), [])];
        expect.sort();
        assert_eq!(dp_asp(&e).unwrap(), expect);
    }

    #[test]
    fn constraint_on_a_negated_atom() {
        let union = CwdExpression::parse("oplus(a(1,x),r(2,r))").unwrap();
        assert!(dp_asp(&union).unwrap().contains(&KPair::new(q(&[1], &[], &[2]), [q(&[], &[1], &[2])])));

        let e = CwdExpression::parse("eta(n,1,2,oplus(a(1,x),r(2,r)))").unwrap();
        let table = dp_asp(&e).unwrap();
        assert!(table.contains(&KPair::new(q(&[1], &[], &[]), [q(&[], &[1], &[])])));
        assert!(table.contains(&KPair::new(q(&[], &[1], &[2]), [])));
        assert_eq!(table.len(), 2);
        assert!(!has_answer_set_dp(&e).unwrap());
    }

    /// The negative-body update must test the candidate's true atoms. Using
    /// the subset's own `T` would leave `2` in `U` of the subset triple and
    /// wrongly accept `{x}` as an answer set of `:- not x.`.
    #[test]
    fn negative_edges_use_the_outer_true_set() {
        let e = CwdExpression::parse("eta(n,1,2,oplus(a(1,x),r(2,r)))").unwrap();
        let pair = dp_asp(&e).unwrap().into_iter().find(|p| p.q == q(&[1], &[], &[])).unwrap();
        assert_eq!(pair.gamma, vec![q(&[], &[1], &[])]);
        assert!(!pair.witnesses_answer_set());
        // a positive body is checked against the subset itself
        let p = CwdExpression::parse("eta(p,1,2,oplus(a(1,x),r(2,r)))").unwrap();
        let pair = dp_asp(&p).unwrap().into_iter().find(|p| p.q.t == LabelSet::from_labels(&[1])).unwrap();
        assert_eq!(pair.q, q(&[1], &[], &[2]));
        assert_eq!(pair.gamma, vec![q(&[], &[1], &[])]);
    }

    #[test]
    fn projection_matches_classical() {
        let e = CwdExpression::parse(THREE_EXPR).unwrap();
        let mut qs: Vec<KTriple> = dp_asp(&e).unwrap().into_iter().map(|p| p.q).collect();
        qs.sort();
        qs.dedup();
        assert_eq!(qs, dp_classical(&e).unwrap());
    }

    #[test]
    fn fact_has_an_answer_set() {
        let e = CwdExpression::parse("eta(h,1,2,oplus(a(1,a),r(2,r1)))").unwrap();
        assert!(has_answer_set_dp(&e).unwrap());
    }
}
