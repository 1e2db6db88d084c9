//! Constructing and transforming expressions.

use std::collections::{BTreeMap, BTreeSet};

use super::{CwdExpression, ExprBuilder, ExprError, Label, NodeId, Op};
use crate::graph::{signed_incidence_graph, Sign, SignedGraph};
use crate::program::Program;

/// Every edge insertion whose sign is in `signs` gets sign `alpha`.
pub fn join_labels(e: &CwdExpression, signs: &[Sign]) -> CwdExpression {
    e.map_ops(|op| match op {
        Op::EdgeInsert { sign, i, j, child } if signs.contains(sign) => {
            Op::EdgeInsert { sign: Sign::Alpha, i: *i, j: *j, child: *child }
        }
        other => other.clone(),
    })
}

/// Renames the labels of `e` to `1..=width`, keeping their relative order.
pub fn compact_labels(e: &CwdExpression) -> CwdExpression {
    let map: BTreeMap<Label, Label> = e.labels().into_iter().zip(1..).collect();
    e.map_ops(|op| match op {
        Op::Introduce { label, vertex } => Op::Introduce { label: map[label], vertex: vertex.clone() },
        Op::Union(l, r) => Op::Union(*l, *r),
        Op::Relabel { from, to, child } => Op::Relabel { from: map[from], to: map[to], child: *child },
        Op::EdgeInsert { sign, i, j, child } => Op::EdgeInsert { sign: *sign, i: map[i], j: map[j], child: *child },
    })
}

/// One label per vertex (atoms `1..=n` in atom order, then rules), a
/// left-deep union of all vertices, and one edge insertion per edge of the
/// signed incidence graph with the atom label first.
pub fn trivial_expression(program: &Program) -> Result<CwdExpression, ExprError> {
    let g = signed_incidence_graph(program);
    let mut b = ExprBuilder::new();
    let leaves: Vec<NodeId> =
        g.vertices().iter().enumerate().map(|(i, v)| b.introduce(i as Label + 1, v.clone())).collect();
    let mut root = b.union_left(leaves).ok_or(ExprError::EmptyGraph)?;
    for (u, v, sign) in g.edges() {
        // atoms come first, so u is the atom
        root = b.eta(sign, u as Label + 1, v as Label + 1, root);
    }
    b.finish(root)
}

type Neighborhood = BTreeMap<usize, Sign>;

fn neighborhoods(g: &SignedGraph) -> Vec<Neighborhood> {
    let mut nb = vec![Neighborhood::new(); g.vertices().len()];
    for (u, v, s) in g.edges() {
        nb[u].insert(v, s);
        nb[v].insert(u, s);
    }
    nb
}

/// Vertices with equal signed neighborhoods share a label; all classes are
/// united, then one insertion per adjacent pair of classes.
fn twin_expression(g: &SignedGraph, nb: &[Neighborhood]) -> CwdExpression {
    let mut classes: BTreeMap<(bool, &Neighborhood), Label> = BTreeMap::new();
    let mut class_of = Vec::with_capacity(nb.len());
    for (v, n) in nb.iter().enumerate() {
        let next = classes.len() as Label + 1;
        class_of.push(*classes.entry((g.vertices()[v].is_atom(), n)).or_insert(next));
    }
    let mut b = ExprBuilder::new();
    let leaves: Vec<NodeId> =
        g.vertices().iter().enumerate().map(|(v, x)| b.introduce(class_of[v], x.clone())).collect();
    let mut root = b.union_left(leaves).expect("graph is not empty");
    let mut joined: BTreeMap<(Label, Label), Sign> = BTreeMap::new();
    for (u, v, s) in g.edges() {
        joined.insert((class_of[u], class_of[v]), s);
    }
    for ((i, j), s) in joined {
        root = b.eta(s, i, j, root);
    }
    b.finish(root).expect("twin expression is well formed")
}

/// Adds the vertices one at a time in `order`. After each step, processed
/// vertices whose signed neighborhoods among the unprocessed vertices agree
/// are merged into one label, so a label class always sees every later
/// vertex the same way.
fn layout_expression(g: &SignedGraph, nb: &[Neighborhood], order: &[usize]) -> CwdExpression {
    let n = order.len();
    let mut position = vec![0; n];
    for (p, &v) in order.iter().enumerate() {
        position[v] = p;
    }
    let mut b = ExprBuilder::new();
    let mut root: Option<NodeId> = None;
    // label -> members
    let mut classes: BTreeMap<Label, Vec<usize>> = BTreeMap::new();
    for (step, &v) in order.iter().enumerate() {
        let fresh = (1..).find(|l| !classes.contains_key(l)).unwrap();
        let leaf = b.introduce(fresh, g.vertices()[v].clone());
        let mut cur = match root {
            Some(r) => b.union(r, leaf),
            None => leaf,
        };
        for (&label, members) in &classes {
            if let Some(&s) = nb[v].get(&members[0]) {
                cur = b.eta(s, label, fresh, cur);
            }
        }
        classes.insert(fresh, vec![v]);

        let future = |u: usize| -> Vec<(usize, Sign)> {
            nb[u].iter().filter(|(w, _)| position[**w] > step).map(|(w, s)| (*w, *s)).collect()
        };
        let mut by_future: BTreeMap<Vec<(usize, Sign)>, Vec<Label>> = BTreeMap::new();
        for (&label, members) in &classes {
            by_future.entry(future(members[0])).or_default().push(label);
        }
        for labels in by_future.into_values() {
            let target = labels[0];
            for &other in &labels[1..] {
                cur = b.relabel(other, target, cur);
                let moved = classes.remove(&other).unwrap();
                classes.get_mut(&target).unwrap().extend(moved);
            }
        }
        root = Some(cur);
    }
    b.finish(root.expect("graph is not empty")).expect("layout expression is well formed")
}

/// Greedy order: repeatedly take the vertex that leaves the fewest distinct
/// future neighborhoods among processed vertices, lowest index on ties.
fn greedy_order(nb: &[Neighborhood]) -> Vec<usize> {
    let n = nb.len();
    let mut done = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let mut best: Option<(usize, usize)> = None;
        for cand in 0..n {
            if done[cand] {
                continue;
            }
            done[cand] = true;
            let mut seen = BTreeSet::new();
            for u in order.iter().copied().chain([cand]) {
                let fut: Vec<(usize, Sign)> = nb[u].iter().filter(|(w, _)| !done[**w]).map(|(w, s)| (*w, *s)).collect();
                seen.insert(fut);
            }
            done[cand] = false;
            if best.is_none_or(|(c, _)| seen.len() < c) {
                best = Some((seen.len(), cand));
            }
        }
        let (_, v) = best.unwrap();
        done[v] = true;
        order.push(v);
    }
    order
}

/// Best-effort expression for the signed incidence graph: the narrowest of
/// several twin-merging constructions. Never wider than
/// [`trivial_expression`].
pub fn heuristic_expression(program: &Program) -> Result<CwdExpression, ExprError> {
    let g = signed_incidence_graph(program);
    if g.vertices().is_empty() {
        return Err(ExprError::EmptyGraph);
    }
    let nb = neighborhoods(&g);
    let n = g.vertices().len();
    let atoms = program.atoms.len();
    let forward: Vec<usize> = (0..n).collect();
    let rules_first: Vec<usize> = (atoms..n).chain(0..atoms).collect();
    let mut candidates =
        vec![twin_expression(&g, &nb), layout_expression(&g, &nb, &forward), layout_expression(&g, &nb, &rules_first)];
    if n <= 80 {
        candidates.push(layout_expression(&g, &nb, &greedy_order(&nb)));
    }
    candidates.push(trivial_expression(program)?);
    // earliest candidate wins ties
    let best = candidates.into_iter().enumerate().min_by_key(|(i, e)| (e.width(), *i)).unwrap().1;
    Ok(compact_labels(&best))
}

#[cfg(test)]
mod tests {
    use super::super::tests::THREE_EXPR;
    use super::super::validate_against;
    use super::*;
    use crate::graph::Sign;

    fn example() -> Program {
        Program::parse("x :- not y.\n:- x, not y.").unwrap()
    }

    #[test]
    fn trivial_shapes() {
        let e = trivial_expression(&example()).unwrap();
        assert_eq!((e.width(), e.edge_insert_count()), (4, 4));
        assert_eq!(validate_against(&e, &example()), Ok(()));

        let mut lone = Program::new();
        lone.add_atom("a");
        let e = trivial_expression(&lone).unwrap();
        assert_eq!((e.width(), e.edge_insert_count()), (1, 0));

        let neg = Program::parse(":- not x.").unwrap();
        let e = trivial_expression(&neg).unwrap();
        assert_eq!(e.to_string(), "eta(n,1,2,oplus(a(1,x),r(2,r1)))");
        assert_eq!(trivial_expression(&Program::new()), Err(ExprError::EmptyGraph));
    }

    #[test]
    fn heuristic_on_complete_bipartite() {
        for n in [1, 2, 5, 9] {
            let atoms: Vec<String> = (0..n).map(|i| format!("a{i}")).collect();
            let text: String = (0..n).map(|_| format!(":- {}.\n", atoms.join(", "))).collect();
            let p = Program::parse(&text).unwrap();
            let e = heuristic_expression(&p).unwrap();
            assert_eq!(e.width(), 2);
            assert_eq!(validate_against(&e, &p), Ok(()));
        }
    }

    #[test]
    fn heuristic_small_cases() {
        let mut lone = Program::new();
        lone.add_atom("a");
        assert_eq!(heuristic_expression(&lone).unwrap().width(), 1);
        let e = heuristic_expression(&example()).unwrap();
        assert!(e.width() <= 4);
        assert_eq!(validate_against(&e, &example()), Ok(()));
    }

    #[test]
    fn heuristic_on_a_path_stays_narrow() {
        // a1 - r1 - a2 - r2 - ... as a chain of rules a_{i+1} :- a_i
        let text: String = (1..30).map(|i| format!("a{} :- a{i}.\n", i + 1)).collect();
        let p = Program::parse(&text).unwrap();
        let e = heuristic_expression(&p).unwrap();
        assert!(e.width() <= 4, "width {}", e.width());
        assert_eq!(validate_against(&e, &p), Ok(()));
    }

    #[test]
    fn joining_and_compacting() {
        let e = CwdExpression::parse(THREE_EXPR).unwrap();
        let j = join_labels(&e, &[Sign::Pos, Sign::Neg]);
        let alphas = j.nodes().iter().filter(|op| matches!(op, Op::EdgeInsert { sign: Sign::Alpha, .. })).count();
        assert_eq!(alphas, 2);
        assert_eq!(j.width(), e.width());
        assert_eq!(join_labels(&e, &[Sign::Pos, Sign::Neg, Sign::Head]).evaluate().unwrap().graph.edge_count(), 4);
        let no_p = CwdExpression::parse("eta(h,1,2,oplus(a(1,x),r(2,r)))").unwrap();
        assert_eq!(join_labels(&no_p, &[Sign::Pos]), no_p);

        let wide = CwdExpression::parse("eta(h,10,70,oplus(a(10,x),r(70,r)))").unwrap();
        assert_eq!(compact_labels(&wide).to_string(), "eta(h,1,2,oplus(a(1,x),r(2,r)))");
    }
}
