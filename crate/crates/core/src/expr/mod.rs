//! k-expressions over signed graphs.
//!
//! A [`CwdExpression`] is stored as an arena in postorder: children precede
//! their parents and the root is the last node. Four operations are
//! available:
//!
//! | text              | operation                                         |
//! |-------------------|---------------------------------------------------|
//! | `a(i,x)`/`r(i,x)` | a single atom/rule vertex `x` with label `i`       |
//! | `oplus(e,f)`      | disjoint union                                    |
//! | `rho(i,j,e)`      | relabel every `i` vertex to `j`                   |
//! | `eta(s,i,j,e)`    | join every `i` vertex to every `j` vertex, sign `s`|
//!
//! ```
//! use cwasp::expr::CwdExpression;
//!
//! let e: CwdExpression = "eta(p, 1, 2, oplus(a(1,x), r(2,r1)))".parse().unwrap();
//! assert_eq!(e.width(), 2);
//! assert_eq!(e.to_string(), "eta(p,1,2,oplus(a(1,x),r(2,r1)))");
//! assert_eq!(e.evaluate().unwrap().graph.edge_count(), 1);
//! ```

mod build;
mod syntax;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::graph::{signed_incidence_graph, GraphError, Sign, SignedGraph, Vertex, VertexKind};
use crate::program::Program;

pub use build::{compact_labels, heuristic_expression, join_labels, trivial_expression};

pub type Label = u32;
pub type Labeling = BTreeMap<Vertex, Label>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub usize);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Op {
    Introduce { label: Label, vertex: Vertex },
    Union(NodeId, NodeId),
    Relabel { from: Label, to: Label, child: NodeId },
    EdgeInsert { sign: Sign, i: Label, j: Label, child: NodeId },
}

impl Op {
    pub fn children(&self) -> Vec<NodeId> {
        match *self {
            Op::Introduce { .. } => vec![],
            Op::Union(l, r) => vec![l, r],
            Op::Relabel { child, .. } | Op::EdgeInsert { child, .. } => vec![child],
        }
    }

    /// The node without its children, e.g. `rho(3,2)`.
    pub fn describe(&self) -> String {
        match self {
            Op::Introduce { label, vertex } => match vertex.kind {
                VertexKind::Atom => format!("a({label},{})", vertex.name),
                VertexKind::Rule => format!("r({label},{})", vertex.name),
            },
            Op::Union(..) => "oplus".to_string(),
            Op::Relabel { from, to, .. } => format!("rho({from},{to})"),
            Op::EdgeInsert { sign, i, j, .. } => format!("eta({sign},{i},{j})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{0} is introduced more than once")]
    DuplicateVertex(Vertex),
    #[error("edge insertion needs two distinct labels, got {0} twice")]
    SameLabels(Label),
    #[error("labels are positive integers, got 0")]
    ZeroLabel,
    #[error("malformed expression: {0}")]
    Malformed(String),
    #[error("the graph has no vertices, so it has no expression")]
    EmptyGraph,
    #[error("evaluation failed: {0}")]
    Evaluation(#[from] GraphError),
}

/// Assembles expressions bottom-up; [`ExprBuilder::finish`] checks that the
/// nodes form a single tree and puts them in postorder.
#[derive(Clone, Debug, Default)]
pub struct ExprBuilder {
    nodes: Vec<Op>,
}

impl ExprBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    fn push(&mut self, op: Op) -> NodeId {
        self.nodes.push(op);
        NodeId(self.nodes.len() - 1)
    }

    pub fn introduce(&mut self, label: Label, vertex: Vertex) -> NodeId {
        self.push(Op::Introduce { label, vertex })
    }

    pub fn atom(&mut self, label: Label, name: impl Into<String>) -> NodeId {
        self.introduce(label, Vertex::atom(name))
    }

    pub fn rule(&mut self, label: Label, name: impl Into<String>) -> NodeId {
        self.introduce(label, Vertex::rule(name))
    }

    pub fn union(&mut self, left: NodeId, right: NodeId) -> NodeId {
        self.push(Op::Union(left, right))
    }

    pub fn relabel(&mut self, from: Label, to: Label, child: NodeId) -> NodeId {
        self.push(Op::Relabel { from, to, child })
    }

    pub fn eta(&mut self, sign: Sign, i: Label, j: Label, child: NodeId) -> NodeId {
        self.push(Op::EdgeInsert { sign, i, j, child })
    }

    /// `((n1 ⊕ n2) ⊕ n3) ⊕ ...`; `None` for an empty list.
    pub fn union_left(&mut self, items: impl IntoIterator<Item = NodeId>) -> Option<NodeId> {
        items.into_iter().reduce(|acc, n| self.union(acc, n))
    }

    /// `n1 ⊕ (n2 ⊕ (... ⊕ nk))`; `None` for an empty list.
    pub fn union_right(&mut self, items: impl IntoIterator<Item = NodeId>) -> Option<NodeId> {
        let items: Vec<NodeId> = items.into_iter().collect();
        items.into_iter().rev().reduce(|acc, n| self.union(n, acc))
    }

    pub fn finish(self, root: NodeId) -> Result<CwdExpression, ExprError> {
        let n = self.nodes.len();
        if root.0 >= n {
            return Err(ExprError::Malformed(format!("root {} does not exist", root.0)));
        }
        let mut used = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut stack = vec![(root, false)];
        used[root.0] = true;
        while let Some((id, expanded)) = stack.pop() {
            if expanded {
                order.push(id);
                continue;
            }
            stack.push((id, true));
            for c in self.nodes[id.0].children().into_iter().rev() {
                if c.0 >= n {
                    return Err(ExprError::Malformed(format!("node {} does not exist", c.0)));
                }
                if used[c.0] {
                    return Err(ExprError::Malformed(format!("node {} has two parents", c.0)));
                }
                used[c.0] = true;
                stack.push((c, false));
            }
        }
        if order.len() != n {
            return Err(ExprError::Malformed(format!("{} nodes are not below the root", n - order.len())));
        }
        let mut new_index = vec![0; n];
        for (new, old) in order.iter().enumerate() {
            new_index[old.0] = new;
        }
        let map = |id: NodeId| NodeId(new_index[id.0]);
        let mut nodes = self.nodes;
        let mut arena: Vec<Op> =
            order.iter().map(|id| std::mem::replace(&mut nodes[id.0], Op::Union(NodeId(0), NodeId(0)))).collect();
        for op in &mut arena {
            match op {
                Op::Introduce { .. } => {}
                Op::Union(l, r) => {
                    *l = map(*l);
                    *r = map(*r);
                }
                Op::Relabel { child, .. } | Op::EdgeInsert { child, .. } => *child = map(*child),
            }
        }
        let e = CwdExpression { nodes: arena };
        e.check()?;
        Ok(e)
    }
}

/// A k-expression; see the module documentation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CwdExpression {
    nodes: Vec<Op>,
}

/// The graph an expression evaluates to, with the labels its vertices carry
/// at the root.
#[derive(Clone, Debug)]
pub struct LabeledSignedGraph {
    pub graph: SignedGraph,
    pub labels: Labeling,
}

impl CwdExpression {
    pub fn parse(text: &str) -> Result<Self, ExprError> {
        syntax::parse(text)
    }

    fn check(&self) -> Result<(), ExprError> {
        let mut seen = BTreeSet::new();
        for op in &self.nodes {
            match op {
                Op::Introduce { label, vertex } => {
                    if *label == 0 {
                        return Err(ExprError::ZeroLabel);
                    }
                    if !seen.insert(vertex) {
                        return Err(ExprError::DuplicateVertex(vertex.clone()));
                    }
                }
                Op::Union(..) => {}
                Op::Relabel { from, to, .. } => {
                    if *from == 0 || *to == 0 {
                        return Err(ExprError::ZeroLabel);
                    }
                }
                Op::EdgeInsert { i, j, .. } => {
                    if *i == 0 || *j == 0 {
                        return Err(ExprError::ZeroLabel);
                    }
                    if i == j {
                        return Err(ExprError::SameLabels(*i));
                    }
                }
            }
        }
        Ok(())
    }

    /// Nodes in postorder; the root is last.
    pub fn nodes(&self) -> &[Op] {
        &self.nodes
    }

    pub fn root(&self) -> NodeId {
        NodeId(self.nodes.len() - 1)
    }

    pub fn op(&self, id: NodeId) -> &Op {
        &self.nodes[id.0]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Every label mentioned anywhere in the expression.
    pub fn labels(&self) -> BTreeSet<Label> {
        let mut out = BTreeSet::new();
        for op in &self.nodes {
            match *op {
                Op::Introduce { label, .. } => {
                    out.insert(label);
                }
                Op::Union(..) => {}
                Op::Relabel { from, to, .. } => {
                    out.extend([from, to]);
                }
                Op::EdgeInsert { i, j, .. } => {
                    out.extend([i, j]);
                }
            }
        }
        out
    }

    /// Number of distinct labels used.
    pub fn width(&self) -> usize {
        self.labels().len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = &Vertex> {
        self.nodes.iter().filter_map(|op| match op {
            Op::Introduce { vertex, .. } => Some(vertex),
            _ => None,
        })
    }

    pub fn edge_insert_count(&self) -> usize {
        self.nodes.iter().filter(|op| matches!(op, Op::EdgeInsert { .. })).count()
    }

    /// Applies `f` to every node, keeping the tree shape.
    pub(crate) fn map_ops(&self, f: impl Fn(&Op) -> Op) -> CwdExpression {
        CwdExpression { nodes: self.nodes.iter().map(f).collect() }
    }

    pub fn evaluate(&self) -> Result<LabeledSignedGraph, ExprError> {
        let mut graph = SignedGraph::new();
        // per node: (vertex index, label) of the vertices below it
        let mut members: Vec<Vec<(usize, Label)>> = Vec::with_capacity(self.nodes.len());
        for op in &self.nodes {
            let m = match op {
                Op::Introduce { label, vertex } => vec![(graph.add_vertex(vertex.clone())?, *label)],
                Op::Union(l, r) => {
                    let mut left = std::mem::take(&mut members[l.0]);
                    left.append(&mut members[r.0]);
                    left
                }
                Op::Relabel { from, to, child } => {
                    let mut m = std::mem::take(&mut members[child.0]);
                    for (_, l) in &mut m {
                        if l == from {
                            *l = *to;
                        }
                    }
                    m
                }
                Op::EdgeInsert { sign, i, j, child } => {
                    let m = std::mem::take(&mut members[child.0]);
                    let is: Vec<usize> = m.iter().filter(|(_, l)| l == i).map(|&(v, _)| v).collect();
                    let js: Vec<usize> = m.iter().filter(|(_, l)| l == j).map(|&(v, _)| v).collect();
                    for &u in &is {
                        for &v in &js {
                            graph.add_edge(u, v, *sign)?;
                        }
                    }
                    m
                }
            };
            members.push(m);
        }
        let labels =
            members.pop().unwrap_or_default().into_iter().map(|(v, l)| (graph.vertices()[v].clone(), l)).collect();
        Ok(LabeledSignedGraph { graph, labels })
    }

    /// AST as JSON, mirroring the text grammar.
    pub fn to_json(&self) -> Value {
        let mut built: Vec<Value> = Vec::with_capacity(self.nodes.len());
        for op in &self.nodes {
            let v = match op {
                Op::Introduce { label, vertex } => {
                    let op = if vertex.is_atom() { "a" } else { "r" };
                    json!({"op": op, "label": label, "name": vertex.name})
                }
                Op::Union(l, r) => {
                    let left = std::mem::take(&mut built[l.0]);
                    let right = std::mem::take(&mut built[r.0]);
                    json!({"op": "oplus", "left": left, "right": right})
                }
                Op::Relabel { from, to, child } => {
                    json!({"op": "rho", "from": from, "to": to, "child": std::mem::take(&mut built[child.0])})
                }
                Op::EdgeInsert { sign, i, j, child } => {
                    json!({"op": "eta", "sign": sign, "i": i, "j": j, "child": std::mem::take(&mut built[child.0])})
                }
            };
            built.push(v);
        }
        built.pop().unwrap_or(Value::Null)
    }
}

impl fmt::Display for CwdExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&syntax::serialize(self))
    }
}

impl std::str::FromStr for CwdExpression {
    type Err = ExprError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        syntax::parse(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignedEdge {
    pub u: Vertex,
    pub v: Vertex,
    pub sign: Sign,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MisSignedEdge {
    pub u: Vertex,
    pub v: Vertex,
    pub expected: Sign,
    pub found: Sign,
}

/// Differences between the graph an expression defines and a target graph.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct MismatchReport {
    pub missing_vertices: Vec<Vertex>,
    pub extra_vertices: Vec<Vertex>,
    pub missing_edges: Vec<SignedEdge>,
    pub extra_edges: Vec<SignedEdge>,
    pub mis_signed_edges: Vec<MisSignedEdge>,
}

impl MismatchReport {
    pub fn is_empty(&self) -> bool {
        self.missing_vertices.is_empty()
            && self.extra_vertices.is_empty()
            && self.missing_edges.is_empty()
            && self.extra_edges.is_empty()
            && self.mis_signed_edges.is_empty()
    }
}

impl fmt::Display for MismatchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.missing_vertices {
            writeln!(f, "missing vertex: {v}")?;
        }
        for v in &self.extra_vertices {
            writeln!(f, "extra vertex: {v}")?;
        }
        for e in &self.missing_edges {
            writeln!(f, "missing edge: {} -- {} ({})", e.u, e.v, e.sign)?;
        }
        for e in &self.extra_edges {
            writeln!(f, "extra edge: {} -- {} ({})", e.u, e.v, e.sign)?;
        }
        for e in &self.mis_signed_edges {
            writeln!(f, "edge {} -- {} has sign {}, expected {}", e.u, e.v, e.found, e.expected)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error(transparent)]
    Expression(#[from] ExprError),
    #[error("expression does not define the target graph:\n{0}")]
    Mismatch(MismatchReport),
}

/// Compares the graph of `e` with `target` on vertices (with kinds), edges
/// and signs. Root labels are ignored.
pub fn validate_against_graph(e: &CwdExpression, target: &SignedGraph) -> Result<(), ValidationError> {
    let got = e.evaluate()?.graph;
    let got_vertices: BTreeSet<&Vertex> = got.vertices().iter().collect();
    let want_vertices: BTreeSet<&Vertex> = target.vertices().iter().collect();
    let mut report = MismatchReport {
        missing_vertices: want_vertices.difference(&got_vertices).map(|v| (*v).clone()).collect(),
        extra_vertices: got_vertices.difference(&want_vertices).map(|v| (*v).clone()).collect(),
        ..Default::default()
    };
    let got_edges = got.named_edges();
    let want_edges = target.named_edges();
    for ((u, v), &expected) in &want_edges {
        match got_edges.get(&(u.clone(), v.clone())) {
            None => report.missing_edges.push(SignedEdge { u: u.clone(), v: v.clone(), sign: expected }),
            Some(&found) if found != expected => {
                report.mis_signed_edges.push(MisSignedEdge { u: u.clone(), v: v.clone(), expected, found })
            }
            Some(_) => {}
        }
    }
    for ((u, v), &sign) in &got_edges {
        if !want_edges.contains_key(&(u.clone(), v.clone())) {
            report.extra_edges.push(SignedEdge { u: u.clone(), v: v.clone(), sign });
        }
    }
    if report.is_empty() {
        Ok(())
    } else {
        Err(ValidationError::Mismatch(report))
    }
}

/// `e` defines the signed incidence graph of `program`.
pub fn validate_against(e: &CwdExpression, program: &Program) -> Result<(), ValidationError> {
    validate_against_graph(e, &signed_incidence_graph(program))
}
