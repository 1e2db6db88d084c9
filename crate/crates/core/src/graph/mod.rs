//! Graph representations of programs and the cycle-rank family of measures.
//!
//! Three graph types are used throughout the crate:
//!
//! * [`Digraph`]: simple directed graph (dependency graphs, orientations);
//! * [`UGraph`]: simple undirected graph (incidence graphs);
//! * [`SignedGraph`]: undirected graph whose edges carry a [`Sign`]
//!   (signed incidence graphs and the output of expression evaluation).
//!
//! All three identify vertices by [`Vertex`], i.e. by kind *and* name, so an
//! atom and a rule may share a name.

mod cycle_rank;
mod export;
mod orientation;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::program::{Part, Program};

pub use cycle_rank::{
    cycle_rank, cycle_rank_with_bound, is_acyclic, is_cycle_rank_at_most, undirected_cycle_rank, MeasureError,
    DEFAULT_EXACT_BOUND, MAX_MASK_VERTICES,
};
pub use export::{DigraphJson, SignedGraphJson, UGraphJson, VertexJson};
pub use orientation::{
    homogeneous_orientations, orientation_groups, HomogeneousOrientations, OrientationGroup, OrientationOptions,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexKind {
    Atom,
    Rule,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Vertex {
    pub kind: VertexKind,
    pub name: String,
}

impl Vertex {
    pub fn atom(name: impl Into<String>) -> Self {
        Vertex { kind: VertexKind::Atom, name: name.into() }
    }

    pub fn rule(name: impl Into<String>) -> Self {
        Vertex { kind: VertexKind::Rule, name: name.into() }
    }

    pub fn is_atom(&self) -> bool {
        self.kind == VertexKind::Atom
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            VertexKind::Atom => write!(f, "atom {}", self.name),
            VertexKind::Rule => write!(f, "rule {}", self.name),
        }
    }
}

/// Edge label of a signed graph. `Alpha` is the label that results from
/// merging some of the other three.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "h")]
    Head,
    #[serde(rename = "p")]
    Pos,
    #[serde(rename = "n")]
    Neg,
    #[serde(rename = "alpha")]
    Alpha,
}

impl Sign {
    pub const PROGRAM_SIGNS: [Sign; 3] = [Sign::Head, Sign::Pos, Sign::Neg];

    pub fn as_str(self) -> &'static str {
        match self {
            Sign::Head => "h",
            Sign::Pos => "p",
            Sign::Neg => "n",
            Sign::Alpha => "alpha",
        }
    }
}

impl From<Part> for Sign {
    fn from(part: Part) -> Sign {
        match part {
            Part::Head => Sign::Head,
            Part::PositiveBody => Sign::Pos,
            Part::NegativeBody => Sign::Neg,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("unknown sign `{0}` (expected h, p, n or alpha)")]
pub struct ParseSignError(pub String);

impl FromStr for Sign {
    type Err = ParseSignError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "h" => Ok(Sign::Head),
            "p" => Ok(Sign::Pos),
            "n" => Ok(Sign::Neg),
            "alpha" => Ok(Sign::Alpha),
            other => Err(ParseSignError(other.to_string())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("duplicate vertex {0}")]
    DuplicateVertex(Vertex),
    #[error("vertex index {0} out of range")]
    UnknownVertex(usize),
    #[error("self-loop on {0}")]
    SelfLoop(Vertex),
    #[error("edge {u} -- {v} already carries sign {existing}, cannot add sign {new}")]
    SignConflict { u: Vertex, v: Vertex, existing: Sign, new: Sign },
}

fn index_vertices(vertices: &[Vertex]) -> Result<HashMap<Vertex, usize>, GraphError> {
    let mut index = HashMap::with_capacity(vertices.len());
    for (i, v) in vertices.iter().enumerate() {
        if index.insert(v.clone(), i).is_some() {
            return Err(GraphError::DuplicateVertex(v.clone()));
        }
    }
    Ok(index)
}

/// Simple digraph: no parallel arcs, no self-loops.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    vertices: Vec<Vertex>,
    arcs: BTreeSet<(usize, usize)>,
}

impl Digraph {
    pub fn new(vertices: Vec<Vertex>, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        index_vertices(&vertices)?;
        let mut d = Digraph { vertices, arcs: BTreeSet::new() };
        for (u, v) in arcs {
            d.add_arc(u, v)?;
        }
        Ok(d)
    }

    pub fn add_arc(&mut self, u: usize, v: usize) -> Result<bool, GraphError> {
        let n = self.vertices.len();
        if u >= n || v >= n {
            return Err(GraphError::UnknownVertex(u.max(v)));
        }
        if u == v {
            return Err(GraphError::SelfLoop(self.vertices[u].clone()));
        }
        Ok(self.arcs.insert((u, v)))
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn arcs(&self) -> &BTreeSet<(usize, usize)> {
        &self.arcs
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.arcs.contains(&(u, v))
    }

    /// Arcs as named pairs, for comparisons that ignore vertex order.
    pub fn named_arcs(&self) -> BTreeSet<(Vertex, Vertex)> {
        self.arcs.iter().map(|&(u, v)| (self.vertices[u].clone(), self.vertices[v].clone())).collect()
    }

    /// The subgraph induced by the vertex indices in `keep`.
    pub fn induced(&self, keep: &BTreeSet<usize>) -> Digraph {
        let remap: HashMap<usize, usize> = keep.iter().enumerate().map(|(new, &old)| (old, new)).collect();
        Digraph {
            vertices: keep.iter().map(|&i| self.vertices[i].clone()).collect(),
            arcs: self.arcs.iter().filter_map(|(u, v)| Some((*remap.get(u)?, *remap.get(v)?))).collect(),
        }
    }
}

/// Simple undirected graph; edges are stored as `(u, v)` with `u < v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UGraph {
    vertices: Vec<Vertex>,
    edges: BTreeSet<(usize, usize)>,
}

impl UGraph {
    pub fn new(vertices: Vec<Vertex>, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        index_vertices(&vertices)?;
        let mut g = UGraph { vertices, edges: BTreeSet::new() };
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool, GraphError> {
        let n = self.vertices.len();
        if u >= n || v >= n {
            return Err(GraphError::UnknownVertex(u.max(v)));
        }
        if u == v {
            return Err(GraphError::SelfLoop(self.vertices[u].clone()));
        }
        Ok(self.edges.insert((u.min(v), u.max(v))))
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }
}

/// Undirected graph with one [`Sign`] per edge.
#[derive(Clone, Debug, Default)]
pub struct SignedGraph {
    vertices: Vec<Vertex>,
    index: HashMap<Vertex, usize>,
    edges: BTreeMap<(usize, usize), Sign>,
}

impl SignedGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, v: Vertex) -> Result<usize, GraphError> {
        if self.index.contains_key(&v) {
            return Err(GraphError::DuplicateVertex(v));
        }
        self.index.insert(v.clone(), self.vertices.len());
        self.vertices.push(v);
        Ok(self.vertices.len() - 1)
    }

    /// Adds an edge; returns `Ok(false)` if it already exists with the same
    /// sign and fails if it exists with a different one.
    pub fn add_edge(&mut self, u: usize, v: usize, sign: Sign) -> Result<bool, GraphError> {
        let n = self.vertices.len();
        if u >= n || v >= n {
            return Err(GraphError::UnknownVertex(u.max(v)));
        }
        if u == v {
            return Err(GraphError::SelfLoop(self.vertices[u].clone()));
        }
        let key = (u.min(v), u.max(v));
        match self.edges.get(&key) {
            Some(&existing) if existing == sign => Ok(false),
            Some(&existing) => Err(GraphError::SignConflict {
                u: self.vertices[key.0].clone(),
                v: self.vertices[key.1].clone(),
                existing,
                new: sign,
            }),
            None => {
                self.edges.insert(key, sign);
                Ok(true)
            }
        }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn index_of(&self, v: &Vertex) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, Sign)> + '_ {
        self.edges.iter().map(|(&(u, v), &s)| (u, v, s))
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn sign(&self, u: &Vertex, v: &Vertex) -> Option<Sign> {
        let (a, b) = (self.index_of(u)?, self.index_of(v)?);
        self.edges.get(&(a.min(b), a.max(b))).copied()
    }

    /// Edges keyed by their (ordered) endpoint pair, independent of the
    /// order in which vertices were added.
    pub fn named_edges(&self) -> BTreeMap<(Vertex, Vertex), Sign> {
        self.edges
            .iter()
            .map(|(&(u, v), &s)| {
                let (a, b) = (self.vertices[u].clone(), self.vertices[v].clone());
                if a <= b {
                    ((a, b), s)
                } else {
                    ((b, a), s)
                }
            })
            .collect()
    }

    /// `true` iff every edge joins an atom vertex with a rule vertex.
    pub fn is_atom_rule_bipartite(&self) -> bool {
        self.edges.keys().all(|&(u, v)| self.vertices[u].kind != self.vertices[v].kind)
    }

    /// Renames every sign in `signs` to [`Sign::Alpha`].
    pub fn join_signs(&self, signs: &[Sign]) -> SignedGraph {
        let mut g = self.clone();
        for s in g.edges.values_mut() {
            if signs.contains(s) {
                *s = Sign::Alpha;
            }
        }
        g
    }

    /// Forgets the signs.
    pub fn unsigned(&self) -> UGraph {
        UGraph { vertices: self.vertices.clone(), edges: self.edges.keys().copied().collect() }
    }
}

/// Atom vertices first (in atom order), then rule vertices (in rule order).
fn program_vertices(program: &Program) -> Vec<Vertex> {
    program.atoms.iter().map(Vertex::atom).chain(program.rules.iter().map(|r| Vertex::rule(&r.id))).collect()
}

/// Dependency graph: an arc from every head atom to every body atom of a
/// rule, and between any two distinct head atoms of a rule.
pub fn dependency_graph(program: &Program) -> Digraph {
    let vertices: Vec<Vertex> = program.atoms.iter().map(Vertex::atom).collect();
    let mut d = Digraph { vertices, arcs: BTreeSet::new() };
    for rule in &program.rules {
        for &x in &rule.head {
            for &y in rule.pos.iter().chain(&rule.neg) {
                if x != y {
                    d.arcs.insert((x.0, y.0));
                }
            }
            for &y in &rule.head {
                if x != y {
                    d.arcs.insert((x.0, y.0));
                }
            }
        }
    }
    d
}

/// Signed incidence graph: atoms and rules as vertices, an `h`, `p` or `n`
/// edge for every occurrence of an atom in a rule's head, positive body or
/// negative body.
///
/// Panics if the program violates part disjointness; validate first.
pub fn signed_incidence_graph(program: &Program) -> SignedGraph {
    let mut g = SignedGraph::new();
    for v in program_vertices(program) {
        g.add_vertex(v).expect("program names are unique");
    }
    let atoms = program.atoms.len();
    for (ri, rule) in program.rules.iter().enumerate() {
        for (a, part) in rule.occurrences() {
            g.add_edge(a.0, atoms + ri, part.into()).expect("rule parts must be disjoint");
        }
    }
    g
}

/// Incidence graph: the signed incidence graph without signs.
pub fn incidence_graph(program: &Program) -> UGraph {
    signed_incidence_graph(program).unsigned()
}

pub fn symmetric_closure(d: &Digraph) -> Digraph {
    let mut arcs = d.arcs.clone();
    arcs.extend(d.arcs.iter().map(|&(u, v)| (v, u)));
    Digraph { vertices: d.vertices.clone(), arcs }
}

pub fn underlying_undirected(d: &Digraph) -> UGraph {
    UGraph { vertices: d.vertices.clone(), edges: d.arcs.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect() }
}
