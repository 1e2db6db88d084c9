//! DOT and JSON forms of the three graph types.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::{Digraph, GraphError, Sign, SignedGraph, UGraph, Vertex, VertexKind};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VertexJson {
    Named(String),
    Full { name: String, kind: VertexKind },
}

impl VertexJson {
    fn from_vertex(v: &Vertex) -> Self {
        VertexJson::Full { name: v.name.clone(), kind: v.kind }
    }

    /// Plain strings are read as atoms.
    fn into_vertex(self) -> Vertex {
        match self {
            VertexJson::Named(name) => Vertex::atom(name),
            VertexJson::Full { name, kind } => Vertex { kind, name },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DigraphJson {
    pub vertices: Vec<VertexJson>,
    pub arcs: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UGraphJson {
    pub vertices: Vec<VertexJson>,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignedGraphJson {
    pub vertices: Vec<VertexJson>,
    pub edges: Vec<(usize, usize, Sign)>,
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn kind(v: &Vertex) -> &'static str {
    match v.kind {
        VertexKind::Atom => "atom",
        VertexKind::Rule => "rule",
    }
}

fn dot_vertices(out: &mut String, vertices: &[Vertex]) {
    for (i, v) in vertices.iter().enumerate() {
        let shape = if v.is_atom() { "ellipse" } else { "box" };
        writeln!(out, "  v{i} [label={}, kind={}, shape={shape}];", quote(&v.name), kind(v)).unwrap();
    }
}

impl Digraph {
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph G {\n");
        dot_vertices(&mut out, &self.vertices);
        for (u, v) in &self.arcs {
            writeln!(out, "  v{u} -> v{v};").unwrap();
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> DigraphJson {
        DigraphJson {
            vertices: self.vertices.iter().map(VertexJson::from_vertex).collect(),
            arcs: self.arcs.iter().copied().collect(),
        }
    }

    pub fn from_json(json: DigraphJson) -> Result<Self, GraphError> {
        Digraph::new(json.vertices.into_iter().map(VertexJson::into_vertex).collect(), json.arcs)
    }
}

impl UGraph {
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        dot_vertices(&mut out, &self.vertices);
        for (u, v) in &self.edges {
            writeln!(out, "  v{u} -- v{v};").unwrap();
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> UGraphJson {
        UGraphJson {
            vertices: self.vertices.iter().map(VertexJson::from_vertex).collect(),
            edges: self.edges.iter().copied().collect(),
        }
    }
}

impl SignedGraph {
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        dot_vertices(&mut out, &self.vertices);
        for (u, v, s) in self.edges() {
            writeln!(out, "  v{u} -- v{v} [sign={s}, label={s}];").unwrap();
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> SignedGraphJson {
        SignedGraphJson {
            vertices: self.vertices.iter().map(VertexJson::from_vertex).collect(),
            edges: self.edges().collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{dependency_graph, signed_incidence_graph};
    use crate::program::Program;

    #[test]
    fn json_shapes() {
        let p = Program::parse("x :- not y.\n:- x, not y.").unwrap();
        let d = serde_json::to_string(&dependency_graph(&p).to_json()).unwrap();
        assert_eq!(d, r#"{"vertices":[{"name":"x","kind":"atom"},{"name":"y","kind":"atom"}],"arcs":[[0,1]]}"#);
        let s = serde_json::to_value(signed_incidence_graph(&p).to_json()).unwrap();
        assert_eq!(s["edges"][0], serde_json::json!([0, 2, "h"]));
    }

    #[test]
    fn digraph_json_round_trip() {
        let d: DigraphJson = serde_json::from_str(r#"{"vertices":["a","b"],"arcs":[[0,1],[1,0]]}"#).unwrap();
        let g = Digraph::from_json(d).unwrap();
        assert_eq!(g.arcs().len(), 2);
        assert_eq!(Digraph::from_json(g.to_json()).unwrap(), g);
    }

    #[test]
    fn dot_mentions_kinds_and_signs() {
        let p = Program::parse("a :- not b.").unwrap();
        let dot = signed_incidence_graph(&p).to_dot();
        assert!(dot.contains("kind=rule"));
        assert!(dot.contains("sign=n"));
        assert!(dependency_graph(&p).to_dot().contains("v0 -> v1"));
    }
}
