//! Partitioned clique: given a k-partite graph with equally sized parts,
//! is there a clique with one vertex in every part?

use std::collections::{BTreeSet, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::GenError;
use crate::expr::{CwdExpression, ExprBuilder, Label, NodeId};
use crate::graph::Sign;
use crate::program::{is_identifier, AtomId, Program, Rule};

/// Cap on `part_size^k` for [`has_partitioned_clique`].
pub const CLIQUE_SEARCH_BOUND: u128 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct KPartiteJson {
    parts: Vec<Vec<String>>,
    edges: Vec<(String, String)>,
}

/// Vertices are numbered part by part; `edges` holds index pairs `(u, v)`
/// with `u < v` and the endpoints in different parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KPartiteGraph {
    parts: Vec<Vec<String>>,
    edges: BTreeSet<(usize, usize)>,
}

impl KPartiteGraph {
    /// Vertex names must be valid atom names, unique and the parts equally
    /// sized.
    pub fn new(parts: Vec<Vec<String>>, edges: &[(String, String)]) -> Result<Self, GenError> {
        let err = |m: String| Err(GenError::InvalidGraph(m));
        if let Some(p) = parts.iter().find(|p| p.len() != parts[0].len()) {
            return err(format!("parts have sizes {} and {}", parts[0].len(), p.len()));
        }
        let mut index = HashMap::new();
        for (pi, part) in parts.iter().enumerate() {
            for name in part {
                if !is_identifier(name) {
                    return err(format!("`{name}` is not a valid atom name"));
                }
                if index.insert(name.as_str(), (pi, index.len())).is_some() {
                    return err(format!("vertex `{name}` appears twice"));
                }
            }
        }
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            let (Some(&(pa, ia)), Some(&(pb, ib))) = (index.get(a.as_str()), index.get(b.as_str())) else {
                return err(format!("edge {a} -- {b} mentions an unknown vertex"));
            };
            if pa == pb {
                return err(format!("edge {a} -- {b} lies inside part {}", pa + 1));
            }
            set.insert((ia.min(ib), ia.max(ib)));
        }
        Ok(KPartiteGraph { parts, edges: set })
    }

    pub fn from_json(text: &str) -> Result<Self, GenError> {
        let j: KPartiteJson = serde_json::from_str(text).map_err(|e| GenError::InvalidGraph(e.to_string()))?;
        KPartiteGraph::new(j.parts, &j.edges)
    }

    pub fn to_json(&self) -> String {
        let names: Vec<&String> = self.parts.iter().flatten().collect();
        let j = KPartiteJson {
            parts: self.parts.clone(),
            edges: self.edges.iter().map(|&(u, v)| (names[u].clone(), names[v].clone())).collect(),
        };
        serde_json::to_string(&j).expect("plain data")
    }

    /// `k` parts of `n` vertices named `v{i}_{j}` (vertex `i` of part `j`),
    /// no edges.
    pub fn empty(k: usize, n: usize) -> Self {
        let parts = (1..=k).map(|j| (1..=n).map(|i| format!("v{i}_{j}")).collect()).collect();
        KPartiteGraph { parts, edges: BTreeSet::new() }
    }

    /// All edges between different parts.
    pub fn complete(k: usize, n: usize) -> Self {
        let mut g = Self::empty(k, n);
        g.edges = g.cross_pairs().collect();
        g
    }

    pub fn k(&self) -> usize {
        self.parts.len()
    }

    pub fn part_size(&self) -> usize {
        self.parts.first().map_or(0, Vec::len)
    }

    pub fn parts(&self) -> &[Vec<String>] {
        &self.parts
    }

    fn vertex(&self, part: usize, i: usize) -> usize {
        part * self.part_size() + i
    }

    /// Every pair of vertices in different parts, as `(u, v)` with `u < v`.
    fn cross_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let (k, n) = (self.k(), self.part_size());
        (0..k).flat_map(move |p| {
            (p + 1..k).flat_map(move |q| {
                (0..n).flat_map(move |a| (0..n).map(move |b| (self.vertex(p, a), self.vertex(q, b))))
            })
        })
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Adds the edge between vertex `a` of part `p` and vertex `b` of part
    /// `q` (all zero-based).
    pub fn add_edge(&mut self, p: usize, a: usize, q: usize, b: usize) {
        assert!(p != q, "edges must cross parts");
        let (u, v) = (self.vertex(p, a), self.vertex(q, b));
        self.edges.insert((u.min(v), u.max(v)));
    }
}

/// Each pair of vertices in different parts becomes an edge with
/// probability `edge_density`.
pub fn gen_pclique(k: usize, part_size: usize, edge_density: f64, seed: u64) -> KPartiteGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = KPartiteGraph::empty(k, part_size);
    let pairs: Vec<_> = g.cross_pairs().collect();
    for pair in pairs {
        if rng.gen_bool(edge_density.clamp(0.0, 1.0)) {
            g.edges.insert(pair);
        }
    }
    g
}

/// Tries every choice of one vertex per part.
pub fn has_partitioned_clique(g: &KPartiteGraph) -> Result<bool, GenError> {
    let (k, n) = (g.k(), g.part_size());
    let size = (n as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if size > CLIQUE_SEARCH_BOUND {
        return Err(GenError::BoundExceeded { what: "clique search", size, bound: CLIQUE_SEARCH_BOUND });
    }
    if n == 0 {
        return Ok(k == 0);
    }
    // depth-first over parts, pruning as soon as a pair is not adjacent
    let mut choice = vec![0usize; k];
    let mut depth = 0;
    loop {
        if depth == k {
            return Ok(true);
        }
        let v = g.vertex(depth, choice[depth]);
        let fits = (0..depth).all(|p| g.has_edge(g.vertex(p, choice[p]), v));
        if fits {
            depth += 1;
            if depth < k {
                choice[depth] = 0;
            }
            continue;
        }
        // advance, backtracking over exhausted parts
        loop {
            choice[depth] += 1;
            if choice[depth] < n {
                break;
            }
            if depth == 0 {
                return Ok(false);
            }
            depth -= 1;
        }
    }
}

/// The program and a `2k + k²`-expression for its signed incidence graph
/// with `p` and `n` merged into `alpha`.
///
/// Atoms are the vertices, part by part. Rules, in order:
///
/// * one disjunctive fact per part, listing the part;
/// * for every non-adjacent pair `u`, `v` from different parts `V_i`,
///   `V_j`: the constraint `:- u, v, not w...` over every other `w` in
///   `V_i ∪ V_j`.
///
/// In the expression an atom of part `j` has label `j`, the fact of part
/// `j` label `k + j`, and the constraints between parts `i < j` label
/// `2k + k(i - 1) + j`.
pub fn reduce_pclique_to_asp(g: &KPartiteGraph) -> (Program, CwdExpression) {
    let (k, n) = (g.k(), g.part_size());
    let mut p = Program::new();
    for name in g.parts.iter().flatten() {
        p.add_atom(name.clone());
    }
    let atom = |part: usize, i: usize| AtomId(g.vertex(part, i));
    let mut rule_labels: Vec<Label> = Vec::new();
    for j in 0..k {
        let id = format!("r{}", p.rules.len() + 1);
        p.add_rule(Rule::new(id, (0..n).map(|i| atom(j, i)), [], []));
        rule_labels.push((k + j + 1) as Label);
    }
    let pair_label = |i: usize, j: usize| (2 * k + k * i + j + 1) as Label;
    for i in 0..k {
        for j in i + 1..k {
            for a in 0..n {
                for b in 0..n {
                    if g.has_edge(g.vertex(i, a), g.vertex(j, b)) {
                        continue;
                    }
                    let pos = [atom(i, a), atom(j, b)];
                    let neg = (0..n)
                        .filter(|&c| c != a)
                        .map(|c| atom(i, c))
                        .chain((0..n).filter(|&c| c != b).map(|c| atom(j, c)));
                    let id = format!("r{}", p.rules.len() + 1);
                    p.add_rule(Rule::new(id, [], pos, neg));
                    rule_labels.push(pair_label(i, j));
                }
            }
        }
    }

    let mut b = ExprBuilder::new();
    let mut leaves: Vec<NodeId> = Vec::new();
    for (j, part) in g.parts.iter().enumerate() {
        for name in part {
            leaves.push(b.atom(j as Label + 1, name.clone()));
        }
    }
    for (rule, &label) in p.rules.iter().zip(&rule_labels) {
        leaves.push(b.rule(label, rule.id.clone()));
    }
    let mut root = b.union_right(leaves).expect("reductions of non-empty graphs have vertices");
    for j in 0..k {
        if n > 0 {
            root = b.eta(Sign::Head, j as Label + 1, (k + j + 1) as Label, root);
        }
    }
    let used: BTreeSet<Label> = rule_labels.iter().copied().collect();
    for i in 0..k {
        for j in i + 1..k {
            let l = pair_label(i, j);
            if used.contains(&l) {
                root = b.eta(Sign::Alpha, i as Label + 1, l, root);
                root = b.eta(Sign::Alpha, j as Label + 1, l, root);
            }
        }
    }
    let e = b.finish(root).expect("reduction expression is well formed");
    (p, e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::validate_against_graph;
    use crate::graph::signed_incidence_graph;

    fn joined(p: &Program) -> crate::graph::SignedGraph {
        signed_incidence_graph(p).join_signs(&[Sign::Pos, Sign::Neg])
    }

    #[test]
    fn single_edge_has_a_clique() {
        let mut g = KPartiteGraph::empty(2, 2);
        g.add_edge(0, 0, 1, 0);
        assert!(has_partitioned_clique(&g).unwrap());
        assert!(!has_partitioned_clique(&KPartiteGraph::empty(2, 2)).unwrap());
        assert!(has_partitioned_clique(&KPartiteGraph::complete(4, 3)).unwrap());
    }

    #[test]
    fn missing_part_pair_means_no_clique() {
        let mut g = KPartiteGraph::complete(3, 2);
        g.edges.retain(|&(u, v)| !(u < 2 && (4..6).contains(&v)));
        assert!(!has_partitioned_clique(&g).unwrap());
    }

    #[test]
    fn bound() {
        let g = KPartiteGraph::empty(7, 8);
        assert!(matches!(has_partitioned_clique(&g), Err(GenError::BoundExceeded { .. })));
    }

    #[test]
    fn complete_graph_reduces_to_facts() {
        let (p, e) = reduce_pclique_to_asp(&KPartiteGraph::complete(3, 2));
        assert_eq!(p.rules.len(), 3);
        assert!(p.rules.iter().all(|r| r.pos.is_empty() && r.neg.is_empty()));
        assert_eq!(validate_against_graph(&e, &joined(&p)), Ok(()));
    }

    #[test]
    fn expression_width() {
        let mut g = KPartiteGraph::empty(2, 2);
        g.add_edge(0, 1, 1, 0);
        let (p, e) = reduce_pclique_to_asp(&g);
        assert_eq!(p.rules.len(), 2 + 3);
        assert!(e.width() <= 2 * 2 + 4);
        assert_eq!(validate_against_graph(&e, &joined(&p)), Ok(()));
        let r = &p.rules[2];
        assert_eq!((r.pos.len(), r.neg.len()), (2, 2));
    }

    #[test]
    fn json_round_trip() {
        let g = gen_pclique(3, 2, 0.5, 11);
        assert_eq!(KPartiteGraph::from_json(&g.to_json()).unwrap(), g);
        assert_eq!(gen_pclique(3, 2, 0.5, 11), g);
        let bad = r#"{"parts":[["a","b"],["c"]],"edges":[]}"#;
        assert!(KPartiteGraph::from_json(bad).is_err());
        let inner = r#"{"parts":[["a","b"],["c","d"]],"edges":[["a","b"]]}"#;
        assert!(KPartiteGraph::from_json(inner).is_err());
    }
}
