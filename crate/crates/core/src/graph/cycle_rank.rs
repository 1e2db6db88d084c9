//! Cycle-rank over vertex bitmasks.

use std::collections::HashMap;

use thiserror::Error;

use super::{symmetric_closure, Digraph};

/// Largest vertex count accepted by [`cycle_rank`] unless a bound is given.
pub const DEFAULT_EXACT_BOUND: usize = 16;
/// Vertex sets are `u128` masks.
pub const MAX_MASK_VERTICES: usize = 128;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MeasureError {
    #[error("digraph has {vertices} vertices, bound is {bound}")]
    BoundExceeded { vertices: usize, bound: usize },
}

struct MaskGraph {
    succ: Vec<u128>,
    pred: Vec<u128>,
}

fn bits(mut mask: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            return None;
        }
        let v = mask.trailing_zeros() as usize;
        mask &= mask - 1;
        Some(v)
    })
}

impl MaskGraph {
    fn new(d: &Digraph) -> Self {
        let n = d.vertex_count();
        let mut succ = vec![0u128; n];
        let mut pred = vec![0u128; n];
        for &(u, v) in d.arcs() {
            succ[u] |= 1 << v;
            pred[v] |= 1 << u;
        }
        MaskGraph { succ, pred }
    }

    fn full(&self) -> u128 {
        let n = self.succ.len();
        if n == 128 {
            u128::MAX
        } else {
            (1u128 << n) - 1
        }
    }

    fn reach(&self, start: usize, within: u128, adj: &[u128]) -> u128 {
        let mut seen = 1u128 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for v in bits(frontier) {
                next |= adj[v];
            }
            next &= within & !seen;
            seen |= next;
            frontier = next;
        }
        seen
    }

    /// Strongly connected components of the subgraph induced by `mask` that
    /// contain a cycle. Without self-loops these are the ones with at least
    /// two vertices.
    fn cyclic_components(&self, mask: u128) -> Vec<u128> {
        let mut out = Vec::new();
        let mut rest = mask;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            let comp = self.reach(v, mask, &self.succ) & self.reach(v, mask, &self.pred);
            rest &= !comp;
            if comp.count_ones() > 1 {
                out.push(comp);
            }
        }
        out
    }

    fn rank(&self, mask: u128, memo: &mut HashMap<u128, u32>) -> u32 {
        if let Some(&r) = memo.get(&mask) {
            return r;
        }
        let comps = self.cyclic_components(mask);
        let r = if comps.len() == 1 && comps[0] == mask {
            let mut best = u32::MAX;
            for v in bits(mask) {
                best = best.min(self.rank(mask & !(1 << v), memo));
                if best == 0 {
                    break;
                }
            }
            1 + best
        } else {
            comps.into_iter().map(|c| self.rank(c, memo)).max().unwrap_or(0)
        };
        memo.insert(mask, r);
        r
    }

    fn at_most(&self, mask: u128, w: u32, memo: &mut HashMap<(u128, u32), bool>) -> bool {
        if let Some(&b) = memo.get(&(mask, w)) {
            return b;
        }
        let comps = self.cyclic_components(mask);
        let b = if comps.is_empty() {
            true
        } else if w == 0 {
            false
        } else {
            comps.iter().all(|&c| bits(c).any(|v| self.at_most(c & !(1 << v), w - 1, memo)))
        };
        memo.insert((mask, w), b);
        b
    }
}

fn check(d: &Digraph, bound: usize) -> Result<(), MeasureError> {
    let bound = bound.min(MAX_MASK_VERTICES);
    if d.vertex_count() > bound {
        Err(MeasureError::BoundExceeded { vertices: d.vertex_count(), bound })
    } else {
        Ok(())
    }
}

/// Exact cycle-rank for digraphs with at most [`DEFAULT_EXACT_BOUND`] vertices.
pub fn cycle_rank(d: &Digraph) -> Result<u32, MeasureError> {
    cycle_rank_with_bound(d, DEFAULT_EXACT_BOUND)
}

/// Exact cycle-rank with a caller-chosen vertex bound (at most 128). The
/// search is exponential; large bounds are only sensible for sparse inputs.
pub fn cycle_rank_with_bound(d: &Digraph, bound: usize) -> Result<u32, MeasureError> {
    check(d, bound)?;
    let g = MaskGraph::new(d);
    Ok(g.rank(g.full(), &mut HashMap::new()))
}

/// Cycle-rank of the symmetric closure.
pub fn undirected_cycle_rank(d: &Digraph) -> Result<u32, MeasureError> {
    cycle_rank(&symmetric_closure(d))
}

/// Decides `cycle_rank(d) <= w` by branch and bound; much cheaper than the
/// exact value when `w` is small. Accepts up to 128 vertices.
pub fn is_cycle_rank_at_most(d: &Digraph, w: u32) -> Result<bool, MeasureError> {
    check(d, MAX_MASK_VERTICES)?;
    let g = MaskGraph::new(d);
    Ok(g.at_most(g.full(), w, &mut HashMap::new()))
}

pub fn is_acyclic(d: &Digraph) -> bool {
    assert!(d.vertex_count() <= MAX_MASK_VERTICES);
    let g = MaskGraph::new(d);
    g.cyclic_components(g.full()).is_empty()
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use proptest::prelude::*;

    use super::*;
    use crate::graph::Vertex;

    fn digraph(n: usize, arcs: &[(usize, usize)]) -> Digraph {
        let vs = (0..n).map(|i| Vertex::atom(format!("v{i}"))).collect();
        Digraph::new(vs, arcs.iter().copied()).unwrap()
    }

    #[test]
    fn small_cases() {
        assert_eq!(cycle_rank(&digraph(3, &[(0, 1), (1, 2), (0, 2)])).unwrap(), 0);
        assert_eq!(cycle_rank(&digraph(3, &[(0, 1), (1, 2), (2, 0)])).unwrap(), 1);
        let tri = symmetric_closure(&digraph(3, &[(0, 1), (1, 2), (0, 2)]));
        assert_eq!(cycle_rank(&tri).unwrap(), 2);
        assert_eq!(cycle_rank(&digraph(0, &[])).unwrap(), 0);
    }

    #[test]
    fn undirected_rank_of_matching() {
        let d = digraph(4, &[(0, 1), (2, 3)]);
        assert_eq!(cycle_rank(&d).unwrap(), 0);
        assert_eq!(undirected_cycle_rank(&d).unwrap(), 1);
    }

    #[test]
    fn bound_is_enforced() {
        let d = digraph(17, &[]);
        assert_eq!(cycle_rank(&d), Err(MeasureError::BoundExceeded { vertices: 17, bound: 16 }));
        assert_eq!(cycle_rank_with_bound(&d, 20), Ok(0));
        assert_eq!(is_cycle_rank_at_most(&d, 0), Ok(true));
    }

    #[test]
    fn bidirected_cliques() {
        // the complete digraph on n vertices has cycle-rank n - 1
        for n in 1..=6 {
            let arcs: Vec<_> = (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v))).collect();
            let d = digraph(n, &arcs);
            assert_eq!(cycle_rank(&d).unwrap(), n as u32 - 1);
            assert!(is_cycle_rank_at_most(&d, n as u32 - 1).unwrap());
            assert!(n == 1 || !is_cycle_rank_at_most(&d, n as u32 - 2).unwrap());
        }
    }

    fn arb_digraph() -> impl Strategy<Value = Digraph> {
        (1usize..=7).prop_flat_map(|n| {
            proptest::collection::vec((0..n, 0..n), 0..=n * (n - 1)).prop_map(move |pairs| {
                let arcs: Vec<_> = pairs.into_iter().filter(|(u, v)| u != v).collect();
                digraph(n, &arcs)
            })
        })
    }

    proptest! {
        #[test]
        fn induced_subgraphs_do_not_increase_rank(d in arb_digraph(), keep in any::<u8>()) {
            let kept: BTreeSet<usize> = (0..d.vertex_count()).filter(|i| keep >> i & 1 == 1).collect();
            let sub = d.induced(&kept);
            prop_assert!(cycle_rank(&sub).unwrap() <= cycle_rank(&d).unwrap());
        }

        #[test]
        fn closure_does_not_decrease_rank(d in arb_digraph()) {
            prop_assert!(undirected_cycle_rank(&d).unwrap() >= cycle_rank(&d).unwrap());
        }

        #[test]
        fn zero_iff_acyclic(d in arb_digraph()) {
            prop_assert_eq!(cycle_rank(&d).unwrap() == 0, is_acyclic(&d));
        }

        #[test]
        fn bounded_check_matches_exact(d in arb_digraph(), w in 0u32..4) {
            prop_assert_eq!(is_cycle_rank_at_most(&d, w).unwrap(), cycle_rank(&d).unwrap() <= w);
        }
    }
}
