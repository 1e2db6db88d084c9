//! The tables computed for a whole program, compared against what brute
//! force over all interpretations says they must be.

use std::collections::BTreeSet;

use cwasp::dp::{dp_asp, dp_classical, KPair, KTriple};
use cwasp::expr::{heuristic_expression, trivial_expression, CwdExpression};
use cwasp::gen::{gen_random_program, PartProbabilities};
use cwasp::oracle::{interpretation_triple, reduct_interpretation_triple, Oracle};
use cwasp::program::{AtomSet, Program};

fn subsets(all: &AtomSet) -> Vec<AtomSet> {
    let items: Vec<_> = all.iter().copied().collect();
    (0..1u32 << items.len())
        .map(|bits| items.iter().enumerate().filter(|(i, _)| bits >> i & 1 == 1).map(|(_, a)| *a).collect())
        .collect()
}

fn expected_tables(p: &Program, e: &CwdExpression) -> (Vec<KTriple>, Vec<KPair>) {
    let labels = e.evaluate().unwrap().labels;
    let mut f = BTreeSet::new();
    let mut g = BTreeSet::new();
    for i in subsets(&p.all_atoms()) {
        let q = interpretation_triple(p, &labels, &i).unwrap();
        let gamma = subsets(&i)
            .into_iter()
            .filter(|j| *j != i)
            .map(|j| reduct_interpretation_triple(p, &labels, &i, &j).unwrap());
        f.insert(q);
        g.insert(KPair::new(q, gamma));
    }
    (f.into_iter().collect(), g.into_iter().collect())
}

fn programs() -> impl Iterator<Item = Program> {
    (0..150u64).map(|seed| {
        let probs = PartProbabilities { head: 0.25, pos: 0.25, neg: 0.2 };
        gen_random_program(1 + seed as usize % 5, (seed as usize / 5) % 5, probs, seed)
    })
}

#[test]
fn root_tables_are_exactly_the_realized_ones() {
    for p in programs() {
        for e in [trivial_expression(&p).unwrap(), heuristic_expression(&p).unwrap()] {
            let (f, g) = expected_tables(&p, &e);
            assert_eq!(dp_classical(&e).unwrap(), f, "{p}\n{e}");
            assert_eq!(dp_asp(&e).unwrap(), g, "{p}\n{e}");
        }
    }
}

#[test]
fn witnessing_pairs_are_answer_sets() {
    // with every rule already inserted, (Q, Γ) witnesses an answer set
    // exactly when its interpretation is one
    for p in programs() {
        let e = trivial_expression(&p).unwrap();
        let labels = e.evaluate().unwrap().labels;
        let answer_sets = Oracle::default().enumerate_answer_sets(&p).unwrap();
        let g = dp_asp(&e).unwrap();
        for i in subsets(&p.all_atoms()) {
            let q = interpretation_triple(&p, &labels, &i).unwrap();
            if answer_sets.contains(&i) {
                assert!(g.iter().any(|pair| pair.q == q && pair.witnesses_answer_set()), "{p}");
            }
        }
        let found = g.iter().any(KPair::witnesses_answer_set);
        assert_eq!(found, !answer_sets.is_empty(), "{p}");
    }
}
