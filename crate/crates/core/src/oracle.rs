//! Brute-force semantics: classical models and answer sets by exhaustive
//! enumeration, plus the maps from interpretations to table entries that the
//! dynamic programs are checked against.
//!
//! Everything here is exponential in the number of atoms and is meant as the
//! slow, obviously-correct reference.

use thiserror::Error;

use crate::dp::{KTriple, LabelSet};
use crate::expr::Labeling;
use crate::graph::Vertex;
use crate::program::{AtomId, AtomSet, Program, Rule};

pub const DEFAULT_ENUMERATION_BOUND: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("program has {atoms} atoms, enumeration bound is {bound}")]
    BoundExceeded { atoms: usize, bound: usize },
    #[error("vertex {0} has no label")]
    Unlabeled(Vertex),
    #[error("label {0} does not fit a 64-bit label set")]
    LabelOutOfRange(u32),
}

/// Exhaustive enumerator with a cap on the number of atoms.
#[derive(Clone, Copy, Debug)]
pub struct Oracle {
    bound: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle { bound: DEFAULT_ENUMERATION_BOUND }
    }
}

/// A rule with its parts as bitmasks over atom indices.
#[derive(Clone, Copy)]
struct MaskRule {
    head: u64,
    pos: u64,
    neg: u64,
}

impl MaskRule {
    fn new(rule: &Rule) -> Self {
        let mask = |s: &AtomSet| s.iter().fold(0u64, |m, a| m | (1 << a.0));
        MaskRule { head: mask(&rule.head), pos: mask(&rule.pos), neg: mask(&rule.neg) }
    }

    fn satisfied_by(self, interp: u64) -> bool {
        let body = self.pos & !interp == 0 && self.neg & interp == 0;
        !body || self.head & interp != 0
    }
}

fn to_set(mask: u64) -> AtomSet {
    (0..64).filter(|i| mask >> i & 1 == 1).map(AtomId).collect()
}

impl Oracle {
    /// `bound` is clamped to 63 so that interpretations fit in a `u64`.
    pub fn with_bound(bound: usize) -> Self {
        Oracle { bound: bound.min(63) }
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    fn check(&self, program: &Program) -> Result<(), OracleError> {
        if program.atoms.len() > self.bound {
            Err(OracleError::BoundExceeded { atoms: program.atoms.len(), bound: self.bound })
        } else {
            Ok(())
        }
    }

    fn model_masks(&self, program: &Program) -> Result<(Vec<MaskRule>, Vec<u64>), OracleError> {
        self.check(program)?;
        let rules: Vec<MaskRule> = program.rules.iter().map(MaskRule::new).collect();
        let models = (0..1u64 << program.atoms.len()).filter(|&m| rules.iter().all(|r| r.satisfied_by(m))).collect();
        Ok((rules, models))
    }

    /// Every model of `program`, in lexicographic order over atom indices.
    pub fn enumerate_models(&self, program: &Program) -> Result<Vec<AtomSet>, OracleError> {
        let (_, models) = self.model_masks(program)?;
        let mut sets: Vec<AtomSet> = models.into_iter().map(to_set).collect();
        sets.sort();
        Ok(sets)
    }

    /// Every answer set of `program`, in lexicographic order.
    pub fn enumerate_answer_sets(&self, program: &Program) -> Result<Vec<AtomSet>, OracleError> {
        let (rules, models) = self.model_masks(program)?;
        let mut sets: Vec<AtomSet> =
            models.into_iter().filter(|&m| minimal_for_reduct(&rules, m)).map(to_set).collect();
        sets.sort();
        Ok(sets)
    }

    pub fn has_model(&self, program: &Program) -> Result<bool, OracleError> {
        Ok(!self.model_masks(program)?.1.is_empty())
    }

    pub fn has_answer_set(&self, program: &Program) -> Result<bool, OracleError> {
        let (rules, models) = self.model_masks(program)?;
        Ok(models.into_iter().any(|m| minimal_for_reduct(&rules, m)))
    }
}

/// No proper subset of `m` satisfies the reduct with respect to `m`.
fn minimal_for_reduct(rules: &[MaskRule], m: u64) -> bool {
    let reduct: Vec<MaskRule> = rules.iter().filter(|r| r.neg & m == 0).map(|r| MaskRule { neg: 0, ..*r }).collect();
    // proper submasks of m, from m-1 down to 0
    let mut sub = m;
    while sub != 0 {
        sub = (sub - 1) & m;
        if reduct.iter().all(|r| r.satisfied_by(sub)) {
            return false;
        }
    }
    true
}

/// `true` iff `m` is a model of `program` and no proper subset of `m` is a
/// model of the reduct with respect to `m`. Works on any program size; the
/// cost is exponential in `|m|`.
pub fn is_answer_set(program: &Program, m: &AtomSet) -> bool {
    if !program.is_model(m) {
        return false;
    }
    let reduct = program.reduct(m);
    let members: Vec<AtomId> = m.iter().copied().collect();
    assert!(members.len() < 64, "answer-set check limited to candidates with < 64 atoms");
    let full = (1u64 << members.len()) - 1;
    (0..full).all(|bits| {
        let subset: AtomSet = members.iter().enumerate().filter(|(i, _)| bits >> i & 1 == 1).map(|(_, &a)| a).collect();
        !reduct.is_model(&subset)
    })
}

fn label(labeling: &Labeling, v: Vertex) -> Result<u32, OracleError> {
    let l = labeling.get(&v).copied().ok_or(OracleError::Unlabeled(v))?;
    if !(1..=64).contains(&l) {
        return Err(OracleError::LabelOutOfRange(l));
    }
    Ok(l)
}

fn triple_for(
    program: &Program,
    labeling: &Labeling,
    interp: &AtomSet,
    unsatisfied: impl Fn(&Rule) -> bool,
) -> Result<KTriple, OracleError> {
    let mut t = LabelSet::EMPTY;
    let mut f = LabelSet::EMPTY;
    let mut u = LabelSet::EMPTY;
    for (i, name) in program.atoms.iter().enumerate() {
        let l = label(labeling, Vertex::atom(name))?;
        if interp.contains(&AtomId(i)) {
            t.insert(l);
        } else {
            f.insert(l);
        }
    }
    for rule in &program.rules {
        let l = label(labeling, Vertex::rule(&rule.id))?;
        if unsatisfied(rule) {
            u.insert(l);
        }
    }
    Ok(KTriple::new(t, f, u))
}

/// The unique triple having `interp` as a program interpretation under
/// `labeling`: labels of true atoms, of false atoms, and of rules that
/// `interp` violates.
pub fn interpretation_triple(program: &Program, labeling: &Labeling, interp: &AtomSet) -> Result<KTriple, OracleError> {
    triple_for(program, labeling, interp, |r| !r.is_model(interp))
}

/// Like [`interpretation_triple`] for `j`, except that only rules surviving
/// the reduct with respect to `i` count, and they are checked without their
/// negative body.
pub fn reduct_interpretation_triple(
    program: &Program,
    labeling: &Labeling,
    i: &AtomSet,
    j: &AtomSet,
) -> Result<KTriple, OracleError> {
    triple_for(program, labeling, j, |r| r.neg.is_disjoint(i) && !r.positive_part().is_model(j))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sets(p: &Program, names: &[&[&str]]) -> Vec<AtomSet> {
        names.iter().map(|n| p.atom_set(n.iter().copied()).unwrap()).collect()
    }

    #[test]
    fn models_of_small_programs() {
        let ex = Program::parse("x :- not y.\n:- x, not y.").unwrap();
        let models = Oracle::default().enumerate_models(&ex).unwrap();
        assert!(models.contains(&ex.atom_set(["x", "y"]).unwrap()));
        assert_eq!(models, sets(&ex, &[&["x", "y"], &["y"]]));

        let mut lone = Program::new();
        lone.add_atom("a");
        assert_eq!(Oracle::default().enumerate_models(&lone).unwrap(), sets(&lone, &[&[], &["a"]]));

        let neg = Program::parse(":- not x.").unwrap();
        assert_eq!(Oracle::default().enumerate_models(&neg).unwrap(), sets(&neg, &[&["x"]]));
    }

    #[test]
    fn lexicographic_order() {
        let mut p = Program::new();
        for a in ["a", "b", "c"] {
            p.add_atom(a);
        }
        let all = Oracle::default().enumerate_models(&p).unwrap();
        let expect = sets(&p, &[&[], &["a"], &["a", "b"], &["a", "b", "c"], &["a", "c"], &["b"], &["b", "c"], &["c"]]);
        assert_eq!(all, expect);
    }

    #[test]
    fn answer_set_examples() {
        let neg = Program::parse(":- not x.").unwrap();
        assert!(!is_answer_set(&neg, &neg.atom_set(["x"]).unwrap()));
        assert!(Oracle::default().enumerate_answer_sets(&neg).unwrap().is_empty());

        let fact = Program::parse("a.").unwrap();
        assert!(is_answer_set(&fact, &fact.atom_set(["a"]).unwrap()));
        assert_eq!(Oracle::default().enumerate_answer_sets(&fact).unwrap(), sets(&fact, &[&["a"]]));

        let ex = Program::parse("x :- not y.\n:- x, not y.").unwrap();
        assert!(!is_answer_set(&ex, &ex.atom_set(["x", "y"]).unwrap()));
        // the reduct w.r.t. {y} is empty, so {} models it and {y} is not minimal either
        assert!(Oracle::default().enumerate_answer_sets(&ex).unwrap().is_empty());
    }

    #[test]
    fn disjunction_gives_two_answer_sets() {
        let p = Program::parse("a | b.").unwrap();
        assert_eq!(Oracle::default().enumerate_answer_sets(&p).unwrap(), sets(&p, &[&["a"], &["b"]]));
    }

    #[test]
    fn bound_is_enforced() {
        let mut p = Program::new();
        for i in 0..5 {
            p.add_atom(format!("a{i}"));
        }
        let err = Oracle::with_bound(4).enumerate_models(&p).unwrap_err();
        assert_eq!(err, OracleError::BoundExceeded { atoms: 5, bound: 4 });
    }

    #[test]
    fn reduct_triples() {
        let p = Program::parse(":- not x.").unwrap();
        let mut labeling = Labeling::new();
        labeling.insert(Vertex::atom("x"), 1);
        labeling.insert(Vertex::rule("r1"), 2);
        let x = p.atom_set(["x"]).unwrap();
        let none = AtomSet::new();
        let s = |t: &[u32], f: &[u32], u: &[u32]| KTriple::from_labels(t, f, u);
        assert_eq!(reduct_interpretation_triple(&p, &labeling, &x, &none).unwrap(), s(&[], &[1], &[]));
        assert_eq!(reduct_interpretation_triple(&p, &labeling, &none, &none).unwrap(), s(&[], &[1], &[2]));
        // with I = {} the reduct triple is the plain triple of the reduct
        let red = p.reduct(&none);
        for j in [&none, &x] {
            assert_eq!(
                reduct_interpretation_triple(&p, &labeling, &none, j).unwrap(),
                interpretation_triple(&red, &labeling, j).unwrap()
            );
        }
        labeling.remove(&Vertex::rule("r1"));
        assert!(matches!(interpretation_triple(&p, &labeling, &x), Err(OracleError::Unlabeled(_))));
    }

    #[test]
    fn empty_program_triple() {
        let p = Program::new();
        assert_eq!(interpretation_triple(&p, &Labeling::new(), &AtomSet::new()).unwrap(), KTriple::default());
    }
}
