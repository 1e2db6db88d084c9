//! Seeded random programs and formulas.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::qbf::{Literal, QbfEA};
use crate::program::{AtomId, Program, Rule};

/// Probability that an atom lands in a rule's head, positive body or
/// negative body; it is left out otherwise. The three should sum to at
/// most one.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PartProbabilities {
    pub head: f64,
    pub pos: f64,
    pub neg: f64,
}

impl Default for PartProbabilities {
    fn default() -> Self {
        PartProbabilities { head: 0.2, pos: 0.2, neg: 0.2 }
    }
}

/// Atoms `a1..`, rules `r1..`; for every rule and atom one uniform draw
/// decides the part, so parts are disjoint by construction.
pub fn gen_random_program(num_atoms: usize, num_rules: usize, probs: PartProbabilities, seed: u64) -> Program {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut p = Program::new();
    for i in 1..=num_atoms {
        p.add_atom(format!("a{i}"));
    }
    let (h, hp, hpn) = (probs.head, probs.head + probs.pos, probs.head + probs.pos + probs.neg);
    for r in 1..=num_rules {
        let (mut head, mut pos, mut neg) = (Vec::new(), Vec::new(), Vec::new());
        for a in 0..num_atoms {
            let x: f64 = rng.gen();
            if x < h {
                head.push(AtomId(a));
            } else if x < hp {
                pos.push(AtomId(a));
            } else if x < hpn {
                neg.push(AtomId(a));
            }
        }
        p.add_rule(Rule::new(format!("r{r}"), head, pos, neg));
    }
    p
}

/// `n` existential variables `x1..`, `m` universal variables `y1..` and `r`
/// terms, each over 1 to 3 distinct variables with random polarity.
pub fn gen_random_qbf(n: usize, m: usize, r: usize, seed: u64) -> QbfEA {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let exists: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let forall: Vec<String> = (1..=m).map(|i| format!("y{i}")).collect();
    let vars: Vec<&String> = exists.iter().chain(&forall).collect();
    let mut terms = Vec::new();
    if !vars.is_empty() {
        for _ in 0..r {
            let len = rng.gen_range(1..=vars.len().min(3));
            let chosen: Vec<&&String> = vars.choose_multiple(&mut rng, len).collect();
            terms.push(chosen.into_iter().map(|v| Literal { var: (*v).clone(), negated: rng.gen() }).collect());
        }
    }
    QbfEA::new(exists, forall, terms).expect("generated formulas are well formed")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        let probs = PartProbabilities::default();
        assert_eq!(gen_random_program(5, 5, probs, 3), gen_random_program(5, 5, probs, 3));
        assert_eq!(gen_random_qbf(3, 3, 4, 9), gen_random_qbf(3, 3, 4, 9));
    }

    #[test]
    fn zero_probabilities_give_empty_rules() {
        let p = gen_random_program(4, 3, PartProbabilities { head: 0.0, pos: 0.0, neg: 0.0 }, 1);
        assert_eq!(p.atoms.len(), 4);
        assert!(p.rules.iter().all(|r| r.head.is_empty() && r.pos.is_empty() && r.neg.is_empty()));
    }

    #[test]
    fn generated_programs_validate() {
        for seed in 0..500 {
            let p = gen_random_program(5, 5, PartProbabilities::default(), seed);
            assert!(p.validate().is_ok());
        }
    }
}
