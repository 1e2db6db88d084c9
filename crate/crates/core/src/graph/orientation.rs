//! Homogeneous orientations of incidence graphs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Digraph, Sign, Vertex};
use crate::program::{AtomId, Part, Program};

/// The edges between one rule and the atoms of one of its parts. A
/// homogeneous orientation points all of them the same way.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientationGroup {
    pub rule: usize,
    pub sign: Sign,
    pub atoms: Vec<AtomId>,
}

/// Non-empty groups in rule order, then head, positive, negative.
pub fn orientation_groups(program: &Program) -> Vec<OrientationGroup> {
    let mut groups = Vec::new();
    for (ri, rule) in program.rules.iter().enumerate() {
        for part in [Part::Head, Part::PositiveBody, Part::NegativeBody] {
            let atoms: Vec<AtomId> = rule.part(part).iter().copied().collect();
            if !atoms.is_empty() {
                groups.push(OrientationGroup { rule: ri, sign: part.into(), atoms });
            }
        }
    }
    groups
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrientationOptions {
    /// Enumerate all orientations when there are at most this many groups.
    pub max_exhaustive_groups: usize,
    /// Otherwise draw this many random orientations.
    pub samples: usize,
    pub seed: u64,
}

impl Default for OrientationOptions {
    fn default() -> Self {
        OrientationOptions { max_exhaustive_groups: 14, samples: 64, seed: 0 }
    }
}

enum Choices {
    All { next: u64, end: u64 },
    Sampled { rng: Box<ChaCha8Rng>, left: usize },
}

/// Iterator over homogeneous orientations. Vertices are ordered atoms first,
/// then rules, as in the incidence graph.
pub struct HomogeneousOrientations<'a> {
    program: &'a Program,
    groups: Vec<OrientationGroup>,
    choices: Choices,
}

impl HomogeneousOrientations<'_> {
    pub fn groups(&self) -> &[OrientationGroup] {
        &self.groups
    }

    /// `true` if every orientation is produced, `false` if sampling.
    pub fn is_exhaustive(&self) -> bool {
        matches!(self.choices, Choices::All { .. })
    }

    fn build(&self, choice: impl Fn(usize) -> bool) -> Digraph {
        let vertices = self
            .program
            .atoms
            .iter()
            .map(Vertex::atom)
            .chain(self.program.rules.iter().map(|r| Vertex::rule(&r.id)))
            .collect();
        let atoms = self.program.atoms.len();
        let mut arcs = Vec::new();
        for (g, group) in self.groups.iter().enumerate() {
            let r = atoms + group.rule;
            for a in &group.atoms {
                // false: atom -> rule, true: rule -> atom
                arcs.push(if choice(g) { (r, a.0) } else { (a.0, r) });
            }
        }
        Digraph::new(vertices, arcs).expect("program vertices are distinct")
    }
}

impl Iterator for HomogeneousOrientations<'_> {
    type Item = Digraph;

    fn next(&mut self) -> Option<Digraph> {
        match &mut self.choices {
            Choices::All { next, end } => {
                if *next >= *end {
                    return None;
                }
                let bits = *next;
                *next += 1;
                Some(self.build(|g| bits >> g & 1 == 1))
            }
            Choices::Sampled { rng, left } => {
                if *left == 0 {
                    return None;
                }
                *left -= 1;
                let bits: Vec<bool> = (0..self.groups.len()).map(|_| rng.gen()).collect();
                Some(self.build(|g| bits[g]))
            }
        }
    }
}

pub fn homogeneous_orientations(program: &Program, options: OrientationOptions) -> HomogeneousOrientations<'_> {
    let groups = orientation_groups(program);
    let limit = options.max_exhaustive_groups.min(63);
    let choices = if groups.len() <= limit {
        Choices::All { next: 0, end: 1u64 << groups.len() }
    } else {
        Choices::Sampled { rng: Box::new(ChaCha8Rng::seed_from_u64(options.seed)), left: options.samples }
    };
    HomogeneousOrientations { program, groups, choices }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::incidence_graph;

    #[test]
    fn counts() {
        let fact = Program::parse("a.").unwrap();
        assert_eq!(homogeneous_orientations(&fact, OrientationOptions::default()).count(), 2);
        let ex = Program::parse("x :- not y.\n:- x, not y.").unwrap();
        assert_eq!(orientation_groups(&ex).len(), 4);
        assert_eq!(homogeneous_orientations(&ex, OrientationOptions::default()).count(), 16);
    }

    #[test]
    fn orientations_cover_the_incidence_graph() {
        let p = Program::parse("a | b :- c, not d.\nc :- a, b.").unwrap();
        let inc = incidence_graph(&p);
        for d in homogeneous_orientations(&p, OrientationOptions::default()) {
            assert_eq!(d.arcs().len(), inc.edges().len());
            assert!(d.arcs().iter().all(|&(u, v)| inc.has_edge(u, v)));
            // head atoms of r1 agree
            assert_eq!(d.has_arc(0, 4), d.has_arc(1, 4));
        }
    }

    #[test]
    fn sampling_is_seeded() {
        let p = Program::parse("a :- b.\nb :- a.").unwrap();
        let opts = OrientationOptions { max_exhaustive_groups: 1, samples: 5, seed: 7 };
        let first: Vec<_> = homogeneous_orientations(&p, opts).collect();
        let again: Vec<_> = homogeneous_orientations(&p, opts).collect();
        assert_eq!(first.len(), 5);
        assert_eq!(first, again);
        assert!(!homogeneous_orientations(&p, opts).is_exhaustive());
    }
}
