//! Formulas `∃x1..xn ∀y1..ym D1 ∨ ... ∨ Dr` with terms of one to three
//! literals, and the program whose answer sets witness validity.
//!
//! Text format, one declaration per line, `%` starts a comment:
//!
//! ```text
//! exists x1 x2
//! forall y1 y2
//! term x1 -y2
//! term -x2 y2
//! ```

use std::collections::BTreeSet;
use std::fmt;

use super::GenError;
use crate::program::{Program, Rule};

/// Default cap on `n + m` for [`QbfEA::is_valid`].
pub const DEFAULT_QBF_BOUND: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub var: String,
    pub negated: bool,
}

impl Literal {
    pub fn pos(var: impl Into<String>) -> Self {
        Literal { var: var.into(), negated: false }
    }

    pub fn neg(var: impl Into<String>) -> Self {
        Literal { var: var.into(), negated: true }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            write!(f, "-{}", self.var)
        } else {
            f.write_str(&self.var)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QbfEA {
    exists: Vec<String>,
    forall: Vec<String>,
    terms: Vec<Vec<Literal>>,
}

/// Where a variable lives: existential or universal, and its position.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Var {
    X(usize),
    Y(usize),
}

impl QbfEA {
    pub fn new(exists: Vec<String>, forall: Vec<String>, terms: Vec<Vec<Literal>>) -> Result<Self, GenError> {
        let mut seen = BTreeSet::new();
        for v in exists.iter().chain(&forall) {
            if v.is_empty() || !v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(GenError::InvalidQbf(format!("bad variable name `{v}`")));
            }
            if !seen.insert(v.as_str()) {
                return Err(GenError::InvalidQbf(format!("variable `{v}` declared twice")));
            }
        }
        for (i, t) in terms.iter().enumerate() {
            if t.is_empty() || t.len() > 3 {
                return Err(GenError::InvalidQbf(format!("term {} has {} literals, expected 1 to 3", i + 1, t.len())));
            }
            if let Some(l) = t.iter().find(|l| !seen.contains(l.var.as_str())) {
                return Err(GenError::InvalidQbf(format!("undeclared variable `{}`", l.var)));
            }
        }
        Ok(QbfEA { exists, forall, terms })
    }

    pub fn exists(&self) -> &[String] {
        &self.exists
    }

    pub fn forall(&self) -> &[String] {
        &self.forall
    }

    pub fn terms(&self) -> &[Vec<Literal>] {
        &self.terms
    }

    fn var(&self, name: &str) -> Var {
        if let Some(i) = self.exists.iter().position(|v| v == name) {
            Var::X(i)
        } else {
            Var::Y(self.forall.iter().position(|v| v == name).expect("variables are declared"))
        }
    }

    pub fn parse(text: &str) -> Result<Self, GenError> {
        let mut exists = Vec::new();
        let mut forall = Vec::new();
        let mut terms = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.split('%').next().unwrap_or("");
            let mut words = line.split_whitespace();
            let Some(head) = words.next() else { continue };
            let rest: Vec<&str> = words.collect();
            let syntax = |message: String| GenError::Syntax { line: n + 1, message };
            match head {
                "exists" => exists.extend(rest.iter().map(|s| s.to_string())),
                "forall" => forall.extend(rest.iter().map(|s| s.to_string())),
                "term" => terms.push(
                    rest.iter()
                        .map(|w| match w.strip_prefix('-') {
                            Some(v) => Literal::neg(v),
                            None => Literal::pos(*w),
                        })
                        .collect(),
                ),
                other => return Err(syntax(format!("expected exists, forall or term, found `{other}`"))),
            }
        }
        QbfEA::new(exists, forall, terms)
    }

    /// Brute force over all assignments, with `n + m` at most
    /// [`DEFAULT_QBF_BOUND`].
    pub fn is_valid(&self) -> Result<bool, GenError> {
        self.is_valid_with_bound(DEFAULT_QBF_BOUND)
    }

    pub fn is_valid_with_bound(&self, bound: usize) -> Result<bool, GenError> {
        let vars = self.exists.len() + self.forall.len();
        if vars > bound.min(63) {
            return Err(GenError::BoundExceeded {
                what: "validity check",
                size: 1u128 << vars.min(127),
                bound: 1u128 << bound.min(63),
            });
        }
        // per term: required-true and required-false masks over x and y
        let masks: Vec<[u64; 4]> = self
            .terms
            .iter()
            .map(|t| {
                let mut m = [0u64; 4];
                for l in t {
                    let (slot, bit) = match self.var(&l.var) {
                        Var::X(i) => (0, i),
                        Var::Y(i) => (2, i),
                    };
                    m[slot + l.negated as usize] |= 1 << bit;
                }
                m
            })
            .collect();
        let holds =
            |x: u64, y: u64| masks.iter().any(|m| m[0] & !x == 0 && m[1] & x == 0 && m[2] & !y == 0 && m[3] & y == 0);
        let (n, m) = (self.exists.len(), self.forall.len());
        Ok((0..1u64 << n).any(|x| (0..1u64 << m).all(|y| holds(x, y))))
    }
}

impl fmt::Display for QbfEA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "exists {}", self.exists.join(" "))?;
        writeln!(f, "forall {}", self.forall.join(" "))?;
        for t in &self.terms {
            let lits: Vec<String> = t.iter().map(|l| l.to_string()).collect();
            writeln!(f, "term {}", lits.join(" "))?;
        }
        Ok(())
    }
}

/// The program whose answer sets correspond to the existential assignments
/// that make the formula true for every universal assignment.
///
/// The `i`-th existential variable becomes atoms `x{i}`, `v{i}`, the `i`-th
/// universal variable atoms `y{i}`, `z{i}`, and `w` is added last. Rules, in
/// order:
///
/// * `x{i} | v{i}.` for each existential variable;
/// * `y{i} | z{i}.`, `y{i} :- w.`, `z{i} :- w.`, `w :- y{i}, z{i}.` for each
///   universal variable;
/// * `w :- ...` for each term, with a negated `x{i}` replaced by `v{i}` and
///   a negated `y{i}` by `z{i}`;
/// * `:- not w.`
///
/// ```
/// use cwasp::gen::QbfEA;
///
/// let phi = QbfEA::parse("exists a\nterm a").unwrap();
/// let p = cwasp::gen::reduce_qbf_to_asp(&phi);
/// assert_eq!(p.to_string(), "x1 | v1.\nw :- x1.\n:- not w.\n");
/// ```
pub fn reduce_qbf_to_asp(phi: &QbfEA) -> Program {
    let mut p = Program::new();
    let (n, m) = (phi.exists.len(), phi.forall.len());
    let x: Vec<_> = (1..=n).map(|i| (p.add_atom(format!("x{i}")), p.add_atom(format!("v{i}")))).collect();
    let y: Vec<_> = (1..=m).map(|i| (p.add_atom(format!("y{i}")), p.add_atom(format!("z{i}")))).collect();
    let w = p.add_atom("w");
    let mut rules = Vec::new();
    for &(xi, vi) in &x {
        rules.push((vec![xi, vi], vec![], vec![]));
    }
    for &(yi, zi) in &y {
        rules.push((vec![yi, zi], vec![], vec![]));
        rules.push((vec![yi], vec![w], vec![]));
        rules.push((vec![zi], vec![w], vec![]));
        rules.push((vec![w], vec![yi, zi], vec![]));
    }
    for t in &phi.terms {
        let body = t
            .iter()
            .map(|l| match (phi.var(&l.var), l.negated) {
                (Var::X(i), false) => x[i].0,
                (Var::X(i), true) => x[i].1,
                (Var::Y(i), false) => y[i].0,
                (Var::Y(i), true) => y[i].1,
            })
            .collect();
        rules.push((vec![w], body, vec![]));
    }
    rules.push((vec![], vec![], vec![w]));
    for (k, (head, pos, neg)) in rules.into_iter().enumerate() {
        p.add_rule(Rule::new(format!("r{}", k + 1), head, pos, neg));
    }
    p
}
