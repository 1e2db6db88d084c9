//! Ground disjunctive programs.
//!
//! A [`Program`] is an ordered list of atoms plus an ordered list of rules
//! `h1 | ... | hl :- p1, ..., pm, not n1, ..., not nk.` Each rule keeps its
//! head, positive body and negative body as sets of [`AtomId`]s that index
//! into the program's atom list.
//!
//! The text format is line oriented:
//!
//! ```text
//! % comment
//! x :- not y.
//! @s: :- x, not y.
//! a | b.
//! #atoms x y a b c.
//! ```
//!
//! `@id:` names a rule; unnamed rules get `r1`, `r2`, ... by position. The
//! `#atoms` directive declares atoms (and their order) that would otherwise
//! be inferred from first occurrence; it is how atoms that occur in no rule
//! are written down.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use thiserror::Error;

/// Index of an atom in [`Program::atoms`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AtomId(pub usize);

/// A set of atoms, ordered by atom index. `Ord` on this type is the
/// lexicographic order over the sorted index sequence.
pub type AtomSet = BTreeSet<AtomId>;

/// The three places an atom can occur in a rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Part {
    Head,
    PositiveBody,
    NegativeBody,
}

impl fmt::Display for Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Part::Head => "head",
            Part::PositiveBody => "positive body",
            Part::NegativeBody => "negative body",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rule {
    pub id: String,
    pub head: AtomSet,
    pub pos: AtomSet,
    pub neg: AtomSet,
}

impl Rule {
    pub fn new(
        id: impl Into<String>,
        head: impl IntoIterator<Item = AtomId>,
        pos: impl IntoIterator<Item = AtomId>,
        neg: impl IntoIterator<Item = AtomId>,
    ) -> Self {
        Rule {
            id: id.into(),
            head: head.into_iter().collect(),
            pos: pos.into_iter().collect(),
            neg: neg.into_iter().collect(),
        }
    }

    /// `true` iff `interp` satisfies the rule: whenever the positive body is
    /// contained in `interp` and the negative body is disjoint from it, some
    /// head atom is in `interp`.
    pub fn is_model(&self, interp: &AtomSet) -> bool {
        let body_holds = self.pos.is_subset(interp) && self.neg.is_disjoint(interp);
        !body_holds || !self.head.is_disjoint(interp)
    }

    /// The rule without its negative body.
    pub fn positive_part(&self) -> Rule {
        Rule { id: self.id.clone(), head: self.head.clone(), pos: self.pos.clone(), neg: AtomSet::new() }
    }

    /// Every `(atom, part)` occurrence, head first.
    pub fn occurrences(&self) -> impl Iterator<Item = (AtomId, Part)> + '_ {
        self.head
            .iter()
            .map(|&a| (a, Part::Head))
            .chain(self.pos.iter().map(|&a| (a, Part::PositiveBody)))
            .chain(self.neg.iter().map(|&a| (a, Part::NegativeBody)))
    }

    pub fn part(&self, part: Part) -> &AtomSet {
        match part {
            Part::Head => &self.head,
            Part::PositiveBody => &self.pos,
            Part::NegativeBody => &self.neg,
        }
    }
}

/// A ground disjunctive program.
///
/// Fields are public so that malformed programs can be represented and
/// reported by [`Program::validate`]; programs produced by
/// [`Program::parse`] and the generators are always valid.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Program {
    pub atoms: Vec<String>,
    pub rules: Vec<Rule>,
}

/// One broken invariant found by [`Program::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    InvalidAtomName(String),
    DuplicateAtom(String),
    InvalidRuleId(String),
    DuplicateRuleId(String),
    UnknownAtom { rule: String, atom: AtomId },
    OverlappingParts { rule: String, atom: String, first: Part, second: Part },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::InvalidAtomName(n) => write!(f, "invalid atom name `{n}`"),
            Violation::DuplicateAtom(n) => write!(f, "atom `{n}` declared twice"),
            Violation::InvalidRuleId(n) => write!(f, "invalid rule id `{n}`"),
            Violation::DuplicateRuleId(n) => write!(f, "rule id `{n}` used twice"),
            Violation::UnknownAtom { rule, atom } => {
                write!(f, "rule `{rule}` references unknown atom #{}", atom.0)
            }
            Violation::OverlappingParts { rule, atom, first, second } => {
                write!(f, "atom `{atom}` occurs in both the {first} and the {second} of rule `{rule}`")
            }
        }
    }
}

/// Itemized list of invariant violations.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("invalid program: {}", .violations.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ProgramError {
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error(
        "normalization error at {line}:{column}: atom `{atom}` occurs in both the {first} and the {second} of one rule"
    )]
    Normalization { line: usize, column: usize, atom: String, first: Part, second: Part },
    #[error(transparent)]
    Invalid(#[from] ValidationReport),
    #[error("unknown atom `{0}`")]
    UnknownAtom(String),
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_lowercase()) && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn is_rule_id(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Program {
    pub fn new() -> Self {
        Self::default()
    }

    /// Parses the program text format described in the module docs.
    pub fn parse(text: &str) -> Result<Program, ProgramError> {
        Parser::new(text).parse()
    }

    pub fn atom_id(&self, name: &str) -> Option<AtomId> {
        self.atoms.iter().position(|a| a == name).map(AtomId)
    }

    pub fn atom_name(&self, id: AtomId) -> &str {
        &self.atoms[id.0]
    }

    pub fn rule(&self, id: &str) -> Option<&Rule> {
        self.rules.iter().find(|r| r.id == id)
    }

    /// Looks up a set of atoms by name.
    pub fn atom_set<'a>(&self, names: impl IntoIterator<Item = &'a str>) -> Result<AtomSet, ProgramError> {
        names.into_iter().map(|n| self.atom_id(n).ok_or_else(|| ProgramError::UnknownAtom(n.to_string()))).collect()
    }

    pub fn atom_names(&self, set: &AtomSet) -> Vec<&str> {
        set.iter().map(|&a| self.atom_name(a)).collect()
    }

    pub fn all_atoms(&self) -> AtomSet {
        (0..self.atoms.len()).map(AtomId).collect()
    }

    /// Adds an atom, returning the existing id if the name is already known.
    pub fn add_atom(&mut self, name: impl Into<String>) -> AtomId {
        let name = name.into();
        match self.atom_id(&name) {
            Some(id) => id,
            None => {
                self.atoms.push(name);
                AtomId(self.atoms.len() - 1)
            }
        }
    }

    pub fn add_rule(&mut self, rule: Rule) {
        self.rules.push(rule);
    }

    pub fn is_model(&self, interp: &AtomSet) -> bool {
        self.rules.iter().all(|r| r.is_model(interp))
    }

    /// The reduct with respect to `interp`: rules whose negative body meets
    /// `interp` are dropped, the others lose their negative body.
    pub fn reduct(&self, interp: &AtomSet) -> Program {
        Program {
            atoms: self.atoms.clone(),
            rules: self.rules.iter().filter(|r| r.neg.is_disjoint(interp)).map(Rule::positive_part).collect(),
        }
    }

    /// Checks name syntax, name uniqueness, atom references, and that the
    /// three parts of every rule are pairwise disjoint.
    pub fn validate(&self) -> Result<(), ValidationReport> {
        let mut violations = Vec::new();
        let mut seen = HashSet::new();
        for name in &self.atoms {
            if !is_identifier(name) || name == "not" {
                violations.push(Violation::InvalidAtomName(name.clone()));
            }
            if !seen.insert(name.as_str()) {
                violations.push(Violation::DuplicateAtom(name.clone()));
            }
        }
        let mut ids = HashSet::new();
        for rule in &self.rules {
            if !is_rule_id(&rule.id) {
                violations.push(Violation::InvalidRuleId(rule.id.clone()));
            }
            if !ids.insert(rule.id.as_str()) {
                violations.push(Violation::DuplicateRuleId(rule.id.clone()));
            }
            let mut part_of: HashMap<AtomId, Part> = HashMap::new();
            for (atom, part) in rule.occurrences() {
                if atom.0 >= self.atoms.len() {
                    violations.push(Violation::UnknownAtom { rule: rule.id.clone(), atom });
                    continue;
                }
                if let Some(&first) = part_of.get(&atom) {
                    violations.push(Violation::OverlappingParts {
                        rule: rule.id.clone(),
                        atom: self.atoms[atom.0].clone(),
                        first,
                        second: part,
                    });
                } else {
                    part_of.insert(atom, part);
                }
            }
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(ValidationReport { violations })
        }
    }

    /// Atom order implied by first occurrence in the rule text.
    fn occurrence_order(&self) -> Vec<AtomId> {
        let mut seen = HashSet::new();
        let mut order = Vec::new();
        for rule in &self.rules {
            for (atom, _) in rule.occurrences() {
                if seen.insert(atom) {
                    order.push(atom);
                }
            }
        }
        order
    }

    fn write_rule(&self, f: &mut fmt::Formatter<'_>, index: usize, rule: &Rule) -> fmt::Result {
        if rule.id != format!("r{}", index + 1) {
            write!(f, "@{}: ", rule.id)?;
        }
        let head: Vec<&str> = rule.head.iter().map(|&a| self.atom_name(a)).collect();
        f.write_str(&head.join(" | "))?;
        // body literals in atom order so that re-parsing assigns the same ids
        let mut body: Vec<(AtomId, bool)> =
            rule.pos.iter().map(|&a| (a, true)).chain(rule.neg.iter().map(|&a| (a, false))).collect();
        body.sort();
        if !body.is_empty() {
            if !head.is_empty() {
                f.write_str(" ")?;
            }
            f.write_str(":- ")?;
            let lits: Vec<String> = body
                .iter()
                .map(
                    |&(a, positive)| {
                        if positive {
                            self.atom_name(a).to_string()
                        } else {
                            format!("not {}", self.atom_name(a))
                        }
                    },
                )
                .collect();
            f.write_str(&lits.join(", "))?;
        }
        f.write_str(".")
    }
}

/// Serializes to the text format; `Program::parse` inverts this on valid
/// programs.
impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let implied: Vec<AtomId> = self.occurrence_order();
        let all: Vec<AtomId> = (0..self.atoms.len()).map(AtomId).collect();
        if implied != all {
            f.write_str("#atoms")?;
            for a in &self.atoms {
                write!(f, " {a}")?;
            }
            f.write_str(".\n")?;
        }
        for (i, rule) in self.rules.iter().enumerate() {
            self.write_rule(f, i, rule)?;
            f.write_str("\n")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    At,
    Colon,
    Pipe,
    If,
    Comma,
    Dot,
    Directive(String),
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, toks: Vec::new(), pos: 0 }
    }

    fn syntax(line: usize, column: usize, message: impl Into<String>) -> ProgramError {
        ProgramError::Syntax { line, column, message: message.into() }
    }

    fn lex(&mut self) -> Result<(), ProgramError> {
        for (lineno, line) in self.src.lines().enumerate() {
            let line_no = lineno + 1;
            let chars: Vec<(usize, char)> = line.char_indices().collect();
            let mut k = 0;
            while k < chars.len() {
                let (_, c) = chars[k];
                let col = k + 1;
                match c {
                    '%' => break,
                    c if c.is_whitespace() => k += 1,
                    '@' => {
                        self.toks.push((Tok::At, line_no, col));
                        k += 1;
                    }
                    '|' => {
                        self.toks.push((Tok::Pipe, line_no, col));
                        k += 1;
                    }
                    ',' => {
                        self.toks.push((Tok::Comma, line_no, col));
                        k += 1;
                    }
                    '.' => {
                        self.toks.push((Tok::Dot, line_no, col));
                        k += 1;
                    }
                    ':' => {
                        if chars.get(k + 1).map(|&(_, c)| c) == Some('-') {
                            self.toks.push((Tok::If, line_no, col));
                            k += 2;
                        } else {
                            self.toks.push((Tok::Colon, line_no, col));
                            k += 1;
                        }
                    }
                    '#' | '_' | 'a'..='z' | 'A'..='Z' | '0'..='9' => {
                        let start = k;
                        k += 1;
                        while k < chars.len() && (chars[k].1.is_ascii_alphanumeric() || chars[k].1 == '_') {
                            k += 1;
                        }
                        let word: String = chars[start..k].iter().map(|&(_, c)| c).collect();
                        if let Some(d) = word.strip_prefix('#') {
                            self.toks.push((Tok::Directive(d.to_string()), line_no, col));
                        } else {
                            self.toks.push((Tok::Ident(word), line_no, col));
                        }
                    }
                    other => return Err(Self::syntax(line_no, col, format!("unexpected character `{other}`"))),
                }
            }
        }
        Ok(())
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _, _)| t)
    }

    fn here(&self) -> (usize, usize) {
        match self.toks.get(self.pos) {
            Some(&(_, l, c)) => (l, c),
            None => {
                let lines = self.src.lines().count().max(1);
                let last = self.src.lines().last().map_or(0, |l| l.chars().count());
                (lines, last + 1)
            }
        }
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), ProgramError> {
        if self.peek() == Some(&want) {
            self.pos += 1;
            Ok(())
        } else {
            let (l, c) = self.here();
            Err(Self::syntax(l, c, format!("expected {what}")))
        }
    }

    fn atom(&mut self) -> Result<(String, usize, usize), ProgramError> {
        let (l, c) = self.here();
        match self.peek() {
            Some(Tok::Ident(name)) if is_identifier(name) && name != "not" => {
                let name = name.clone();
                self.pos += 1;
                Ok((name, l, c))
            }
            Some(Tok::Ident(name)) => Err(Self::syntax(l, c, format!("`{name}` is not a valid atom name"))),
            _ => Err(Self::syntax(l, c, "expected an atom")),
        }
    }

    fn parse(mut self) -> Result<Program, ProgramError> {
        self.lex()?;
        let mut program = Program::new();
        let mut declared: Option<Vec<String>> = None;
        while self.pos < self.toks.len() {
            if let Some(Tok::Directive(d)) = self.peek().cloned() {
                let (l, c) = self.here();
                if d != "atoms" {
                    return Err(Self::syntax(l, c, format!("unknown directive `#{d}`")));
                }
                if declared.is_some() || !program.rules.is_empty() {
                    return Err(Self::syntax(l, c, "`#atoms` must come once, before any rule"));
                }
                self.pos += 1;
                let mut names = Vec::new();
                while self.peek() != Some(&Tok::Dot) {
                    let (name, l, c) = self.atom()?;
                    if names.contains(&name) {
                        return Err(Self::syntax(l, c, format!("atom `{name}` declared twice")));
                    }
                    names.push(name);
                }
                self.pos += 1;
                for n in &names {
                    program.add_atom(n.clone());
                }
                declared = Some(names);
                continue;
            }
            let rule = self.rule(&mut program)?;
            program.rules.push(rule);
        }
        program.validate()?;
        Ok(program)
    }

    fn rule(&mut self, program: &mut Program) -> Result<Rule, ProgramError> {
        let index = program.rules.len();
        let mut id = format!("r{}", index + 1);
        if self.peek() == Some(&Tok::At) {
            self.pos += 1;
            let (l, c) = self.here();
            match self.peek() {
                Some(Tok::Ident(name)) if is_rule_id(name) => {
                    id = name.clone();
                    self.pos += 1;
                }
                _ => return Err(Self::syntax(l, c, "expected a rule id after `@`")),
            }
            self.expect(Tok::Colon, "`:` after rule id")?;
        }
        let mut rule = Rule::new(id, [], [], []);
        let mut placed: HashMap<AtomId, Part> = HashMap::new();
        let mut place = |program: &mut Program, name: String, l: usize, c: usize, part: Part, rule: &mut Rule| {
            let a = program.add_atom(name.clone());
            match placed.get(&a) {
                Some(&first) if first != part => {
                    return Err(ProgramError::Normalization { line: l, column: c, atom: name, first, second: part })
                }
                _ => {
                    placed.insert(a, part);
                }
            }
            match part {
                Part::Head => rule.head.insert(a),
                Part::PositiveBody => rule.pos.insert(a),
                Part::NegativeBody => rule.neg.insert(a),
            };
            Ok(())
        };
        if matches!(self.peek(), Some(Tok::Ident(_))) {
            loop {
                let (name, l, c) = self.atom()?;
                place(program, name, l, c, Part::Head, &mut rule)?;
                if self.peek() == Some(&Tok::Pipe) {
                    self.pos += 1;
                } else {
                    break;
                }
            }
        }
        if self.peek() == Some(&Tok::If) {
            self.pos += 1;
            loop {
                let part = if self.peek() == Some(&Tok::Ident("not".into())) {
                    self.pos += 1;
                    Part::NegativeBody
                } else {
                    Part::PositiveBody
                };
                let (name, l, c) = self.atom()?;
                place(program, name, l, c, part, &mut rule)?;
                if self.peek() == Some(&Tok::Comma) {
                    self.pos += 1;
                } else {
                    break;
                }
            }
        }
        self.expect(Tok::Dot, "`.` at end of rule")?;
        Ok(rule)
    }
}
