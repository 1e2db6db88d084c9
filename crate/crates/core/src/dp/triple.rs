use std::fmt;

use serde::{Serialize, Serializer};

use crate::expr::Label;

/// Largest label a [`LabelSet`] can hold.
pub const MAX_LABEL: Label = 64;

/// A set of labels from `1..=64`, stored as a bit vector.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LabelSet(u64);

impl LabelSet {
    pub const EMPTY: LabelSet = LabelSet(0);

    fn bit(label: Label) -> u64 {
        assert!((1..=MAX_LABEL).contains(&label), "label {label} outside 1..=64");
        1 << (label - 1)
    }

    pub fn from_labels(labels: &[Label]) -> Self {
        let mut s = LabelSet::EMPTY;
        for &l in labels {
            s.insert(l);
        }
        s
    }

    pub fn insert(&mut self, label: Label) {
        self.0 |= Self::bit(label);
    }

    pub fn remove(&mut self, label: Label) {
        self.0 &= !Self::bit(label);
    }

    pub fn contains(self, label: Label) -> bool {
        (1..=MAX_LABEL).contains(&label) && self.0 & Self::bit(label) != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn union(self, other: LabelSet) -> LabelSet {
        LabelSet(self.0 | other.0)
    }

    /// `i` replaced by `j` if present.
    pub fn relabel(self, i: Label, j: Label) -> LabelSet {
        if self.contains(i) {
            let mut s = self;
            s.remove(i);
            s.insert(j);
            s
        } else {
            self
        }
    }

    pub fn iter(self) -> impl Iterator<Item = Label> {
        (1..=MAX_LABEL).filter(move |&l| self.contains(l))
    }
}

impl fmt::Debug for LabelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for LabelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.iter().map(|l| l.to_string()).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

impl Serialize for LabelSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

/// `(T, F, U)`: labels of true atoms, false atoms and unsatisfied rules.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct KTriple {
    pub t: LabelSet,
    pub f: LabelSet,
    pub u: LabelSet,
}

impl KTriple {
    pub fn new(t: LabelSet, f: LabelSet, u: LabelSet) -> Self {
        KTriple { t, f, u }
    }

    pub fn from_labels(t: &[Label], f: &[Label], u: &[Label]) -> Self {
        KTriple::new(LabelSet::from_labels(t), LabelSet::from_labels(f), LabelSet::from_labels(u))
    }

    /// Componentwise union.
    pub fn union(self, other: KTriple) -> KTriple {
        KTriple { t: self.t.union(other.t), f: self.f.union(other.f), u: self.u.union(other.u) }
    }

    /// Replaces label `i` by `j` in every component.
    pub fn relabel(self, i: Label, j: Label) -> KTriple {
        KTriple { t: self.t.relabel(i, j), f: self.f.relabel(i, j), u: self.u.relabel(i, j) }
    }

    /// Removes `j` from `U` when `i` is in `s`.
    pub fn edge_update(self, s: LabelSet, i: Label, j: Label) -> KTriple {
        if s.contains(i) {
            let mut u = self.u;
            u.remove(j);
            KTriple { u, ..self }
        } else {
            self
        }
    }
}

impl fmt::Debug for KTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for KTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.t, self.f, self.u)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(t: &[Label], f: &[Label], u: &[Label]) -> KTriple {
        KTriple::from_labels(t, f, u)
    }

    #[test]
    fn union() {
        assert_eq!(q(&[1], &[], &[]).union(q(&[], &[], &[2])), q(&[1], &[], &[2]));
        assert_eq!(q(&[1], &[3], &[2]).union(KTriple::default()), q(&[1], &[3], &[2]));
        assert_eq!(q(&[], &[1], &[]).union(q(&[], &[], &[2])), q(&[], &[1], &[2]));
    }

    #[test]
    fn relabel() {
        assert_eq!(q(&[1], &[], &[3]).relabel(3, 2), q(&[1], &[], &[2]));
        assert_eq!(q(&[1], &[], &[3]).relabel(4, 2), q(&[1], &[], &[3]));
        assert_eq!(q(&[], &[1], &[2, 3]).relabel(3, 2), q(&[], &[1], &[2]));
    }

    #[test]
    fn edge_update() {
        let a = q(&[1], &[], &[2]);
        assert_eq!(a.edge_update(a.t, 1, 2), q(&[1], &[], &[]));
        assert_eq!(a.edge_update(a.f, 1, 2), a);
        let b = q(&[], &[1], &[2, 3]);
        assert_eq!(b.edge_update(b.f, 1, 3), q(&[], &[1], &[2]));
    }

    #[test]
    fn label_sets() {
        let mut s = LabelSet::EMPTY;
        s.insert(64);
        s.insert(1);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![1, 64]);
        assert!(!s.contains(0) && !s.contains(65));
        assert_eq!(s.to_string(), "{1,64}");
        assert_eq!(serde_json::to_string(&q(&[1, 3], &[], &[2])).unwrap(), r#"{"t":[1,3],"f":[],"u":[2]}"#);
    }
}
