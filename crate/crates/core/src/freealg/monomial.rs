use std::fmt;

use super::{FreeAlgError, GradedVariable};

/// A bracket expression: a variable or `[left, right]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BracketTree {
    Leaf(GradedVariable),
    Node(Box<BracketTree>, Box<BracketTree>),
}

impl BracketTree {
    pub fn leaf(v: GradedVariable) -> Self {
        BracketTree::Leaf(v)
    }

    pub fn bracket(left: BracketTree, right: BracketTree) -> Self {
        BracketTree::Node(Box::new(left), Box::new(right))
    }

    pub fn zdegree(&self) -> i64 {
        match self {
            BracketTree::Leaf(v) => v.degree,
            BracketTree::Node(l, r) => l.zdegree() + r.zdegree(),
        }
    }

    /// Leaves from left to right.
    pub fn leaves(&self) -> Vec<GradedVariable> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<GradedVariable>) {
        match self {
            BracketTree::Leaf(v) => out.push(*v),
            BracketTree::Node(l, r) => {
                l.collect_leaves(out);
                r.collect_leaves(out);
            }
        }
    }
}

impl From<GradedVariable> for BracketTree {
    fn from(v: GradedVariable) -> Self {
        BracketTree::Leaf(v)
    }
}

impl From<&LeftNormedMonomial> for BracketTree {
    fn from(m: &LeftNormedMonomial) -> Self {
        let mut letters = m.letters().iter();
        let first = BracketTree::Leaf(*letters.next().expect("monomials are nonempty"));
        letters.fold(first, |acc, v| BracketTree::bracket(acc, BracketTree::Leaf(*v)))
    }
}

impl fmt::Display for BracketTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BracketTree::Leaf(v) => write!(f, "{v}"),
            BracketTree::Node(l, r) => write!(f, "[{l}, {r}]"),
        }
    }
}

/// `[[…[v0, v1], …], vk]`; a single letter is the variable itself.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LeftNormedMonomial(Vec<GradedVariable>);

impl LeftNormedMonomial {
    pub fn new(letters: Vec<GradedVariable>) -> Result<Self, FreeAlgError> {
        if letters.is_empty() {
            Err(FreeAlgError::EmptyMonomial)
        } else {
            Ok(LeftNormedMonomial(letters))
        }
    }

    pub fn single(v: GradedVariable) -> Self {
        LeftNormedMonomial(vec![v])
    }

    pub fn letters(&self) -> &[GradedVariable] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false; kept for clippy's `len_without_is_empty`.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn zdegree(&self) -> i64 {
        self.0.iter().map(|v| v.degree).sum()
    }

    /// Number of occurrences of `v`.
    pub fn occurrences(&self, v: GradedVariable) -> usize {
        self.0.iter().filter(|&&w| w == v).count()
    }

    pub fn contains(&self, v: GradedVariable) -> bool {
        self.0.contains(&v)
    }

    /// `[self, v, …, v]` with `v` appended `times` times.
    pub fn with_appended(&self, v: GradedVariable, times: usize) -> Self {
        let mut letters = self.0.clone();
        letters.extend(std::iter::repeat_n(v, times));
        LeftNormedMonomial(letters)
    }

    pub(crate) fn map_letters(&self, mut f: impl FnMut(usize, GradedVariable) -> GradedVariable) -> Self {
        LeftNormedMonomial(self.0.iter().enumerate().map(|(i, v)| f(i, *v)).collect())
    }
}

impl fmt::Display for LeftNormedMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let [v] = self.0.as_slice() {
            return write!(f, "{v}");
        }
        f.write_str("[")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("]")
    }
}
