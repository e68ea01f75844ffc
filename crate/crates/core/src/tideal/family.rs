use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::freealg::{var, GradedLiePolynomial, LeftNormedMonomial};
use crate::scalars::FieldSpec;

/// A generator of one of the basis families: `[x1^a, x2^b]` or `x1^c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum FamilyMember {
    Bracket { a: i64, b: i64 },
    Variable { c: i64 },
}

impl FamilyMember {
    /// `f_{a,b}` with the degrees put in order; `[x^a, y^b]` and `[y^b, x^a]`
    /// generate the same T-ideal.
    pub fn bracket(a: i64, b: i64) -> Self {
        FamilyMember::Bracket {
            a: a.min(b),
            b: a.max(b),
        }
    }

    pub fn variable(c: i64) -> Self {
        FamilyMember::Variable { c }
    }

    pub fn polynomial(&self, field: FieldSpec) -> GradedLiePolynomial {
        let m = match *self {
            FamilyMember::Bracket { a, b } => LeftNormedMonomial::new(vec![var(1, a), var(2, b)]),
            FamilyMember::Variable { c } => LeftNormedMonomial::new(vec![var(1, c)]),
        };
        GradedLiePolynomial::monomial(field, m.expect("nonempty"))
    }

    /// Largest absolute degree involved.
    pub fn height(&self) -> i64 {
        match *self {
            FamilyMember::Bracket { a, b } => a.abs().max(b.abs()),
            FamilyMember::Variable { c } => c.abs(),
        }
    }
}

impl fmt::Display for FamilyMember {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyMember::Bracket { a, b } => write!(f, "f({a},{b})"),
            FamilyMember::Variable { c } => write!(f, "x^{c}"),
        }
    }
}

/// Lower bound on bracket degrees in the `W1` family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum W1Range {
    /// `a, b ≥ -1`.
    Full,
    /// `a, b ≥ 0`.
    NonNegative,
}

impl W1Range {
    pub fn lower_bound(self) -> i64 {
        match self {
            W1Range::Full => -1,
            W1Range::NonNegative => 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum FamilyKind {
    /// Every `f_{a,b}` with `a ≡ b (mod 2)`.
    U1,
    /// `x^c` for `c ≤ -2`, and `f_{a,b}` with `a ≡ b (mod 2)` above the
    /// range's lower bound.
    W1(W1Range),
}

/// One of the infinite generating families, possibly with members removed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BasisFamily {
    pub kind: FamilyKind,
    #[serde(default, skip_serializing_if = "BTreeSet::is_empty")]
    pub excluded: BTreeSet<FamilyMember>,
}

impl BasisFamily {
    pub fn u1() -> Self {
        Self::new(FamilyKind::U1)
    }

    pub fn w1(range: W1Range) -> Self {
        Self::new(FamilyKind::W1(range))
    }

    pub fn new(kind: FamilyKind) -> Self {
        BasisFamily {
            kind,
            excluded: BTreeSet::new(),
        }
    }

    /// The family with one member dropped.
    pub fn without(mut self, member: FamilyMember) -> Self {
        self.excluded.insert(normalize(member));
        self
    }

    pub fn contains_bracket(&self, a: i64, b: i64) -> bool {
        let (a, b) = (a.min(b), a.max(b));
        let in_range = match self.kind {
            FamilyKind::U1 => true,
            FamilyKind::W1(range) => a >= range.lower_bound(),
        };
        in_range && (a - b).rem_euclid(2) == 0 && !self.excluded.contains(&FamilyMember::Bracket { a, b })
    }

    pub fn contains_variable(&self, c: i64) -> bool {
        matches!(self.kind, FamilyKind::W1(_)) && c <= -2 && !self.excluded.contains(&FamilyMember::Variable { c })
    }

    pub fn contains(&self, member: FamilyMember) -> bool {
        match member {
            FamilyMember::Bracket { a, b } => self.contains_bracket(a, b),
            FamilyMember::Variable { c } => self.contains_variable(c),
        }
    }

    /// Members whose degrees all lie in `[-bound, bound]`, in a fixed order:
    /// variables by `c`, then brackets by `(a, b)`.
    pub fn members_within(&self, bound: i64) -> Vec<FamilyMember> {
        let variables = (-bound..=bound).map(FamilyMember::variable);
        let brackets = (-bound..=bound).flat_map(|a| (a..=bound).map(move |b| FamilyMember::Bracket { a, b }));
        variables.chain(brackets).filter(|m| self.contains(*m)).collect()
    }
}

fn normalize(member: FamilyMember) -> FamilyMember {
    match member {
        FamilyMember::Bracket { a, b } => FamilyMember::bracket(a, b),
        v => v,
    }
}

impl fmt::Display for BasisFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FamilyKind::U1 => f.write_str("u1 family")?,
            FamilyKind::W1(W1Range::Full) => f.write_str("w1 family (brackets from -1)")?,
            FamilyKind::W1(W1Range::NonNegative) => f.write_str("w1 family (brackets from 0)")?,
        }
        for (i, m) in self.excluded.iter().enumerate() {
            write!(f, "{}{m}", if i == 0 { " minus " } else { ", " })?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn membership() {
        let u = BasisFamily::u1();
        assert!(u.contains_bracket(2, 4));
        assert!(u.contains_bracket(3, -1));
        assert!(!u.contains_bracket(1, 2));
        assert!(!u.contains_variable(-5));

        let full = BasisFamily::w1(W1Range::Full);
        let nonneg = BasisFamily::w1(W1Range::NonNegative);
        assert!(full.contains_bracket(-1, -1) && full.contains_bracket(-1, 1));
        assert!(!nonneg.contains_bracket(-1, 1) && nonneg.contains_bracket(0, 2));
        assert!(!full.contains_bracket(-2, 0));
        assert!(full.contains_variable(-2) && !full.contains_variable(-1));
    }

    #[test]
    fn exclusion_is_order_insensitive() {
        let u = BasisFamily::u1().without(FamilyMember::Bracket { a: 4, b: 2 });
        assert!(!u.contains_bracket(2, 4) && !u.contains_bracket(4, 2));
        assert!(u.contains_bracket(2, 2));
        assert_eq!(u.to_string(), "u1 family minus f(2,4)");
    }

    #[test]
    fn members_within_bound() {
        let u = BasisFamily::u1().members_within(1);
        assert_eq!(
            u,
            vec![
                FamilyMember::bracket(-1, -1),
                FamilyMember::bracket(-1, 1),
                FamilyMember::bracket(0, 0),
                FamilyMember::bracket(1, 1)
            ]
        );
        let w = BasisFamily::w1(W1Range::Full).members_within(2);
        assert_eq!(w[0], FamilyMember::variable(-2));
        assert!(w.iter().all(|m| m.height() <= 2));
    }

    #[test]
    fn member_polynomials() {
        let f = FamilyMember::bracket(3, 1).polynomial(FieldSpec::GF2);
        assert_eq!(f.to_string(), "[x1^1, x2^3]");
        assert_eq!(
            FamilyMember::variable(-2).polynomial(FieldSpec::GF2).to_string(),
            "x1^-2"
        );
    }
}
