use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;

use super::{BracketTree, FreeAlgError, GradedVariable, LeftNormedMonomial};
use crate::scalars::{FieldSpec, Scalar};

/// An associative word over graded variables.
pub type Word = Vec<GradedVariable>;

/// A linear combination of left-normed monomials with nonzero coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedLiePolynomial {
    field: FieldSpec,
    terms: BTreeMap<LeftNormedMonomial, Scalar>,
}

impl GradedLiePolynomial {
    pub fn zero(field: FieldSpec) -> Self {
        GradedLiePolynomial {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(field: FieldSpec, m: LeftNormedMonomial) -> Self {
        let mut p = Self::zero(field);
        p.add_term(m, field.one());
        p
    }

    /// Convenience constructor for a single left-normed monomial.
    pub fn from_letters(field: FieldSpec, letters: &[GradedVariable]) -> Result<Self, FreeAlgError> {
        Ok(Self::monomial(field, LeftNormedMonomial::new(letters.to_vec())?))
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LeftNormedMonomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &LeftNormedMonomial> {
        self.terms.keys()
    }

    pub fn coefficient(&self, m: &LeftNormedMonomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// Adds `coeff * m`, dropping the key if the coefficient cancels.
    pub fn add_term(&mut self, m: LeftNormedMonomial, coeff: Scalar) {
        debug_assert!(self.field.owns(&coeff));
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = self.field.add(e.get(), &coeff);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, FreeAlgError> {
        if self.field != other.field {
            return Err(FreeAlgError::FieldMismatch(self.field, other.field));
        }
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(self.field);
        for (m, a) in self.terms() {
            out.add_term(m.clone(), self.field.mul(a, c));
        }
        out
    }

    pub fn variables(&self) -> BTreeSet<GradedVariable> {
        self.terms.keys().flat_map(|m| m.letters().iter().copied()).collect()
    }

    /// The common ℤ-degree of all monomials.
    pub fn zdegree(&self) -> Result<i64, FreeAlgError> {
        let mut degrees = self.terms.keys().map(LeftNormedMonomial::zdegree);
        let first = degrees.next().ok_or(FreeAlgError::ZeroPolynomial)?;
        match degrees.find(|&d| d != first) {
            Some(other) => Err(FreeAlgError::NonHomogeneous(first, other)),
            None => Ok(first),
        }
    }

    /// Every variable of the polynomial occurs in every monomial.
    pub fn is_regular(&self) -> bool {
        let vars = self.variables();
        self.terms.keys().all(|m| vars.iter().all(|&v| m.contains(v)))
    }

    /// Every variable occurs exactly once in every monomial.
    pub fn is_multilinear(&self) -> bool {
        let vars = self.variables();
        self.terms
            .keys()
            .all(|m| m.len() == vars.len() && vars.iter().all(|&v| m.occurrences(v) == 1))
    }

    /// Right-multiplies every monomial by `(ad v)^times`.
    pub fn apply_ad(&self, v: GradedVariable, times: usize) -> Self {
        let mut out = Self::zero(self.field);
        for (m, c) in self.terms() {
            out.add_term(m.with_appended(v, times), c.clone());
        }
        out
    }

    /// Substitutes variables for variables; unmapped variables stay put.
    pub fn rename(&self, map: &BTreeMap<GradedVariable, GradedVariable>) -> Self {
        let mut out = Self::zero(self.field);
        for (m, c) in self.terms() {
            let renamed = m.map_letters(|_, v| map.get(&v).copied().unwrap_or(v));
            out.add_term(renamed, c.clone());
        }
        out
    }

    /// Full polarization in `target`.
    ///
    /// If `target` occurs `k` times in every monomial, the result is linear
    /// in the fresh copies `target, x_{m+1}, …, x_{m+k-1}` (all of the same
    /// degree, `m` the largest index in `self`) and sums, for each monomial,
    /// over all `k!` ways of distributing the copies among the occurrences.
    pub fn multilinearize(&self, target: GradedVariable) -> Result<Self, FreeAlgError> {
        let mut counts = self.terms.keys().map(|m| m.occurrences(target));
        let k = counts.next().ok_or(FreeAlgError::VariableAbsent(target))?;
        if let Some(other) = counts.find(|&c| c != k) {
            return Err(FreeAlgError::NotHomogeneousIn(target, k, other));
        }
        if k == 0 {
            return Err(FreeAlgError::VariableAbsent(target));
        }
        if k == 1 {
            return Ok(self.clone());
        }
        let max_index = self.variables().iter().map(|v| v.index).max().unwrap_or(0);
        let mut copies = vec![target];
        for j in 1..k {
            let index = u32::try_from(j)
                .ok()
                .and_then(|j| max_index.checked_add(j))
                .ok_or(FreeAlgError::IndexOverflow)?;
            copies.push(GradedVariable::new(index, target.degree));
        }

        let mut out = Self::zero(self.field);
        for (m, c) in self.terms() {
            for assignment in copies.iter().permutations(k) {
                let mut next = assignment.into_iter();
                let term = m.map_letters(|_, v| if v == target { *next.next().unwrap() } else { v });
                out.add_term(term, c.clone());
            }
        }
        Ok(out)
    }

    pub fn to_associative(&self) -> AssocPolynomial {
        let mut out = AssocPolynomial::zero(self.field);
        for (m, c) in self.terms() {
            out.add_scaled(&AssocPolynomial::from_monomial(self.field, m), c);
        }
        out
    }
}

impl fmt::Display for GradedLiePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if *c != self.field.one() {
                write!(f, "{c}*")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

/// An element of the free associative algebra, keyed by words in sorted
/// order with zero coefficients dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssocPolynomial {
    field: FieldSpec,
    terms: BTreeMap<Word, Scalar>,
}

impl AssocPolynomial {
    pub fn zero(field: FieldSpec) -> Self {
        AssocPolynomial {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn word(field: FieldSpec, word: Word) -> Self {
        let mut p = Self::zero(field);
        p.add_term(word, field.one());
        p
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &[GradedVariable]) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn add_term(&mut self, w: Word, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = self.field.add(e.get(), &coeff);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &Self, c: &Scalar) {
        assert_eq!(self.field, other.field, "field mismatch");
        for (w, a) in other.terms() {
            self.add_term(w.clone(), self.field.mul(a, c));
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &self.field.neg(&self.field.one()));
        out
    }

    /// Concatenation product.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.field, other.field, "field mismatch");
        let mut out = Self::zero(self.field);
        for (u, a) in self.terms() {
            for (v, b) in other.terms() {
                let mut w = u.clone();
                w.extend_from_slice(v);
                out.add_term(w, self.field.mul(a, b));
            }
        }
        out
    }

    /// `ab - ba`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    /// Image of a bracket tree under `[a, b] ↦ ab - ba`.
    pub fn from_tree(field: FieldSpec, tree: &BracketTree) -> Self {
        match tree {
            BracketTree::Leaf(v) => Self::word(field, vec![*v]),
            BracketTree::Node(l, r) => Self::from_tree(field, l).commutator(&Self::from_tree(field, r)),
        }
    }

    pub fn from_monomial(field: FieldSpec, m: &LeftNormedMonomial) -> Self {
        let (first, rest) = m.letters().split_first().expect("monomials are nonempty");
        let mut acc = Self::word(field, vec![*first]);
        let minus_one = field.from_integer(-1);
        for &v in rest {
            let mut next = Self::zero(field);
            for (w, c) in acc.terms() {
                let mut right = w.clone();
                right.push(v);
                next.add_term(right, c.clone());
                let mut left = Vec::with_capacity(w.len() + 1);
                left.push(v);
                left.extend_from_slice(w);
                next.add_term(left, field.mul(c, &minus_one));
            }
            acc = next;
        }
        acc
    }
}

impl fmt::Display for AssocPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if *c != self.field.one() {
                write!(f, "{c}*")?;
            }
            f.write_str(&w.iter().map(ToString::to_string).join(" "))?;
        }
        Ok(())
    }
}

/// Image of a bracket tree in the free associative algebra.
pub fn expand_to_associative(field: FieldSpec, tree: &BracketTree) -> AssocPolynomial {
    AssocPolynomial::from_tree(field, tree)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::{parse_polynomial, var};
    use proptest::prelude::*;

    const GF2: FieldSpec = FieldSpec::GF2;

    fn leaf(i: u32) -> BracketTree {
        BracketTree::leaf(var(i, 0))
    }

    fn words(p: &AssocPolynomial) -> Vec<Vec<u32>> {
        p.terms().map(|(w, _)| w.iter().map(|v| v.index).collect()).collect()
    }

    #[test]
    fn commutator_collapses_signs_in_char_two() {
        let t = BracketTree::bracket(leaf(1), leaf(2));
        let e = AssocPolynomial::from_tree(GF2, &t);
        assert_eq!(words(&e), vec![vec![1, 2], vec![2, 1]]);
        assert!(e.terms().all(|(_, c)| *c == GF2.one()));
    }

    #[test]
    fn leaf_expands_to_its_word() {
        let e = AssocPolynomial::from_tree(GF2, &leaf(1));
        assert_eq!(words(&e), vec![vec![1]]);
    }

    #[test]
    fn triple_commutator_expansion() {
        // ([x1,x2])x3 + x3([x1,x2]) in characteristic two
        let t = BracketTree::bracket(BracketTree::bracket(leaf(1), leaf(2)), leaf(3));
        let e = AssocPolynomial::from_tree(GF2, &t);
        assert_eq!(
            words(&e),
            vec![vec![1, 2, 3], vec![2, 1, 3], vec![3, 1, 2], vec![3, 2, 1]]
        );
        // the left-normed fast path agrees
        let m = LeftNormedMonomial::new(vec![var(1, 0), var(2, 0), var(3, 0)]).unwrap();
        assert_eq!(AssocPolynomial::from_monomial(GF2, &m), e);
    }

    #[test]
    fn signs_survive_in_odd_characteristic() {
        let q = FieldSpec::Rational;
        let t = BracketTree::bracket(leaf(1), leaf(2));
        let e = AssocPolynomial::from_tree(q, &t);
        assert_eq!(e.coefficient(&[var(1, 0), var(2, 0)]), q.one());
        assert_eq!(e.coefficient(&[var(2, 0), var(1, 0)]), q.from_integer(-1));
    }

    #[test]
    fn zdegree_of_polynomials() {
        let p = parse_polynomial("[x1^2, x2^4, x3^1]", GF2).unwrap();
        assert_eq!(p.zdegree(), Ok(7));
        let p = parse_polynomial("x1^-2", GF2).unwrap();
        assert_eq!(p.zdegree(), Ok(-2));
        let p = parse_polynomial("[x1^1, x2^-1]", GF2).unwrap();
        assert_eq!(p.zdegree(), Ok(0));
        let p = parse_polynomial("[x1^1, x2^-1] + x3^1", GF2).unwrap();
        assert_eq!(p.zdegree(), Err(FreeAlgError::NonHomogeneous(0, 1)));
        assert_eq!(
            GradedLiePolynomial::zero(GF2).zdegree(),
            Err(FreeAlgError::ZeroPolynomial)
        );
    }

    #[test]
    fn regularity() {
        let p = parse_polynomial("[x1^0, x2^0] + [x2^0, x1^0]", FieldSpec::Prime(3)).unwrap();
        assert!(p.is_regular());
        let p = parse_polynomial("[x1^0, x2^0] + [x1^0, x3^0]", GF2).unwrap();
        assert!(!p.is_regular());
        let p = parse_polynomial("[x1^0, x2^0, x1^0]", GF2).unwrap();
        assert!(p.is_regular());
        assert!(!p.is_multilinear());
    }

    #[test]
    fn apply_ad_appends() {
        let p = parse_polynomial("x1^0", GF2).unwrap();
        assert_eq!(p.apply_ad(var(2, 0), 1).to_string(), "[x1^0, x2^0]");
        let p = parse_polynomial("[x1^0, x2^0]", GF2).unwrap();
        assert_eq!(p.apply_ad(var(3, 1), 0), p);
        assert_eq!(p.apply_ad(var(3, 1), 2).to_string(), "[x1^0, x2^0, x3^1, x3^1]");
    }

    #[test]
    fn multilinearize_examples() {
        let p = parse_polynomial("[x1^1, x2^2]", GF2).unwrap();
        assert_eq!(p.multilinearize(var(1, 1)).unwrap(), p);

        let f = parse_polynomial("[x1^0, x2^2, x1^0]", GF2).unwrap();
        let h = f.multilinearize(var(1, 0)).unwrap();
        let expected = parse_polynomial("[x1^0, x2^2, x3^0] + [x3^0, x2^2, x1^0]", GF2).unwrap();
        assert_eq!(h, expected);
        assert_eq!(h.len(), 2);
        assert!(h.is_multilinear());

        assert_eq!(
            f.multilinearize(var(7, 0)),
            Err(FreeAlgError::VariableAbsent(var(7, 0)))
        );
        let g = parse_polynomial("[x1^0, x2^2, x1^0] + [x1^0, x2^2]", GF2).unwrap();
        assert_eq!(
            g.multilinearize(var(1, 0)),
            Err(FreeAlgError::NotHomogeneousIn(var(1, 0), 1, 2))
        );
    }

    // Identify the fresh copies again and compare against k! * f over Q.
    fn identify_back(h: &GradedLiePolynomial, target: GradedVariable) -> GradedLiePolynomial {
        let map = h
            .variables()
            .into_iter()
            .filter(|v| v.degree == target.degree && v.index > target.index)
            .map(|v| (v, target))
            .collect();
        h.rename(&map)
    }

    fn factorial(k: usize) -> i64 {
        (1..=k as i64).product()
    }

    fn random_word(len: usize) -> impl Strategy<Value = Vec<GradedVariable>> {
        prop::collection::vec((1u32..4, -2i64..3), len)
            .prop_map(|v| v.into_iter().map(|(i, _)| var(i, i as i64 - 2)).collect())
    }

    proptest! {
        #[test]
        fn polarization_identifies_back_to_scaled_original(
            words in prop::collection::vec(random_word(4), 1..4),
            target_index in 1u32..4,
        ) {
            let q = FieldSpec::Rational;
            let target = var(target_index, target_index as i64 - 2);
            // keep only the monomials with the modal occurrence count of the target
            let k = words.iter().map(|w| w.iter().filter(|&&v| v == target).count()).max().unwrap();
            prop_assume!(k >= 1);
            let mut f = GradedLiePolynomial::zero(q);
            for w in words.into_iter().filter(|w| w.iter().filter(|&&v| v == target).count() == k) {
                f.add_term(LeftNormedMonomial::new(w).unwrap(), q.one());
            }
            let h = f.multilinearize(target).unwrap();
            for m in h.monomials() {
                prop_assert!(m.occurrences(target) <= 1);
            }
            let back = identify_back(&h, target).to_associative();
            let scaled = f.to_associative();
            let mut expected = AssocPolynomial::zero(q);
            expected.add_scaled(&scaled, &q.from_integer(factorial(k)));
            prop_assert_eq!(back, expected);
        }

        #[test]
        fn alternation_and_jacobi_vanish(
            a in random_word(2), b in random_word(1), c in random_word(3), p in prop_oneof![Just(2u64), Just(3), Just(5)]
        ) {
            let field = FieldSpec::Prime(p);
            let t = |w: &Vec<GradedVariable>| BracketTree::from(&LeftNormedMonomial::new(w.clone()).unwrap());
            let (ta, tb, tc) = (t(&a), t(&b), t(&c));
            let br = BracketTree::bracket;
            let sq = AssocPolynomial::from_tree(field, &br(ta.clone(), ta.clone()));
            prop_assert!(sq.is_zero());
            let mut jacobi = AssocPolynomial::from_tree(field, &br(br(ta.clone(), tb.clone()), tc.clone()));
            jacobi.add_scaled(&AssocPolynomial::from_tree(field, &br(br(tb.clone(), tc.clone()), ta.clone())), &field.one());
            jacobi.add_scaled(&AssocPolynomial::from_tree(field, &br(br(tc, ta), tb)), &field.one());
            prop_assert!(jacobi.is_zero());
        }
    }
}
