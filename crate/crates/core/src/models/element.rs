use std::collections::BTreeMap;

use crate::scalars::{FieldSpec, Scalar};

/// `(degree, slot)` address of a basis vector of a graded model.
pub type BasisIndex = (i64, usize);

/// A sparse vector of a graded model; zero coordinates are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct ModelElement {
    terms: BTreeMap<BasisIndex, Scalar>,
}

impl ModelElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(field: FieldSpec, b: BasisIndex) -> Self {
        Self::term(field, b, field.one())
    }

    pub fn term(field: FieldSpec, b: BasisIndex, coeff: Scalar) -> Self {
        let mut out = Self::zero();
        out.add_term(field, b, coeff);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisIndex, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, b: BasisIndex) -> Option<&Scalar> {
        self.terms.get(&b)
    }

    pub fn add_term(&mut self, field: FieldSpec, b: BasisIndex, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        let sum = match self.terms.get(&b) {
            Some(old) => field.add(old, &coeff),
            None => coeff,
        };
        if sum.is_zero() {
            self.terms.remove(&b);
        } else {
            self.terms.insert(b, sum);
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, field: FieldSpec, other: &ModelElement, c: &Scalar) {
        for (&b, a) in other.terms() {
            self.add_term(field, b, field.mul(a, c));
        }
    }

    /// Zero counts as homogeneous of every degree.
    pub fn is_homogeneous_of(&self, degree: i64) -> bool {
        self.terms.keys().all(|&(d, _)| d == degree)
    }
}
