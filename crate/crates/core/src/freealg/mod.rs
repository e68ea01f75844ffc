//! The free ℤ-graded Lie algebra on graded variables.
//!
//! Lie elements are stored syntactically, as bracket trees or as linear
//! combinations of left-normed monomials. Equality of Lie elements is decided
//! in the free associative algebra through `[a, b] = ab - ba`, which embeds the
//! free Lie algebra faithfully over any field.

mod monomial;
mod parse;
mod poly;
mod space;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalars::FieldSpec;

pub use monomial::{BracketTree, LeftNormedMonomial};
pub use parse::{parse_polynomial, ParseError};
pub use poly::{expand_to_associative, AssocPolynomial, GradedLiePolynomial, Word};
pub use space::{MultilinearSpace, MAX_SPACE_VARIABLES};

pub(crate) use space::PackedLie;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FreeAlgError {
    #[error("polynomial is not homogeneous: found ℤ-degrees {0} and {1}")]
    NonHomogeneous(i64, i64),
    #[error("the zero polynomial has no ℤ-degree")]
    ZeroPolynomial,
    #[error("a left-normed monomial needs at least one variable")]
    EmptyMonomial,
    #[error("variable {0} does not occur in the polynomial")]
    VariableAbsent(GradedVariable),
    #[error("polynomial is not homogeneous in {0}: degrees {1} and {2}")]
    NotHomogeneousIn(GradedVariable, usize, usize),
    #[error("input is not multilinear in the variables of the space: {0}")]
    NotMultilinear(String),
    #[error("element is not a Lie element of the space (associative certificate failed)")]
    NotInSpace,
    #[error("variable index {0} appears twice in the space")]
    DuplicateIndex(u32),
    #[error("multilinear spaces are limited to {max} variables, got {got}")]
    SpaceTooLarge { got: usize, max: usize },
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("variable index overflow while allocating fresh variables")]
    IndexOverflow,
}

/// A variable `x_index` of ℤ-degree `degree`. Two variables are equal only
/// if both the index and the degree agree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GradedVariable {
    pub index: u32,
    pub degree: i64,
}

impl GradedVariable {
    pub const fn new(index: u32, degree: i64) -> Self {
        GradedVariable { index, degree }
    }
}

impl fmt::Display for GradedVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}^{}", self.index, self.degree)
    }
}

/// Shorthand used throughout the tests: `var(3, -1)` is `x3^-1`.
pub const fn var(index: u32, degree: i64) -> GradedVariable {
    GradedVariable::new(index, degree)
}
