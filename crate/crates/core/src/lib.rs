//! Graded polynomial identities of the Witt-type Lie algebras `U1` and `W1`
//! in characteristic two, checked by exact linear algebra on multilinear
//! components.

pub mod freealg;
mod linalg;
pub mod models;
pub mod scalars;
pub mod tideal;
pub mod verify;

pub use freealg::{
    parse_polynomial, BracketTree, GradedLiePolynomial, GradedVariable, LeftNormedMonomial, MultilinearSpace,
};
pub use models::{GradedModel, ModelElement, ModelSpec, Substitution, WittAlgebra};
pub use scalars::{FieldSpec, Scalar};
pub use tideal::{BasisFamily, FamilyMember, NormalForm, SubspaceBasis, W1Range};
pub use verify::{SweepConfig, VerificationReport};
