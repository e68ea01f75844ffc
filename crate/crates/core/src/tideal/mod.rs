//! T-ideal machinery inside multilinear components.
//!
//! For a [`MultilinearSpace`](crate::freealg::MultilinearSpace) `P` this
//! module computes two subspaces over a prime field: the identities of a
//! model lying in `P` (the kernel of evaluation) and the consequences of a
//! [`BasisFamily`] lying in `P` (the span of substitution instances). It also
//! decides monomial identities of `U1` and `W1` by a parity rule and rewrites
//! monomials to a normal form.

mod family;
mod monomial;
mod spans;
mod subspace;

use thiserror::Error;

use crate::freealg::FreeAlgError;
use crate::models::ModelError;
use crate::scalars::FieldSpec;

pub use family::{BasisFamily, FamilyKind, FamilyMember, W1Range};
pub use monomial::{monomial_is_identity, monomial_normal_form, NormalForm};
pub use spans::{consequence_subspace, consequence_subspace_within, identity_subspace};
pub use subspace::SubspaceBasis;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TIdealError {
    #[error("exact subspace computations need a prime field, got {0}")]
    UnsupportedField(FieldSpec),
    #[error("ambient dimensions differ: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("time budget exhausted after {instances} substitution instances")]
    BudgetExceeded { instances: u64 },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    FreeAlg(#[from] FreeAlgError),
}
