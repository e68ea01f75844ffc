//! Sweeps and separation checks over multilinear components, reported as
//! serialisable structures.
//!
//! [`verify_basis_theorem`] compares the identities of a model with the
//! consequences of a basis family on every canonical degree tuple in range.
//! The separation checks exhibit finite models that satisfy every family
//! member but one.

mod config;
mod contrast;
mod minimality;
mod separation;
mod sweep;

use thiserror::Error;

use crate::freealg::FreeAlgError;
use crate::models::ModelError;
use crate::tideal::TIdealError;

pub use config::SweepConfig;
pub use contrast::{char_contrast, ContrastReport, ContrastRow};
pub use minimality::{minimality_sweep, MemberCheck, MinimalityReport, MinimalityVariant, W1_PROBES};
pub use separation::{
    independence_check, no_finite_basis_demo, separation_certificate, variable_independence_check, NoFiniteBasisDemo,
    SeparationCertificate,
};
pub use sweep::{
    canonical_tuples, check_space, orbit_size, recheck_space_witness, recheck_witness, verify_basis_theorem,
    SkippedSpace, SpaceReport, Summary, Timings, VerificationReport, Witness, WitnessKind,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("could not start worker pool: {0}")]
    ThreadPool(String),
    #[error(transparent)]
    TIdeal(#[from] TIdealError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    FreeAlg(#[from] FreeAlgError),
}
