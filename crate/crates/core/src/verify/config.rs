use serde::{Deserialize, Serialize};

use super::VerifyError;
use crate::freealg::MAX_SPACE_VARIABLES;
use crate::models::{ModelSpec, WittAlgebra};
use crate::scalars::FieldSpec;
use crate::tideal::{BasisFamily, W1Range};

/// Parameters of a basis sweep. Spaces are all nondecreasing degree tuples
/// of length `n_min..=n_max` with entries in `[-degree_bound, degree_bound]`,
/// plus `extra_tuples`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct SweepConfig {
    pub model: ModelSpec,
    pub family: BasisFamily,
    pub n_min: usize,
    pub n_max: usize,
    pub degree_bound: i64,
    pub field: FieldSpec,
    /// Worker threads; `0` uses the default pool.
    #[serde(default)]
    pub threads: usize,
    /// Per-space time cap in milliseconds.
    #[serde(default)]
    pub budget_ms: Option<u64>,
    #[serde(default)]
    pub extra_tuples: Vec<Vec<i64>>,
    /// Wall-clock timings make reports differ between runs, so they are off
    /// unless asked for.
    #[serde(default)]
    pub record_timings: bool,
}

impl SweepConfig {
    /// A sweep of `algebra` against its own family.
    pub fn for_algebra(algebra: WittAlgebra, n_max: usize, degree_bound: i64) -> Self {
        let family = match algebra {
            WittAlgebra::U1 => BasisFamily::u1(),
            WittAlgebra::W1 => BasisFamily::w1(W1Range::Full),
        };
        SweepConfig {
            model: algebra.into(),
            family,
            n_min: 1,
            n_max,
            degree_bound,
            field: FieldSpec::GF2,
            threads: 0,
            budget_ms: None,
            extra_tuples: Vec::new(),
            record_timings: false,
        }
    }

    pub fn validate(&self) -> Result<(), VerifyError> {
        let bad = |m: String| Err(VerifyError::InvalidConfig(m));
        if self.n_min == 0 {
            return bad("n must be at least 1".into());
        }
        if self.n_max < self.n_min {
            return bad(format!("empty n-range {}..={}", self.n_min, self.n_max));
        }
        if self.n_max > MAX_SPACE_VARIABLES {
            return bad(format!("n is limited to {MAX_SPACE_VARIABLES}"));
        }
        if self.degree_bound < 0 {
            return bad("degree bound must be non-negative".into());
        }
        if self.field.modulus().is_none() {
            return bad(format!("sweeps run over prime fields, not {}", self.field));
        }
        if let Some(t) = self
            .extra_tuples
            .iter()
            .find(|t| t.is_empty() || t.len() > MAX_SPACE_VARIABLES)
        {
            return bad(format!("extra tuple {t:?} has unsupported length"));
        }
        Ok(())
    }
}
