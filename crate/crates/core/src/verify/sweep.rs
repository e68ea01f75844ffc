use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{SweepConfig, VerifyError};
use crate::freealg::{parse_polynomial, MultilinearSpace};
use crate::models::{satisfies_multilinear, GradedModel, ModelSpec};
use crate::scalars::FieldSpec;
use crate::tideal::{consequence_subspace_within, identity_subspace, BasisFamily, SubspaceBasis, TIdealError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum WitnessKind {
    /// A consequence of the family that is not an identity of the model.
    Unsound,
    /// An identity of the model that is not a consequence of the family.
    Incomplete,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Witness {
    pub kind: WitnessKind,
    pub polynomial: String,
    /// Coordinates on the `N_σ` basis of the space.
    pub coordinates: Vec<u64>,
}

/// Outcome on one multilinear component `P_n^g`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct SpaceReport {
    pub n: usize,
    pub degrees: Vec<i64>,
    /// Number of degree tuples that reorder to `degrees`.
    pub orbit_size: u64,
    pub dim_p: usize,
    pub dim_identity: usize,
    pub dim_consequence: usize,
    /// Consequences ⊆ identities.
    pub sound: bool,
    /// Consequences = identities.
    pub complete: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl SpaceReport {
    pub fn passed(&self) -> bool {
        self.sound && self.complete
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct SkippedSpace {
    pub n: usize,
    pub degrees: Vec<i64>,
    pub reason: String,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Timings {
    pub total_ms: u64,
    pub slowest_ms: u64,
    pub slowest_degrees: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct VerificationReport {
    pub config: SweepConfig,
    pub spaces: Vec<SpaceReport>,
    pub summary: Summary,
    #[serde(default)]
    pub skipped_spaces: Vec<SkippedSpace>,
    pub timings: Option<Timings>,
    /// Some space ran out of budget.
    pub incomplete: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl VerificationReport {
    /// Every checked space is sound and complete.
    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn space(&self, degrees: &[i64]) -> Option<&SpaceReport> {
        self.spaces.iter().find(|s| s.degrees == degrees)
    }

    pub fn failures(&self) -> impl Iterator<Item = &SpaceReport> {
        self.spaces.iter().filter(|s| !s.passed())
    }

    /// Internal consistency problems, empty for a well-formed report.
    pub fn consistency_problems(&self) -> Vec<String> {
        let mut problems = Vec::new();
        let passed = self.spaces.iter().filter(|s| s.passed()).count();
        let expected = Summary {
            passed,
            failed: self.spaces.len() - passed,
            skipped: self.skipped_spaces.len(),
        };
        if expected != self.summary {
            problems.push(format!(
                "summary {:?} does not match spaces {:?}",
                self.summary, expected
            ));
        }
        if self.incomplete != !self.skipped_spaces.is_empty() {
            problems.push("incomplete flag disagrees with skipped spaces".into());
        }
        for s in &self.spaces {
            let label = format!("space {:?}", s.degrees);
            if s.n != s.degrees.len() {
                problems.push(format!("{label}: n = {} but {} degrees", s.n, s.degrees.len()));
            }
            if s.dim_p != (1..s.n).product::<usize>() {
                problems.push(format!("{label}: dimP {} is not ({}-1)!", s.dim_p, s.n));
            }
            if s.dim_identity > s.dim_p || s.dim_consequence > s.dim_p {
                problems.push(format!("{label}: subspace larger than the space"));
            }
            if s.complete && (!s.sound || s.dim_identity != s.dim_consequence) {
                problems.push(format!("{label}: complete but dimensions or soundness disagree"));
            }
            if s.witness.is_some() == s.complete {
                problems.push(format!("{label}: witness present iff incomplete"));
            }
            if let Some(w) = &s.witness {
                if w.coordinates.len() != s.dim_p {
                    problems.push(format!("{label}: witness has {} coordinates", w.coordinates.len()));
                }
                if (w.kind == WitnessKind::Unsound) == s.sound {
                    problems.push(format!("{label}: witness kind disagrees with soundness"));
                }
            }
        }
        problems
    }
}

/// Nondecreasing tuples of length `n` with entries in `[-bound, bound]`, in
/// lexicographic order.
pub fn canonical_tuples(n: usize, bound: i64) -> Vec<Vec<i64>> {
    (-bound..=bound).combinations_with_replacement(n).collect()
}

/// Number of distinct orderings of `degrees`.
pub fn orbit_size(degrees: &[i64]) -> u64 {
    let n = degrees.len() as u64;
    let mut out: u64 = (1..=n).product();
    for (_, group) in &degrees.iter().sorted().chunk_by(|d| **d) {
        out /= (1..=group.count() as u64).product::<u64>();
    }
    out
}

/// Compares identities and consequences on `P_n^g` for `g = degrees`.
/// Returns `Ok(None)` when the deadline passes first.
pub fn check_space(
    model: &GradedModel,
    family: &BasisFamily,
    degrees: &[i64],
    deadline: Option<Instant>,
) -> Result<Option<SpaceReport>, VerifyError> {
    let field = model.field();
    let space = MultilinearSpace::from_degrees(degrees)?;
    let identities = identity_subspace(model, &space)?;
    let consequences = match consequence_subspace_within(family, &space, field, deadline) {
        Ok(c) => c,
        Err(TIdealError::BudgetExceeded { .. }) => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let unsound = identities.first_row_outside(&consequences)?;
    let missing = consequences.first_row_outside(&identities)?;
    let witness = |kind, row: Vec<u64>| Witness {
        kind,
        polynomial: space.polynomial_from_residues(field, &row).to_string(),
        coordinates: row,
    };
    let sound = unsound.is_none();
    let complete = sound && missing.is_none();
    let witness = match (unsound, missing) {
        (Some(row), _) => Some(witness(WitnessKind::Unsound, row)),
        (None, Some(row)) => Some(witness(WitnessKind::Incomplete, row)),
        (None, None) => None,
    };
    Ok(Some(SpaceReport {
        n: degrees.len(),
        degrees: degrees.to_vec(),
        orbit_size: orbit_size(degrees),
        dim_p: space.dim(),
        dim_identity: identities.dim(),
        dim_consequence: consequences.dim(),
        sound,
        complete,
        witness,
    }))
}

type Timed = (Vec<i64>, Option<SpaceReport>, Duration);

/// Sweeps every canonical degree tuple of the configuration.
pub fn verify_basis_theorem(config: &SweepConfig) -> Result<VerificationReport, VerifyError> {
    config.validate()?;
    let model = GradedModel::from_spec(config.model, config.field)?;
    let mut tuples: BTreeSet<(usize, Vec<i64>)> = (config.n_min..=config.n_max)
        .flat_map(|n| canonical_tuples(n, config.degree_bound))
        .map(|t| (t.len(), t))
        .collect();
    for t in &config.extra_tuples {
        let mut t = t.clone();
        t.sort_unstable();
        tuples.insert((t.len(), t));
    }
    let tuples: Vec<Vec<i64>> = tuples.into_iter().map(|(_, t)| t).collect();

    let budget = config.budget_ms.map(Duration::from_millis);
    let started = Instant::now();
    let work = || -> Vec<Result<Timed, VerifyError>> {
        tuples
            .par_iter()
            .map(|g| {
                let t0 = Instant::now();
                let outcome = check_space(&model, &config.family, g, budget.map(|b| t0 + b))?;
                Ok((g.clone(), outcome, t0.elapsed()))
            })
            .collect()
    };
    let results = if config.threads == 0 {
        work()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(config.threads)
            .build()
            .map_err(|e| VerifyError::ThreadPool(e.to_string()))?
            .install(work)
    };

    let mut spaces = Vec::new();
    let mut skipped_spaces = Vec::new();
    let mut slowest: (Duration, Vec<i64>) = (Duration::ZERO, Vec::new());
    for r in results {
        let (g, outcome, elapsed) = r?;
        if elapsed > slowest.0 {
            slowest = (elapsed, g.clone());
        }
        match outcome {
            Some(s) => spaces.push(s),
            None => skipped_spaces.push(SkippedSpace {
                n: g.len(),
                reason: format!("time budget of {} ms exhausted", config.budget_ms.unwrap_or_default()),
                degrees: g,
            }),
        }
    }
    let passed = spaces.iter().filter(|s| s.passed()).count();
    let summary = Summary {
        passed,
        failed: spaces.len() - passed,
        skipped: skipped_spaces.len(),
    };
    let timings = config.record_timings.then(|| Timings {
        total_ms: started.elapsed().as_millis() as u64,
        slowest_ms: slowest.0.as_millis() as u64,
        slowest_degrees: slowest.1,
    });
    let mut notes = Vec::new();
    if model.collision_merged() {
        notes.push(format!(
            "{} has two matrix units in one degree; their spans are merged",
            model.name()
        ));
    }
    Ok(VerificationReport {
        config: config.clone(),
        spaces,
        summary,
        incomplete: !skipped_spaces.is_empty(),
        skipped_spaces,
        timings,
        notes,
    })
}

/// Independently re-checks a witness: its coordinates must describe the
/// printed polynomial, its verdict under the model must match its kind, and
/// its membership in the consequence span must too.
pub fn recheck_witness(config: &SweepConfig, space: &SpaceReport) -> Result<bool, VerifyError> {
    recheck_space_witness(config.model, &config.family, config.field, space)
}

/// [`recheck_witness`] without a sweep configuration.
pub fn recheck_space_witness(
    model: ModelSpec,
    family: &BasisFamily,
    field: FieldSpec,
    space: &SpaceReport,
) -> Result<bool, VerifyError> {
    let Some(w) = &space.witness else {
        return Ok(true);
    };
    let model = GradedModel::from_spec(model, field)?;
    let p = MultilinearSpace::from_degrees(&space.degrees)?;
    let parsed = match parse_polynomial(&w.polynomial, field) {
        Ok(f) => f,
        Err(_) => return Ok(false),
    };
    if w.coordinates.len() != p.dim() || parsed != p.polynomial_from_residues(field, &w.coordinates) {
        return Ok(false);
    }
    let is_identity = satisfies_multilinear(&model, &parsed)?;
    let consequences = consequence_subspace_within(family, &p, field, None)?;
    let in_span = consequences.contains_vector(&w.coordinates)?;
    let nonzero = SubspaceBasis::from_vectors(field, p.dim(), [w.coordinates.clone()])?.dim() == 1;
    Ok(nonzero
        && match w.kind {
            WitnessKind::Unsound => in_span && !is_identity,
            WitnessKind::Incomplete => !in_span && is_identity,
        })
}
