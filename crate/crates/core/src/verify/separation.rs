use serde::{Deserialize, Serialize};

use super::VerifyError;
use crate::models::{satisfies_multilinear, GradedModel, ModelSpec};
use crate::scalars::FieldSpec;
use crate::tideal::{BasisFamily, FamilyMember};

/// A finite model that violates `target` while satisfying every member of
/// `others`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct SeparationCertificate {
    pub target: FamilyMember,
    pub model: ModelSpec,
    pub bound: i64,
    pub fails_target: bool,
    pub others_checked: usize,
    pub violated_others: Vec<FamilyMember>,
    pub collision_merged: bool,
    pub valid: bool,
}

fn satisfies(model: &GradedModel, member: FamilyMember) -> Result<bool, VerifyError> {
    Ok(satisfies_multilinear(model, &member.polynomial(model.field()))?)
}

/// Checks `model` against `target` and `others` over GF(2).
pub fn separation_certificate(
    model: ModelSpec,
    target: FamilyMember,
    others: &[FamilyMember],
    bound: i64,
) -> Result<SeparationCertificate, VerifyError> {
    let m = GradedModel::from_spec(model, FieldSpec::GF2)?;
    let fails_target = !satisfies(&m, target)?;
    let mut violated_others = Vec::new();
    let mut others_checked = 0;
    for &other in others.iter().filter(|o| **o != target) {
        others_checked += 1;
        if !satisfies(&m, other)? {
            violated_others.push(other);
        }
    }
    Ok(SeparationCertificate {
        target,
        model,
        bound,
        fails_target,
        others_checked,
        valid: fails_target && violated_others.is_empty(),
        violated_others,
        collision_merged: m.collision_merged(),
    })
}

fn check_bound(bound: i64, needed: i64) -> Result<(), VerifyError> {
    if bound < needed {
        return Err(VerifyError::InvalidConfig(format!("bound {bound} is below {needed}")));
    }
    Ok(())
}

/// `UT(3)` graded by `(r, s)` fails `f_{r,s}` and satisfies every other
/// `f_{u,v}` with `|u|, |v| ≤ bound`.
pub fn independence_check(r: i64, s: i64, bound: i64) -> Result<SeparationCertificate, VerifyError> {
    if r > s || (r - s).rem_euclid(2) != 0 {
        return Err(VerifyError::InvalidConfig(format!(
            "need r ≤ s of equal parity, got ({r}, {s})"
        )));
    }
    check_bound(bound, r.abs().max(s.abs()))?;
    let others = BasisFamily::u1().members_within(bound);
    separation_certificate(ModelSpec::Ut3 { r, s }, FamilyMember::bracket(r, s), &others, bound)
}

/// The one-dimensional algebra in degree `d` fails `x^d` and satisfies every
/// `f_{a,b}` and every other `x^c` within the bound.
pub fn variable_independence_check(d: i64, bound: i64) -> Result<SeparationCertificate, VerifyError> {
    check_bound(bound, d.abs())?;
    let mut others: Vec<FamilyMember> = (-bound..=bound).map(FamilyMember::variable).collect();
    others.extend(BasisFamily::u1().members_within(bound));
    separation_certificate(ModelSpec::OneDim { d }, FamilyMember::variable(d), &others, bound)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct NoFiniteBasisDemo {
    pub bound: i64,
    pub rows: Vec<SeparationCertificate>,
    pub all_valid: bool,
}

/// The first `count` pairs `r ≤ s` of equal parity, ordered by
/// `(|r| + |s|, r, s)`.
fn first_pairs(count: usize) -> Vec<(i64, i64)> {
    let mut out = Vec::with_capacity(count);
    let mut total = 0i64;
    while out.len() < count {
        let mut level: Vec<(i64, i64)> = (-total..=total)
            .flat_map(|r| {
                let rest = total - r.abs();
                [-rest, rest].into_iter().map(move |s| (r, s))
            })
            .filter(|&(r, s)| r <= s && (r - s).rem_euclid(2) == 0)
            .collect();
        level.sort_unstable();
        level.dedup();
        out.extend(level.into_iter().take(count - out.len()));
        total += 1;
    }
    out
}

/// Separation certificates for the first `count` members of the `U1` family:
/// every row's model violates its own member and satisfies all the others
/// in the listed range, so no finite subfamily generates the rest.
pub fn no_finite_basis_demo(count: usize) -> Result<NoFiniteBasisDemo, VerifyError> {
    if count == 0 {
        return Err(VerifyError::InvalidConfig("count must be at least 1".into()));
    }
    let pairs = first_pairs(count);
    let bound = pairs.iter().map(|&(r, s)| r.abs().max(s.abs())).max().unwrap_or(0);
    let rows = pairs
        .into_iter()
        .map(|(r, s)| independence_check(r, s, bound))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(NoFiniteBasisDemo {
        bound,
        all_valid: rows.iter().all(|r| r.valid),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_order() {
        assert_eq!(first_pairs(6), vec![(0, 0), (-2, 0), (-1, -1), (-1, 1), (0, 2), (1, 1)]);
        assert_eq!(first_pairs(15).len(), 15);
    }

    #[test]
    fn ut3_examples() {
        for (r, s) in [(0, 2), (2, 2), (0, 0)] {
            let c = independence_check(r, s, 6).unwrap();
            assert!(c.valid, "{c:?}");
        }
        assert!(independence_check(0, 2, 6).unwrap().collision_merged);
        assert!(independence_check(1, 2, 6).is_err());
        assert!(independence_check(4, 2, 6).is_err());
        assert!(independence_check(0, 8, 6).is_err());
    }

    #[test]
    fn onedim_examples() {
        for d in [-2, -5] {
            assert!(variable_independence_check(d, 6).unwrap().valid);
        }
        let c = variable_independence_check(-2, 6).unwrap();
        assert_eq!(c.others_checked, 12 + BasisFamily::u1().members_within(6).len());
    }

    #[test]
    fn wrong_model_is_not_a_certificate() {
        let c = separation_certificate(
            ModelSpec::U1,
            FamilyMember::bracket(0, 2),
            &BasisFamily::u1().members_within(2),
            2,
        )
        .unwrap();
        assert!(!c.fails_target && !c.valid);
    }

    #[test]
    fn small_demo() {
        let d = no_finite_basis_demo(1).unwrap();
        assert_eq!(d.rows.len(), 1);
        assert_eq!(d.rows[0].model, ModelSpec::Ut3 { r: 0, s: 0 });
        assert!(d.all_valid);
        assert!(no_finite_basis_demo(0).is_err());
    }
}
