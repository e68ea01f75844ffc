use serde::{Deserialize, Serialize};

use super::{check_space, separation_certificate, SeparationCertificate, SpaceReport, VerifyError};
use crate::freealg::MultilinearSpace;
use crate::models::{GradedModel, ModelSpec, WittAlgebra};
use crate::scalars::FieldSpec;
use crate::tideal::{consequence_subspace, BasisFamily, FamilyMember, W1Range};

/// Spaces that are always measured in `W1` minimality sweeps.
pub const W1_PROBES: [[i64; 2]; 2] = [[-1, 1], [-1, 3]];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct MemberCheck {
    pub member: FamilyMember,
    /// The member's own space: `(a, b)` for brackets, `(c)` for variables.
    pub removal_space: Vec<i64>,
    /// Dropping the member leaves the member itself outside the span of
    /// consequences on its own space.
    pub removal_breaks: bool,
    pub separation: SeparationCertificate,
}

impl MemberCheck {
    pub fn independent(&self) -> bool {
        self.removal_breaks || self.separation.valid
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct MinimalityVariant {
    pub family: BasisFamily,
    pub members: Vec<MemberCheck>,
    /// Members some other member already implies.
    pub redundant: Vec<FamilyMember>,
    pub probes: Vec<SpaceReport>,
    /// Probe spaces whose consequences are a proper subspace of the
    /// identities.
    pub proper_subspaces: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct MinimalityReport {
    pub algebra: WittAlgebra,
    pub bound: i64,
    pub variants: Vec<MinimalityVariant>,
}

fn separating_model(member: FamilyMember) -> ModelSpec {
    match member {
        FamilyMember::Bracket { a, b } => ModelSpec::Ut3 { r: a, s: b },
        FamilyMember::Variable { c } => ModelSpec::OneDim { d: c },
    }
}

fn removal_breaks(family: &BasisFamily, member: FamilyMember) -> Result<(Vec<i64>, bool), VerifyError> {
    let degrees = match member {
        FamilyMember::Bracket { a, b } => vec![a, b],
        FamilyMember::Variable { c } => vec![c],
    };
    let space = MultilinearSpace::from_degrees(&degrees)?;
    let rest = consequence_subspace(&family.clone().without(member), &space, FieldSpec::GF2)?;
    // the member spans its own one-dimensional space
    Ok((degrees, rest.dim() == 0))
}

fn variant(
    algebra: WittAlgebra,
    family: BasisFamily,
    bound: i64,
    probes: &[Vec<i64>],
) -> Result<MinimalityVariant, VerifyError> {
    let listed = family.members_within(bound);
    let mut members = Vec::with_capacity(listed.len());
    for &member in &listed {
        let (removal_space, breaks) = removal_breaks(&family, member)?;
        let separation = separation_certificate(separating_model(member), member, &listed, bound)?;
        members.push(MemberCheck {
            member,
            removal_space,
            removal_breaks: breaks,
            separation,
        });
    }
    let redundant = members.iter().filter(|m| !m.independent()).map(|m| m.member).collect();

    let model = GradedModel::witt(algebra, FieldSpec::GF2);
    let mut reports = Vec::with_capacity(probes.len());
    for g in probes {
        reports.push(check_space(&model, &family, g, None)?.expect("no deadline"));
    }
    let proper_subspaces = reports
        .iter()
        .filter(|s| s.sound && s.dim_consequence < s.dim_identity)
        .map(|s| s.degrees.clone())
        .collect();
    Ok(MinimalityVariant {
        family,
        members,
        redundant,
        probes: reports,
        proper_subspaces,
    })
}

/// Checks each family member within `bound` for independence from the
/// others, by removal on its own space and by a separating finite model.
///
/// For `W1` both bracket ranges are run, and every canonical space with at
/// most three variables and degrees in `[-1, min(bound, 3)]` is measured,
/// together with the fixed probes `(-1, 1)` and `(-1, 3)`.
pub fn minimality_sweep(algebra: WittAlgebra, bound: i64) -> Result<MinimalityReport, VerifyError> {
    if bound < 0 {
        return Err(VerifyError::InvalidConfig("bound must be non-negative".into()));
    }
    let variants = match algebra {
        WittAlgebra::U1 => {
            let probes: Vec<Vec<i64>> = BasisFamily::u1()
                .members_within(bound)
                .into_iter()
                .filter_map(|m| match m {
                    FamilyMember::Bracket { a, b } => Some(vec![a, b]),
                    FamilyMember::Variable { .. } => None,
                })
                .collect();
            vec![variant(algebra, BasisFamily::u1(), bound, &probes)?]
        }
        WittAlgebra::W1 => {
            let top = bound.min(3);
            let mut probes: Vec<Vec<i64>> = (1..=3)
                .flat_map(|n| super::canonical_tuples(n, top.max(1)))
                .filter(|g| g.iter().all(|&d| d >= -1 && d <= top))
                .collect();
            for p in W1_PROBES {
                if !probes.iter().any(|g| g == &p) {
                    probes.push(p.to_vec());
                }
            }
            probes.sort_by(|x, y| (x.len(), x).cmp(&(y.len(), y)));
            [W1Range::Full, W1Range::NonNegative]
                .into_iter()
                .map(|r| variant(algebra, BasisFamily::w1(r), bound, &probes))
                .collect::<Result<_, _>>()?
        }
    };
    Ok(MinimalityReport {
        algebra,
        bound,
        variants,
    })
}

/// Identity and consequence dimensions of `(degrees)` for a `W1` family;
/// test support for the fixed probes.
#[cfg(test)]
fn dims(range: W1Range, degrees: &[i64]) -> (usize, usize) {
    let s = MultilinearSpace::from_degrees(degrees).unwrap();
    let ids = crate::tideal::identity_subspace(&GradedModel::w1(FieldSpec::GF2), &s).unwrap();
    let cons = consequence_subspace(&BasisFamily::w1(range), &s, FieldSpec::GF2).unwrap();
    (ids.dim(), cons.dim())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn u1_members_are_independent() {
        let r = minimality_sweep(WittAlgebra::U1, 3).unwrap();
        let v = &r.variants[0];
        assert!(v.redundant.is_empty());
        assert!(v.members.iter().all(|m| m.removal_breaks && m.separation.valid));
        let f02 = v
            .members
            .iter()
            .find(|m| m.member == FamilyMember::bracket(0, 2))
            .unwrap();
        assert_eq!(f02.separation.model, ModelSpec::Ut3 { r: 0, s: 2 });
        assert!(v.proper_subspaces.is_empty());
    }

    #[test]
    fn w1_sweep_runs_both_ranges_and_probes() {
        let r = minimality_sweep(WittAlgebra::W1, 3).unwrap();
        assert_eq!(r.variants.len(), 2);
        for v in &r.variants {
            for p in W1_PROBES {
                let s = v.probes.iter().find(|s| s.degrees == p).unwrap();
                assert_eq!(s.dim_identity, 1);
                assert!(s.sound);
            }
        }
        let full = &r.variants[0];
        assert!(full.probes.iter().all(|s| s.passed()));
        // the pair of minus ones is implied by x^-2
        assert!(full.redundant.contains(&FamilyMember::bracket(-1, -1)));
    }

    #[test]
    fn probe_dimensions_match_direct_computation() {
        let r = minimality_sweep(WittAlgebra::W1, 3).unwrap();
        for (v, range) in r.variants.iter().zip([W1Range::Full, W1Range::NonNegative]) {
            for p in W1_PROBES {
                let s = v.probes.iter().find(|s| s.degrees == p).unwrap();
                assert_eq!((s.dim_identity, s.dim_consequence), dims(range, &p));
            }
        }
    }
}
