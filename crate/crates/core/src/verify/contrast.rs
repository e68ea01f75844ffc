use serde::{Deserialize, Serialize};

use super::VerifyError;
use crate::freealg::{var, GradedLiePolynomial, LeftNormedMonomial};
use crate::models::{basis_substitutions, evaluate, satisfies_multilinear, GradedModel};
use crate::scalars::FieldSpec;
use crate::tideal::{monomial_normal_form, NormalForm};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ContrastRow {
    pub a: i64,
    pub b: i64,
    /// `[x1^a, x2^b]` vanishes on `U1` over GF(p).
    pub holds: bool,
    /// `[e_a, e_b]` in `U1` over GF(p).
    pub value: String,
    /// Sign relating `[x1^a, x2^b]` to its normal form; absent when the
    /// normal form is zero.
    pub normal_form_coefficient: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ContrastReport {
    pub p: u64,
    pub bound: i64,
    pub rows: Vec<ContrastRow>,
}

impl ContrastReport {
    pub fn row(&self, a: i64, b: i64) -> Option<&ContrastRow> {
        self.rows.iter().find(|r| (r.a, r.b) == (a.min(b), a.max(b)))
    }

    /// Pairs of equal parity that are not identities over GF(p).
    pub fn failing_same_parity(&self) -> Vec<(i64, i64)> {
        self.rows
            .iter()
            .filter(|r| (r.a - r.b).rem_euclid(2) == 0 && !r.holds)
            .map(|r| (r.a, r.b))
            .collect()
    }
}

/// Which `f_{a,b}`, `a ≤ b`, `|a|, |b| ≤ bound`, are identities of `U1` over
/// GF(p) for an odd prime `p`.
pub fn char_contrast(p: u64, bound: i64) -> Result<ContrastReport, VerifyError> {
    let field = FieldSpec::prime(p).map_err(|e| VerifyError::InvalidConfig(e.to_string()))?;
    if p == 2 {
        return Err(VerifyError::InvalidConfig("contrast mode needs an odd prime".into()));
    }
    if bound < 0 {
        return Err(VerifyError::InvalidConfig("bound must be non-negative".into()));
    }
    let model = GradedModel::u1(field);
    let mut rows = Vec::new();
    for a in -bound..=bound {
        for b in a..=bound {
            let letters = vec![var(1, a), var(2, b)];
            let m = LeftNormedMonomial::new(letters.clone()).expect("nonempty");
            let f = GradedLiePolynomial::monomial(field, m.clone());
            let sub = basis_substitutions(&model, &letters)
                .pop()
                .expect("U1 has no empty component");
            let value = model.format_element(&evaluate(&f, &sub, &model)?);
            let normal_form_coefficient = match monomial_normal_form(&m) {
                NormalForm::Zero => None,
                NormalForm::Monomial { coefficient, .. } => Some(coefficient),
            };
            rows.push(ContrastRow {
                a,
                b,
                holds: satisfies_multilinear(&model, &f)?,
                value,
                normal_form_coefficient,
            });
        }
    }
    Ok(ContrastReport { p, bound, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf3_examples() {
        let r = char_contrast(3, 3).unwrap();
        let f13 = r.row(1, 3).unwrap();
        assert!(!f13.holds);
        assert_eq!(f13.value, "2*e4");
        assert!(r.row(1, 1).unwrap().holds);
        assert!(r.row(0, 0).unwrap().holds);
        assert!(r.failing_same_parity().contains(&(1, 3)));
        // [x1^2, x2^1] needs a swap to put the odd letter first
        assert_eq!(r.row(1, 2).unwrap().normal_form_coefficient, Some(1));
        assert_eq!(r.row(0, 1).unwrap().normal_form_coefficient, Some(-1));
    }

    #[test]
    fn holds_exactly_when_p_divides_the_difference() {
        for p in [3, 5, 7] {
            let r = char_contrast(p, 4).unwrap();
            for row in &r.rows {
                assert_eq!(row.holds, (row.b - row.a).rem_euclid(p as i64) == 0);
            }
        }
    }

    #[test]
    fn rejects_even_and_composite() {
        assert!(char_contrast(2, 1).is_err());
        assert!(char_contrast(9, 1).is_err());
    }
}
