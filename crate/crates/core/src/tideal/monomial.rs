use crate::freealg::{GradedLiePolynomial, LeftNormedMonomial};
use crate::models::WittAlgebra;
use crate::scalars::{FieldSpec, Scalar};

/// Whether a left-normed monomial is a graded identity of `U1` or `W1` in
/// characteristic two.
///
/// `[e_i, e_j]` vanishes exactly when `i + j` is even, so the monomial
/// survives iff every prefix sum `a_0 + … + a_k`, `k ≥ 1`, is odd. In `W1` a
/// letter of degree `≤ -2` has nowhere to go.
pub fn monomial_is_identity(m: &LeftNormedMonomial, algebra: WittAlgebra) -> bool {
    let letters = m.letters();
    if algebra == WittAlgebra::W1 && letters.iter().any(|v| v.degree <= -2) {
        return true;
    }
    let mut sum = letters[0].degree;
    for v in &letters[1..] {
        sum += v.degree;
        if sum.rem_euclid(2) == 0 {
            return true;
        }
    }
    false
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum NormalForm {
    /// The monomial is a consequence of the `U1` family.
    Zero,
    /// `M ≡ coefficient · monomial` modulo the `U1` family; the coefficient
    /// is `±1` and collapses to `1` in characteristic two.
    Monomial {
        coefficient: i64,
        monomial: LeftNormedMonomial,
    },
}

impl NormalForm {
    pub fn is_zero(&self) -> bool {
        matches!(self, NormalForm::Zero)
    }

    pub fn coefficient_in(&self, field: FieldSpec) -> Scalar {
        match self {
            NormalForm::Zero => field.zero(),
            NormalForm::Monomial { coefficient, .. } => field.from_integer(*coefficient),
        }
    }

    pub fn to_polynomial(&self, field: FieldSpec) -> GradedLiePolynomial {
        let mut out = GradedLiePolynomial::zero(field);
        if let NormalForm::Monomial { monomial, .. } = self {
            out.add_term(monomial.clone(), self.coefficient_in(field));
        }
        out
    }
}

/// Normal form of a monomial modulo the T-ideal generated by the `U1` family:
/// the odd-degree letter first, then the even-degree letters ascending by
/// `(degree, index)`.
pub fn monomial_normal_form(m: &LeftNormedMonomial) -> NormalForm {
    if monomial_is_identity(m, WittAlgebra::U1) {
        return NormalForm::Zero;
    }
    let mut letters = m.letters().to_vec();
    let mut coefficient = 1;
    if letters.len() >= 2 && letters[0].degree.rem_euclid(2) == 0 {
        letters.swap(0, 1);
        coefficient = -1;
    }
    if letters.len() > 2 {
        letters[1..].sort_by_key(|v| (v.degree, v.index));
    }
    let monomial = LeftNormedMonomial::new(letters).expect("nonempty");
    NormalForm::Monomial { coefficient, monomial }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::{var, GradedVariable};

    fn mono(letters: &[GradedVariable]) -> LeftNormedMonomial {
        LeftNormedMonomial::new(letters.to_vec()).unwrap()
    }

    #[test]
    fn parity_rule_examples() {
        use WittAlgebra::*;
        assert!(monomial_is_identity(&mono(&[var(1, 1), var(2, 3)]), U1));
        assert!(!monomial_is_identity(&mono(&[var(1, 1), var(2, 2), var(3, 4)]), U1));
        assert!(!monomial_is_identity(&mono(&[var(1, 0)]), U1));
        assert!(!monomial_is_identity(&mono(&[var(1, -2)]), U1));
        assert!(monomial_is_identity(&mono(&[var(1, -2)]), W1));
        assert!(monomial_is_identity(&mono(&[var(1, 1), var(2, -2)]), W1));
        assert!(!monomial_is_identity(&mono(&[var(1, -1), var(2, 0)]), W1));
    }

    #[test]
    fn normal_form_examples() {
        let nf = monomial_normal_form(&mono(&[var(1, 1), var(3, 4), var(2, 2)]));
        assert_eq!(
            nf,
            NormalForm::Monomial {
                coefficient: 1,
                monomial: mono(&[var(1, 1), var(2, 2), var(3, 4)])
            }
        );
        assert!(monomial_normal_form(&mono(&[var(1, 1), var(2, 3)])).is_zero());
        let nf = monomial_normal_form(&mono(&[var(2, 0), var(1, 1)]));
        assert_eq!(
            nf,
            NormalForm::Monomial {
                coefficient: -1,
                monomial: mono(&[var(1, 1), var(2, 0)])
            }
        );
        assert_eq!(nf.coefficient_in(FieldSpec::GF2), Scalar::Residue(1));
        assert_eq!(nf.to_polynomial(FieldSpec::GF2).to_string(), "[x1^1, x2^0]");
    }

    #[test]
    fn ties_broken_by_index() {
        let nf = monomial_normal_form(&mono(&[var(5, 2), var(1, 3), var(4, 2), var(2, 2)]));
        let NormalForm::Monomial { monomial, .. } = nf else {
            panic!()
        };
        assert_eq!(monomial, mono(&[var(1, 3), var(2, 2), var(4, 2), var(5, 2)]));
    }
}
