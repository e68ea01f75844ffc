use std::collections::BTreeMap;

use itertools::Itertools;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::{GradedModel, ModelElement, ModelError};
use crate::freealg::{GradedLiePolynomial, GradedVariable};
use crate::scalars::{FieldSpec, Scalar};

/// Assignment of model elements to graded variables.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Substitution {
    values: BTreeMap<GradedVariable, ModelElement>,
}

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, v: GradedVariable, value: ModelElement) {
        self.values.insert(v, value);
    }

    pub fn with(mut self, v: GradedVariable, value: ModelElement) -> Self {
        self.insert(v, value);
        self
    }

    pub fn get(&self, v: GradedVariable) -> Option<&ModelElement> {
        self.values.get(&v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&GradedVariable, &ModelElement)> {
        self.values.iter()
    }

    /// Admissible: each variable of degree `a` is sent into the component `L_a`.
    pub fn check_admissible(&self, model: &GradedModel) -> Result<(), ModelError> {
        for (&v, value) in &self.values {
            for (&(d, slot), _) in value.terms() {
                if d != v.degree {
                    return Err(ModelError::Inadmissible {
                        variable: v,
                        reason: format!("value has a component in degree {d}"),
                    });
                }
                if slot >= model.component_dim(d) {
                    return Err(ModelError::Inadmissible {
                        variable: v,
                        reason: format!("slot {slot} does not exist in degree {d}"),
                    });
                }
            }
        }
        Ok(())
    }
}

pub(crate) fn evaluate_letters(
    model: &GradedModel,
    letters: &[GradedVariable],
    sub: &Substitution,
) -> Result<ModelElement, ModelError> {
    let value = |v: &GradedVariable| sub.get(*v).ok_or(ModelError::MissingVariable(*v));
    let (first, rest) = letters.split_first().expect("monomials are nonempty");
    let mut acc = value(first)?.clone();
    for v in rest {
        if acc.is_zero() {
            break;
        }
        acc = model.bracket(&acc, value(v)?);
    }
    Ok(acc)
}

/// Value of `f` under an admissible substitution.
pub fn evaluate(f: &GradedLiePolynomial, sub: &Substitution, model: &GradedModel) -> Result<ModelElement, ModelError> {
    if f.field() != model.field() {
        return Err(ModelError::FieldMismatch {
            polynomial: f.field(),
            model: model.field(),
        });
    }
    sub.check_admissible(model)?;
    if let Some(v) = f.variables().into_iter().find(|v| sub.get(*v).is_none()) {
        return Err(ModelError::MissingVariable(v));
    }
    let field = model.field();
    let mut out = ModelElement::zero();
    for (m, c) in f.terms() {
        out.add_scaled(field, &evaluate_letters(model, m.letters(), sub)?, c);
    }
    Ok(out)
}

/// Every substitution sending each variable to a basis vector of its
/// component. Empty if some component is zero.
pub fn basis_substitutions(model: &GradedModel, vars: &[GradedVariable]) -> Vec<Substitution> {
    let field = model.field();
    vars.iter()
        .map(|v| (0..model.component_dim(v.degree)).map(move |slot| (*v, slot)))
        .multi_cartesian_product()
        .map(|choice| {
            let mut sub = Substitution::new();
            for (v, slot) in choice {
                sub.insert(v, ModelElement::basis(field, (v.degree, slot)));
            }
            sub
        })
        .collect()
}

/// A random admissible substitution: each variable goes to a random
/// combination of its component's basis.
pub fn random_substitution<R: Rng>(model: &GradedModel, vars: &[GradedVariable], rng: &mut R) -> Substitution {
    let field = model.field();
    let mut sub = Substitution::new();
    for &v in vars {
        let mut value = ModelElement::zero();
        for slot in 0..model.component_dim(v.degree) {
            value.add_term(field, (v.degree, slot), random_scalar(field, rng));
        }
        sub.insert(v, value);
    }
    sub
}

/// [`random_substitution`] driven by a seeded generator, for reproducible
/// runs.
pub fn seeded_substitution(model: &GradedModel, vars: &[GradedVariable], seed: u64) -> Substitution {
    random_substitution(model, vars, &mut StdRng::seed_from_u64(seed))
}

fn random_scalar<R: Rng>(field: FieldSpec, rng: &mut R) -> Scalar {
    match field {
        FieldSpec::Prime(p) => Scalar::Residue(rng.gen_range(0..p)),
        FieldSpec::Rational => field.from_integer(rng.gen_range(-9..=9)),
    }
}

/// Whether a multilinear polynomial vanishes under every admissible
/// substitution. By multilinearity it suffices to try all tuples of basis
/// vectors.
pub fn satisfies_multilinear(model: &GradedModel, f: &GradedLiePolynomial) -> Result<bool, ModelError> {
    if !f.is_multilinear() {
        return Err(ModelError::NotMultilinear);
    }
    if f.is_zero() {
        return Ok(true);
    }
    let vars: Vec<GradedVariable> = f.variables().into_iter().collect();
    for sub in basis_substitutions(model, &vars) {
        if !evaluate(f, &sub, model)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}
