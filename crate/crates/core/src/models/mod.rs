//! Concrete ℤ-graded Lie algebras given by structure constants.
//!
//! Every model has components of dimension at most three. Basis vectors are
//! addressed by `(degree, slot)`; `slot` indexes the basis of the component
//! of that degree. `U1` and `W1` are described by the closed-form rule
//! `[e_i, e_j] = (j - i) e_{i+j}` and have infinite support; the `UT(3)`
//! gradings and the one-dimensional algebras have finite support.

mod element;
mod eval;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::freealg::GradedVariable;
use crate::scalars::FieldSpec;

pub use element::{BasisIndex, ModelElement};
pub(crate) use eval::evaluate_letters;
pub use eval::{
    basis_substitutions, evaluate, random_substitution, satisfies_multilinear, seeded_substitution, Substitution,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("component of degree {degree} is zero in {model}")]
    EmptyComponent { model: String, degree: i64 },
    #[error("slot {slot} out of range for the component of degree {degree} (dimension {dim})")]
    SlotOutOfRange { degree: i64, slot: usize, dim: usize },
    #[error("inadmissible substitution for {variable}: {reason}")]
    Inadmissible { variable: GradedVariable, reason: String },
    #[error("substitution does not cover {0}")]
    MissingVariable(GradedVariable),
    #[error("polynomial is not multilinear; only multilinear identities are decided by evaluation")]
    NotMultilinear,
    #[error("invalid model parameters: {0}")]
    InvalidParameters(String),
    #[error("polynomial over {polynomial} evaluated in a model over {model}")]
    FieldMismatch { polynomial: FieldSpec, model: FieldSpec },
    #[error("unrecognised model `{0}` (expected u1, w1, ut3:<r>:<s> or onedim:<d>)")]
    UnknownModel(String),
}

/// The two Witt-type algebras.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WittAlgebra {
    /// Derivations of the Laurent polynomials; support all of ℤ.
    U1,
    /// Derivations of the polynomial ring; support `{-1, 0, 1, …}`.
    W1,
}

/// Which model to build; parsed from `u1`, `w1`, `ut3:<r>:<s>`, `onedim:<d>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModelSpec {
    U1,
    W1,
    Ut3 { r: i64, s: i64 },
    OneDim { d: i64 },
}

impl From<WittAlgebra> for ModelSpec {
    fn from(w: WittAlgebra) -> Self {
        match w {
            WittAlgebra::U1 => ModelSpec::U1,
            WittAlgebra::W1 => ModelSpec::W1,
        }
    }
}

impl fmt::Display for ModelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelSpec::U1 => f.write_str("u1"),
            ModelSpec::W1 => f.write_str("w1"),
            ModelSpec::Ut3 { r, s } => write!(f, "ut3:{r}:{s}"),
            ModelSpec::OneDim { d } => write!(f, "onedim:{d}"),
        }
    }
}

impl FromStr for ModelSpec {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || ModelError::UnknownModel(s.to_string());
        let parts: Vec<&str> = s.trim().split(':').collect();
        let int = |t: &str| t.trim().parse::<i64>().map_err(|_| unknown());
        match parts.as_slice() {
            ["u1"] | ["U1"] => Ok(ModelSpec::U1),
            ["w1"] | ["W1"] => Ok(ModelSpec::W1),
            ["ut3", r, s] => Ok(ModelSpec::Ut3 { r: int(r)?, s: int(s)? }),
            ["onedim", d] => Ok(ModelSpec::OneDim { d: int(d)? }),
            _ => Err(unknown()),
        }
    }
}

impl Serialize for ModelSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ModelSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        String::deserialize(deserializer)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// Matrix units spanning the strictly upper triangular 3×3 matrices. The
/// only nonzero bracket among them is `[E12, E23] = E13`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MatrixUnit {
    E12,
    E23,
    E13,
}

impl fmt::Display for MatrixUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MatrixUnit::E12 => "E12",
            MatrixUnit::E23 => "E23",
            MatrixUnit::E13 => "E13",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Ut3Grading {
    components: BTreeMap<i64, Vec<MatrixUnit>>,
    merged: bool,
}

impl Ut3Grading {
    fn new(r: i64, s: i64) -> Self {
        let mut components: BTreeMap<i64, Vec<MatrixUnit>> = BTreeMap::new();
        let mut put = |d: i64, u: MatrixUnit| components.entry(d).or_default().push(u);
        // H_0 = H when r = s = 0; for r = s ≠ 0 the first two units share
        // degree r. When r ≠ s but r + s hits r or s (one of them is 0), the
        // two units landing on the same degree span a 2-dimensional component.
        put(r, MatrixUnit::E12);
        put(s, MatrixUnit::E23);
        put(r + s, MatrixUnit::E13);
        let merged = r != s && (r + s == r || r + s == s);
        Ut3Grading { components, merged }
    }

    fn locate(&self, unit: MatrixUnit) -> BasisIndex {
        for (&d, units) in &self.components {
            if let Some(slot) = units.iter().position(|&u| u == unit) {
                return (d, slot);
            }
        }
        unreachable!("every matrix unit is graded")
    }
}

/// A ℤ-graded Lie algebra over a field, given by structure constants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedModel {
    spec: ModelSpec,
    field: FieldSpec,
    ut3: Option<Ut3Grading>,
}

impl GradedModel {
    pub fn u1(field: FieldSpec) -> Self {
        GradedModel {
            spec: ModelSpec::U1,
            field,
            ut3: None,
        }
    }

    pub fn w1(field: FieldSpec) -> Self {
        GradedModel {
            spec: ModelSpec::W1,
            field,
            ut3: None,
        }
    }

    pub fn witt(algebra: WittAlgebra, field: FieldSpec) -> Self {
        match algebra {
            WittAlgebra::U1 => Self::u1(field),
            WittAlgebra::W1 => Self::w1(field),
        }
    }

    /// `UT(3, K)` graded so that `f_{r,s} = [x_1^r, x_2^s]` fails in it.
    /// Requires `r <= s` and `r ≡ s (mod 2)`.
    pub fn ut3(field: FieldSpec, r: i64, s: i64) -> Result<Self, ModelError> {
        if r > s || (r - s).rem_euclid(2) != 0 {
            return Err(ModelError::InvalidParameters(format!(
                "ut3 needs r <= s of the same parity, got ({r}, {s})"
            )));
        }
        Ok(GradedModel {
            spec: ModelSpec::Ut3 { r, s },
            field,
            ut3: Some(Ut3Grading::new(r, s)),
        })
    }

    /// The abelian one-dimensional algebra concentrated in degree `d`.
    pub fn onedim(field: FieldSpec, d: i64) -> Self {
        GradedModel {
            spec: ModelSpec::OneDim { d },
            field,
            ut3: None,
        }
    }

    pub fn from_spec(spec: ModelSpec, field: FieldSpec) -> Result<Self, ModelError> {
        match spec {
            ModelSpec::U1 => Ok(Self::u1(field)),
            ModelSpec::W1 => Ok(Self::w1(field)),
            ModelSpec::Ut3 { r, s } => Self::ut3(field, r, s),
            ModelSpec::OneDim { d } => Ok(Self::onedim(field, d)),
        }
    }

    pub fn spec(&self) -> ModelSpec {
        self.spec
    }

    pub fn name(&self) -> String {
        self.spec.to_string()
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn witt_algebra(&self) -> Option<WittAlgebra> {
        match self.spec {
            ModelSpec::U1 => Some(WittAlgebra::U1),
            ModelSpec::W1 => Some(WittAlgebra::W1),
            _ => None,
        }
    }

    /// True for a `UT(3)` grading whose `r + s` collides with `r` or `s`,
    /// so two matrix units share a component.
    pub fn collision_merged(&self) -> bool {
        self.ut3.as_ref().is_some_and(|g| g.merged)
    }

    pub fn component_dim(&self, degree: i64) -> usize {
        match self.spec {
            ModelSpec::U1 => 1,
            ModelSpec::W1 => usize::from(degree >= -1),
            ModelSpec::OneDim { d } => usize::from(degree == d),
            ModelSpec::Ut3 { .. } => self.grading().components.get(&degree).map_or(0, Vec::len),
        }
    }

    /// The support as a finite list, or `None` for an infinite support.
    pub fn finite_support(&self) -> Option<Vec<i64>> {
        match self.spec {
            ModelSpec::U1 | ModelSpec::W1 => None,
            ModelSpec::OneDim { d } => Some(vec![d]),
            ModelSpec::Ut3 { .. } => Some(self.grading().components.keys().copied().collect()),
        }
    }

    pub fn basis_element(&self, degree: i64, slot: usize) -> Result<ModelElement, ModelError> {
        let dim = self.component_dim(degree);
        if dim == 0 {
            return Err(ModelError::EmptyComponent {
                model: self.name(),
                degree,
            });
        }
        if slot >= dim {
            return Err(ModelError::SlotOutOfRange { degree, slot, dim });
        }
        Ok(ModelElement::basis(self.field, (degree, slot)))
    }

    /// Bracket of two basis vectors. Both must lie in nonzero components.
    pub fn bracket_basis(&self, a: BasisIndex, b: BasisIndex) -> ModelElement {
        debug_assert!(a.1 < self.component_dim(a.0) && b.1 < self.component_dim(b.0));
        let field = self.field;
        match self.spec {
            ModelSpec::U1 | ModelSpec::W1 => {
                let (i, j) = (a.0, b.0);
                let coeff = field.from_integer(j - i);
                let target = i + j;
                if coeff.is_zero() || self.component_dim(target) == 0 {
                    // in W1 the only product below degree -1 is [e_-1, e_-1] = 0
                    return ModelElement::zero();
                }
                ModelElement::term(field, (target, 0), coeff)
            }
            ModelSpec::OneDim { .. } => ModelElement::zero(),
            ModelSpec::Ut3 { .. } => {
                let g = self.grading();
                let unit = |(d, slot): BasisIndex| g.components[&d][slot];
                match (unit(a), unit(b)) {
                    (MatrixUnit::E12, MatrixUnit::E23) => {
                        ModelElement::term(field, g.locate(MatrixUnit::E13), field.one())
                    }
                    (MatrixUnit::E23, MatrixUnit::E12) => {
                        ModelElement::term(field, g.locate(MatrixUnit::E13), field.from_integer(-1))
                    }
                    _ => ModelElement::zero(),
                }
            }
        }
    }

    /// Bilinear extension of [`bracket_basis`](Self::bracket_basis).
    pub fn bracket(&self, x: &ModelElement, y: &ModelElement) -> ModelElement {
        let mut out = ModelElement::zero();
        for (&a, ca) in x.terms() {
            for (&b, cb) in y.terms() {
                let c = self.field.mul(ca, cb);
                out.add_scaled(self.field, &self.bracket_basis(a, b), &c);
            }
        }
        out
    }

    /// Name of a basis vector: `e7` in the Witt algebras, the matrix unit in
    /// `UT(3)`, `h` in the one-dimensional algebra.
    pub fn basis_name(&self, (degree, slot): BasisIndex) -> String {
        match self.spec {
            ModelSpec::U1 | ModelSpec::W1 => format!("e{degree}"),
            ModelSpec::OneDim { .. } => "h".to_string(),
            ModelSpec::Ut3 { .. } => self.grading().components[&degree][slot].to_string(),
        }
    }

    pub fn format_element(&self, x: &ModelElement) -> String {
        if x.is_zero() {
            return "0".to_string();
        }
        x.terms()
            .map(|(&b, c)| {
                if *c == self.field.one() {
                    self.basis_name(b)
                } else {
                    format!("{c}*{}", self.basis_name(b))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Basis vectors whose degree lies in `window`.
    pub fn basis_in(&self, window: RangeInclusive<i64>) -> Vec<BasisIndex> {
        window
            .flat_map(|d| (0..self.component_dim(d)).map(move |slot| (d, slot)))
            .collect()
    }

    /// Checks grading compatibility, alternation and the Jacobi identity on
    /// all basis vectors with degrees in `window`; returns the violations.
    pub fn axiom_violations(&self, window: RangeInclusive<i64>) -> Vec<String> {
        let basis = self.basis_in(window);
        let f = self.field;
        let mut out = Vec::new();
        let basis_el = |b: BasisIndex| ModelElement::basis(f, b);
        for &a in &basis {
            if !self.bracket_basis(a, a).is_zero() {
                out.push(format!("[{0}, {0}] != 0", self.basis_name(a)));
            }
            for &b in &basis {
                let ab = self.bracket_basis(a, b);
                if !ab.is_homogeneous_of(a.0 + b.0) {
                    out.push(format!(
                        "[{}, {}] leaves degree {}",
                        self.basis_name(a),
                        self.basis_name(b),
                        a.0 + b.0
                    ));
                }
                let mut anti = ab.clone();
                anti.add_scaled(f, &self.bracket_basis(b, a), &f.one());
                if !anti.is_zero() {
                    out.push(format!(
                        "[{0}, {1}] != -[{1}, {0}]",
                        self.basis_name(a),
                        self.basis_name(b)
                    ));
                }
                for &c in &basis {
                    let mut jac = self.bracket(&ab, &basis_el(c));
                    jac.add_scaled(f, &self.bracket(&self.bracket_basis(b, c), &basis_el(a)), &f.one());
                    jac.add_scaled(f, &self.bracket(&self.bracket_basis(c, a), &basis_el(b)), &f.one());
                    if !jac.is_zero() {
                        out.push(format!(
                            "Jacobi fails on ({}, {}, {})",
                            self.basis_name(a),
                            self.basis_name(b),
                            self.basis_name(c)
                        ));
                    }
                }
            }
        }
        out
    }

    fn grading(&self) -> &Ut3Grading {
        self.ut3.as_ref().expect("ut3 model carries its grading")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const GF2: FieldSpec = FieldSpec::GF2;

    fn e(model: &GradedModel, d: i64) -> ModelElement {
        model.basis_element(d, 0).unwrap()
    }

    #[test]
    fn u1_brackets() {
        let u = GradedModel::u1(GF2);
        assert_eq!(u.bracket(&e(&u, 1), &e(&u, 2)), e(&u, 3));
        assert!(u.bracket(&e(&u, 1), &e(&u, 3)).is_zero());
        let u3 = GradedModel::u1(FieldSpec::Prime(3));
        let v = u3.bracket(&e(&u3, 1), &e(&u3, 3));
        assert_eq!(u3.format_element(&v), "2*e4");
    }

    #[test]
    fn w1_brackets_and_support() {
        let w = GradedModel::w1(GF2);
        assert_eq!(w.bracket(&e(&w, -1), &e(&w, 0)), e(&w, -1));
        assert_eq!(w.component_dim(-2), 0);
        assert!(matches!(
            w.basis_element(-2, 0),
            Err(ModelError::EmptyComponent { degree: -2, .. })
        ));
        assert!(w.bracket(&e(&w, -1), &e(&w, 1)).is_zero());
        assert!(w.bracket(&e(&w, -1), &e(&w, -1)).is_zero());
    }

    #[test]
    fn w1_agrees_with_u1_on_its_support() {
        for field in [GF2, FieldSpec::Prime(3), FieldSpec::Rational] {
            let (u, w) = (GradedModel::u1(field), GradedModel::w1(field));
            for i in -1..=12 {
                for j in -1..=12 {
                    let (bu, bw) = (u.bracket_basis((i, 0), (j, 0)), w.bracket_basis((i, 0), (j, 0)));
                    assert_eq!(bu, bw, "[e{i}, e{j}] over {field}");
                }
            }
        }
    }

    #[test]
    fn ut3_gradings() {
        let h = GradedModel::ut3(GF2, 0, 2).unwrap();
        assert!(h.collision_merged());
        assert_eq!(h.finite_support(), Some(vec![0, 2]));
        assert_eq!(h.component_dim(2), 2);
        let x = h.basis_element(0, 0).unwrap();
        let y = h.basis_element(2, 0).unwrap();
        assert_eq!(h.format_element(&h.bracket(&x, &y)), "E13");

        let h = GradedModel::ut3(GF2, 2, 2).unwrap();
        assert!(!h.collision_merged());
        assert_eq!(h.component_dim(2), 2);
        assert_eq!(h.component_dim(4), 1);
        assert_eq!(h.basis_name((2, 0)), "E12");
        assert_eq!(h.basis_name((2, 1)), "E23");
        assert_eq!(h.basis_name((4, 0)), "E13");

        let h = GradedModel::ut3(GF2, 0, 0).unwrap();
        assert_eq!(h.finite_support(), Some(vec![0]));
        assert_eq!(h.component_dim(0), 3);

        let h = GradedModel::ut3(GF2, -3, 5).unwrap();
        assert_eq!(h.finite_support(), Some(vec![-3, 2, 5]));
        assert!(!h.collision_merged());

        assert!(GradedModel::ut3(GF2, 2, 0).is_err());
        assert!(GradedModel::ut3(GF2, 1, 2).is_err());
    }

    #[test]
    fn onedim_is_abelian() {
        let h = GradedModel::onedim(GF2, -3);
        assert_eq!(h.component_dim(-3), 1);
        assert_eq!(h.component_dim(-2), 0);
        let x = e(&h, -3);
        assert!(h.bracket(&x, &x).is_zero());
    }

    #[test]
    fn axioms_hold_in_windows() {
        for field in [GF2, FieldSpec::Prime(3)] {
            assert!(GradedModel::u1(field).axiom_violations(-6..=6).is_empty());
            assert!(GradedModel::w1(field).axiom_violations(-6..=6).is_empty());
            for (r, s) in [(0, 0), (0, 2), (-2, 0), (2, 2), (-1, 1), (-3, 5), (1, 1)] {
                let h = GradedModel::ut3(field, r, s).unwrap();
                assert!(h.axiom_violations(-12..=12).is_empty(), "ut3:{r}:{s}");
            }
            assert!(GradedModel::onedim(field, 4).axiom_violations(-6..=6).is_empty());
        }
    }

    #[test]
    fn characteristic_two_bracket_is_symmetric() {
        let u = GradedModel::u1(GF2);
        for i in -12..=12 {
            for j in -12..=12 {
                assert_eq!(u.bracket_basis((i, 0), (j, 0)), u.bracket_basis((j, 0), (i, 0)));
            }
        }
    }

    #[test]
    fn model_specs_parse() {
        assert_eq!("u1".parse::<ModelSpec>().unwrap(), ModelSpec::U1);
        assert_eq!("ut3:-2:4".parse::<ModelSpec>().unwrap(), ModelSpec::Ut3 { r: -2, s: 4 });
        assert_eq!("onedim:-3".parse::<ModelSpec>().unwrap(), ModelSpec::OneDim { d: -3 });
        assert!("ut3:1".parse::<ModelSpec>().is_err());
        for s in ["u1", "w1", "ut3:0:2", "onedim:-5"] {
            assert_eq!(s.parse::<ModelSpec>().unwrap().to_string(), s);
        }
    }
}
