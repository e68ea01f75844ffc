use super::TIdealError;
use crate::linalg::{reduce_against, Echelon};
use crate::scalars::FieldSpec;

/// A subspace of a multilinear component, in reduced row echelon form.
///
/// Column `j` is the coordinate on the `j`-th `N_σ` basis monomial of the
/// ambient [`MultilinearSpace`](crate::freealg::MultilinearSpace). Rows are
/// nonzero, pivots strictly increase and every pivot entry is 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceBasis {
    field: FieldSpec,
    ambient_dim: usize,
    pivots: Vec<usize>,
    rows: Vec<Vec<u64>>,
}

impl SubspaceBasis {
    pub fn zero(field: FieldSpec, ambient_dim: usize) -> Result<Self, TIdealError> {
        Self::from_vectors(field, ambient_dim, std::iter::empty())
    }

    pub fn full(field: FieldSpec, ambient_dim: usize) -> Result<Self, TIdealError> {
        let unit = |i| (0..ambient_dim).map(|j| u64::from(i == j)).collect();
        Self::from_vectors(field, ambient_dim, (0..ambient_dim).map(unit))
    }

    /// Span of the given residue vectors.
    pub fn from_vectors(
        field: FieldSpec,
        ambient_dim: usize,
        vectors: impl IntoIterator<Item = Vec<u64>>,
    ) -> Result<Self, TIdealError> {
        let p = field.modulus().ok_or(TIdealError::UnsupportedField(field))?;
        let mut e = Echelon::new(p, ambient_dim);
        for v in vectors {
            if v.len() != ambient_dim {
                return Err(TIdealError::AmbientMismatch(ambient_dim, v.len()));
            }
            let v: Vec<u64> = v.into_iter().map(|x| x % p).collect();
            e.insert(&v);
        }
        Ok(Self::from_echelon(field, ambient_dim, e))
    }

    pub(crate) fn from_echelon(field: FieldSpec, ambient_dim: usize, e: Echelon) -> Self {
        let pivots = e.pivots();
        let rows = e.into_rows();
        SubspaceBasis {
            field,
            ambient_dim,
            pivots,
            rows,
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn modulus(&self) -> u64 {
        self.field.modulus().expect("subspaces live over prime fields")
    }

    pub fn contains_vector(&self, v: &[u64]) -> Result<bool, TIdealError> {
        if v.len() != self.ambient_dim {
            return Err(TIdealError::AmbientMismatch(self.ambient_dim, v.len()));
        }
        let p = self.modulus();
        let mut w: Vec<u64> = v.iter().map(|x| x % p).collect();
        reduce_against(&self.rows, &self.pivots, &mut w, p);
        Ok(w.iter().all(|&x| x == 0))
    }

    fn check_compatible(&self, other: &Self) -> Result<(), TIdealError> {
        if self.ambient_dim != other.ambient_dim {
            return Err(TIdealError::AmbientMismatch(self.ambient_dim, other.ambient_dim));
        }
        if self.field != other.field {
            return Err(TIdealError::FieldMismatch(self.field, other.field));
        }
        Ok(())
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Self) -> Result<bool, TIdealError> {
        Ok(self.first_row_outside(other)?.is_none())
    }

    pub fn equals(&self, other: &Self) -> Result<bool, TIdealError> {
        self.check_compatible(other)?;
        // both are reduced echelon forms, so equality is syntactic
        Ok(self.rows == other.rows)
    }

    /// A basis row of `other` that does not lie in `self`, if any.
    pub fn first_row_outside(&self, other: &Self) -> Result<Option<Vec<u64>>, TIdealError> {
        self.check_compatible(other)?;
        for row in &other.rows {
            if !self.contains_vector(row)? {
                return Ok(Some(row.clone()));
            }
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const GF2: FieldSpec = FieldSpec::GF2;

    #[test]
    fn containment_basics() {
        let a = SubspaceBasis::from_vectors(GF2, 3, [vec![1, 1, 0]]).unwrap();
        let zero = SubspaceBasis::zero(GF2, 3).unwrap();
        let full = SubspaceBasis::full(GF2, 3).unwrap();
        assert!(a.equals(&a).unwrap());
        assert!(a.contains(&zero).unwrap());
        assert!(full.contains(&zero).unwrap());
        assert!(!a.equals(&zero).unwrap());
        assert!(a.contains(&zero).unwrap() && !zero.contains(&a).unwrap());
        assert!(full.contains(&a).unwrap());
        assert_eq!(zero.first_row_outside(&a).unwrap(), Some(vec![1, 1, 0]));
    }

    #[test]
    fn mismatches_are_errors() {
        let a = SubspaceBasis::zero(GF2, 3).unwrap();
        let b = SubspaceBasis::zero(GF2, 2).unwrap();
        assert_eq!(a.contains(&b), Err(TIdealError::AmbientMismatch(3, 2)));
        let c = SubspaceBasis::zero(FieldSpec::Prime(3), 3).unwrap();
        assert!(matches!(a.equals(&c), Err(TIdealError::FieldMismatch(..))));
        assert_eq!(
            SubspaceBasis::zero(FieldSpec::Rational, 1),
            Err(TIdealError::UnsupportedField(FieldSpec::Rational))
        );
    }

    #[test]
    fn equal_spans_have_equal_forms() {
        let f = FieldSpec::Prime(5);
        let a = SubspaceBasis::from_vectors(f, 3, [vec![1, 2, 3], vec![0, 1, 4]]).unwrap();
        let b = SubspaceBasis::from_vectors(f, 3, [vec![1, 3, 2], vec![2, 4, 1]]).unwrap();
        assert_eq!(
            a.contains(&b).unwrap() && b.contains(&a).unwrap(),
            a.equals(&b).unwrap()
        );
    }
}
