use super::{AssocPolynomial, BracketTree, FreeAlgError, GradedLiePolynomial, GradedVariable, LeftNormedMonomial};
use crate::scalars::{reduce_i128, FieldSpec, Scalar};

/// Upper bound on the number of variables of a [`MultilinearSpace`]; the
/// basis has `(n-1)!` elements and is materialised eagerly.
pub const MAX_SPACE_VARIABLES: usize = 9;

/// The multilinear component `P_n^g` in the variables `x_{s_1}, …, x_{s_n}`
/// (`s_1 < … < s_n`).
///
/// Its basis is the family `N_σ = [x_{s_n}, x_{s_σ(1)}, …, x_{s_σ(n-1)}]`,
/// every basis monomial starting with the highest-index variable, listed with
/// `σ` in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultilinearSpace {
    vars: Vec<GradedVariable>,
    basis: Vec<LeftNormedMonomial>,
}

impl MultilinearSpace {
    pub fn new(mut vars: Vec<GradedVariable>) -> Result<Self, FreeAlgError> {
        if vars.is_empty() {
            return Err(FreeAlgError::NotMultilinear(
                "a space needs at least one variable".into(),
            ));
        }
        if vars.len() > MAX_SPACE_VARIABLES {
            return Err(FreeAlgError::SpaceTooLarge {
                got: vars.len(),
                max: MAX_SPACE_VARIABLES,
            });
        }
        vars.sort();
        if let Some(w) = vars.windows(2).find(|w| w[0].index == w[1].index) {
            return Err(FreeAlgError::DuplicateIndex(w[0].index));
        }
        let n = vars.len();
        let top = vars[n - 1];
        let basis = (0..factorial(n - 1))
            .map(|rank| {
                let mut letters = Vec::with_capacity(n);
                letters.push(top);
                letters.extend(unrank(rank, n - 1).into_iter().map(|p| vars[p]));
                LeftNormedMonomial::new(letters).expect("nonempty")
            })
            .collect();
        Ok(MultilinearSpace { vars, basis })
    }

    /// The space on `x_1^{g_1}, …, x_n^{g_n}`.
    pub fn from_degrees(degrees: &[i64]) -> Result<Self, FreeAlgError> {
        let vars = degrees
            .iter()
            .enumerate()
            .map(|(i, &d)| GradedVariable::new(i as u32 + 1, d))
            .collect();
        Self::new(vars)
    }

    pub fn variables(&self) -> &[GradedVariable] {
        &self.vars
    }

    pub fn n(&self) -> usize {
        self.vars.len()
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.vars.iter().map(|v| v.degree).collect()
    }

    pub fn zdegree(&self) -> i64 {
        self.vars.iter().map(|v| v.degree).sum()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// The `N_σ` basis in lexicographic-`σ` order.
    pub fn basis(&self) -> &[LeftNormedMonomial] {
        &self.basis
    }

    pub fn position(&self, v: GradedVariable) -> Option<usize> {
        self.vars.binary_search(&v).ok()
    }

    /// Coordinates of a Lie element, given by its associative image, in the
    /// `N_σ` basis.
    ///
    /// The coefficient of `N_σ` is read off the unique word of `N_σ` that
    /// starts with the highest variable; the answer is then re-expanded and
    /// compared with the input, so a non-Lie input is rejected.
    pub fn coordinates(&self, element: &AssocPolynomial) -> Result<Vec<Scalar>, FreeAlgError> {
        let field = element.field();
        let n = self.n();
        let mut coords = vec![field.zero(); self.dim()];
        for (word, c) in element.terms() {
            let positions = self.word_positions(word)?;
            if positions[0] == n - 1 {
                coords[rank(&positions[1..])] = c.clone();
            }
        }
        let mut check = AssocPolynomial::zero(field);
        for (m, c) in self.basis.iter().zip(&coords) {
            if !c.is_zero() {
                check.add_scaled(&AssocPolynomial::from_monomial(field, m), c);
            }
        }
        if &check != element {
            return Err(FreeAlgError::NotInSpace);
        }
        Ok(coords)
    }

    pub fn coordinates_of_tree(&self, field: FieldSpec, tree: &BracketTree) -> Result<Vec<Scalar>, FreeAlgError> {
        self.coordinates(&AssocPolynomial::from_tree(field, tree))
    }

    pub fn coordinates_of(&self, f: &GradedLiePolynomial) -> Result<Vec<Scalar>, FreeAlgError> {
        if let Some(v) = f.variables().into_iter().find(|v| self.position(*v).is_none()) {
            return Err(FreeAlgError::NotMultilinear(format!(
                "{v} is not a variable of the space"
            )));
        }
        self.coordinates(&f.to_associative())
    }

    pub fn polynomial(&self, field: FieldSpec, coords: &[Scalar]) -> GradedLiePolynomial {
        let mut out = GradedLiePolynomial::zero(field);
        for (m, c) in self.basis.iter().zip(coords) {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    /// Like [`polynomial`](Self::polynomial) for canonical residues of a prime field.
    pub fn polynomial_from_residues(&self, field: FieldSpec, coords: &[u64]) -> GradedLiePolynomial {
        let scalars: Vec<Scalar> = coords.iter().map(|&v| Scalar::Residue(v)).collect();
        self.polynomial(field, &scalars)
    }

    fn word_positions(&self, word: &[GradedVariable]) -> Result<Vec<usize>, FreeAlgError> {
        let n = self.n();
        if word.len() != n {
            return Err(FreeAlgError::NotMultilinear(format!(
                "word of length {} in a space of {n} variables",
                word.len()
            )));
        }
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for v in word {
            match self.position(*v) {
                Some(p) if !seen[p] => {
                    seen[p] = true;
                    out.push(p);
                }
                Some(_) => return Err(FreeAlgError::NotMultilinear(format!("{v} repeated"))),
                None => {
                    return Err(FreeAlgError::NotMultilinear(format!(
                        "{v} is not a variable of the space"
                    )))
                }
            }
        }
        Ok(out)
    }

    /// `N_σ` coordinates (mod `modulus`) of a packed multilinear expansion
    /// over the space's positions. No certificate: callers build `lie` from
    /// genuine bracket expressions.
    pub(crate) fn packed_coordinates(&self, lie: &PackedLie, modulus: u64) -> Vec<u64> {
        let n = self.n();
        debug_assert_eq!(lie.len as usize, n);
        let top = (n - 1) as u64;
        let mut acc = vec![0i128; self.dim()];
        let mut rest = vec![0usize; n - 1];
        for &(word, c) in &lie.terms {
            if word & 0xF != top {
                continue;
            }
            for (i, slot) in rest.iter_mut().enumerate() {
                *slot = ((word >> (4 * (i + 1))) & 0xF) as usize;
            }
            acc[rank(&rest)] += c as i128;
        }
        acc.into_iter().map(|c| reduce_i128(c, modulus)).collect()
    }
}

/// Expansion of a multilinear Lie monomial into associative words, with
/// letters packed four bits apiece and integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct PackedLie {
    pub len: u8,
    pub terms: Vec<(u64, i64)>,
}

impl PackedLie {
    pub fn letter(position: usize) -> Self {
        debug_assert!(position < 16);
        PackedLie {
            len: 1,
            terms: vec![(position as u64, 1)],
        }
    }

    pub fn left_normed(positions: &[usize]) -> Self {
        let (first, rest) = positions.split_first().expect("nonempty");
        rest.iter().fold(Self::letter(*first), |acc, &p| acc.ad(p))
    }

    /// `[self, other]`.
    pub fn bracket(&self, other: &Self) -> Self {
        debug_assert!(self.len + other.len <= 16);
        let (sa, sb) = (4 * self.len as u32, 4 * other.len as u32);
        let mut terms = Vec::with_capacity(2 * self.terms.len() * other.terms.len());
        for &(a, ca) in &self.terms {
            for &(b, cb) in &other.terms {
                terms.push((a | (b << sa), ca * cb));
                terms.push((b | (a << sb), -ca * cb));
            }
        }
        PackedLie {
            len: self.len + other.len,
            terms,
        }
    }

    /// `[self, x_position]`.
    pub fn ad(&self, position: usize) -> Self {
        let shift = 4 * self.len as u32;
        let p = position as u64;
        let mut terms = Vec::with_capacity(2 * self.terms.len());
        for &(a, c) in &self.terms {
            terms.push((a | (p << shift), c));
            terms.push((p | (a << 4), -c));
        }
        PackedLie {
            len: self.len + 1,
            terms,
        }
    }
}

pub(crate) fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Lexicographic rank of a permutation of `0..m`.
fn rank(perm: &[usize]) -> usize {
    let m = perm.len();
    let mut r = 0;
    for i in 0..m {
        let smaller = perm[i + 1..].iter().filter(|&&x| x < perm[i]).count();
        r = r * (m - i) + smaller;
    }
    r
}

/// Inverse of [`rank`].
fn unrank(mut r: usize, m: usize) -> Vec<usize> {
    let mut digits = vec![0; m];
    for i in (0..m).rev() {
        let base = m - i;
        digits[i] = r % base;
        r /= base;
    }
    let mut pool: Vec<usize> = (0..m).collect();
    digits.into_iter().map(|d| pool.remove(d)).collect()
}

/// Converts a packed expansion back to an [`AssocPolynomial`]; test support.
#[cfg(test)]
pub(crate) fn packed_to_assoc(space: &MultilinearSpace, lie: &PackedLie, field: FieldSpec) -> AssocPolynomial {
    let mut map: std::collections::BTreeMap<Vec<GradedVariable>, i64> = Default::default();
    for &(w, c) in &lie.terms {
        let word = (0..lie.len as u32)
            .map(|i| space.vars[((w >> (4 * i)) & 0xF) as usize])
            .collect();
        *map.entry(word).or_default() += c;
    }
    let mut out = AssocPolynomial::zero(field);
    for (w, c) in map {
        out.add_term(w, field.from_integer(c));
    }
    out
}
