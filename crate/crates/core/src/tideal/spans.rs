use std::collections::BTreeMap;
use std::rc::Rc;
use std::time::Instant;

use itertools::Itertools;

use super::{BasisFamily, SubspaceBasis, TIdealError};
use crate::freealg::{MultilinearSpace, PackedLie};
use crate::linalg::{nullspace, Echelon};
use crate::models::{basis_substitutions, evaluate_letters, BasisIndex, GradedModel};
use crate::scalars::FieldSpec;

/// The identities of `model` inside `space`: the kernel of evaluating each
/// `N_σ` at every tuple of component basis vectors.
pub fn identity_subspace(model: &GradedModel, space: &MultilinearSpace) -> Result<SubspaceBasis, TIdealError> {
    let field = model.field();
    let p = field.modulus().ok_or(TIdealError::UnsupportedField(field))?;
    let dim = space.dim();
    let mut functionals: BTreeMap<(usize, BasisIndex), Vec<u64>> = BTreeMap::new();
    for (t, sub) in basis_substitutions(model, space.variables()).iter().enumerate() {
        for (j, m) in space.basis().iter().enumerate() {
            let value = evaluate_letters(model, m.letters(), sub)?;
            for (&b, c) in value.terms() {
                let row = functionals.entry((t, b)).or_insert_with(|| vec![0; dim]);
                row[j] = field.residue(c).expect("prime field");
            }
        }
    }
    let rows: Vec<Vec<u64>> = functionals.into_values().collect();
    SubspaceBasis::from_vectors(field, dim, nullspace(&rows, dim, p))
}

/// The consequences of `family` inside `space`.
pub fn consequence_subspace(
    family: &BasisFamily,
    space: &MultilinearSpace,
    field: FieldSpec,
) -> Result<SubspaceBasis, TIdealError> {
    consequence_subspace_within(family, space, field, None)
}

/// [`consequence_subspace`] that gives up once `deadline` has passed.
///
/// Every multilinear consequence is a combination of instances
/// `[h(u, v), y_1, …, y_m]` where `h` is a family member, `u` and `v` are
/// left-normed monomials over disjoint blocks of variables and the `y_i` are
/// the remaining variables in some order. Blocks are unordered, since
/// `[u, v] = -[v, u]`, and inner monomials range over a basis of each block.
pub fn consequence_subspace_within(
    family: &BasisFamily,
    space: &MultilinearSpace,
    field: FieldSpec,
    deadline: Option<Instant>,
) -> Result<SubspaceBasis, TIdealError> {
    let modulus = field.modulus().ok_or(TIdealError::UnsupportedField(field))?;
    let mut e = Enumerator::new(space, modulus, deadline);
    e.run(family)?;
    Ok(SubspaceBasis::from_echelon(field, space.dim(), e.echelon))
}

struct Enumerator<'a> {
    space: &'a MultilinearSpace,
    degrees: Vec<i64>,
    modulus: u64,
    echelon: Echelon,
    inner: Vec<Option<Rc<Vec<PackedLie>>>>,
    instances: u64,
    deadline: Option<Instant>,
}

impl<'a> Enumerator<'a> {
    fn new(space: &'a MultilinearSpace, modulus: u64, deadline: Option<Instant>) -> Self {
        Enumerator {
            space,
            degrees: space.degrees(),
            modulus,
            echelon: Echelon::new(modulus, space.dim()),
            inner: vec![None; 1 << space.n()],
            instances: 0,
            deadline,
        }
    }

    fn full(&self) -> bool {
        self.echelon.rank() == self.space.dim()
    }

    fn degree(&self, mask: u32) -> i64 {
        positions(mask).map(|i| self.degrees[i]).sum()
    }

    /// Left-normed basis monomials over the positions in `mask`.
    fn inner(&mut self, mask: u32) -> Rc<Vec<PackedLie>> {
        if let Some(cached) = &self.inner[mask as usize] {
            return Rc::clone(cached);
        }
        let mut letters: Vec<usize> = positions(mask).collect();
        let top = letters.pop().expect("nonempty block");
        let k = letters.len();
        let monomials: Vec<PackedLie> = letters
            .into_iter()
            .permutations(k)
            .map(|perm| PackedLie::left_normed(&[vec![top], perm].concat()))
            .collect();
        let rc = Rc::new(monomials);
        self.inner[mask as usize] = Some(Rc::clone(&rc));
        rc
    }

    fn run(&mut self, family: &BasisFamily) -> Result<(), TIdealError> {
        let all = (1u32 << self.space.n()) - 1;
        for t in 1..=all {
            if self.full() {
                return Ok(());
            }
            let rest = all & !t;
            if family.contains_variable(self.degree(t)) {
                for u in self.inner(t).iter() {
                    self.extend(u.clone(), rest)?;
                }
            }
            if t.count_ones() < 2 {
                continue;
            }
            let low = t & t.wrapping_neg();
            let others = t & !low;
            let mut sub = others;
            loop {
                sub = sub.wrapping_sub(1) & others;
                let b1 = low | sub;
                let b2 = t & !b1;
                if family.contains_bracket(self.degree(b1), self.degree(b2)) {
                    let (us, vs) = (self.inner(b1), self.inner(b2));
                    for u in us.iter() {
                        for v in vs.iter() {
                            self.extend(u.bracket(v), rest)?;
                        }
                    }
                }
                if sub == 0 {
                    break;
                }
            }
        }
        Ok(())
    }

    /// Emits `[h, y_π(1), …]` for every ordering of the positions in `rest`.
    fn extend(&mut self, h: PackedLie, rest: u32) -> Result<(), TIdealError> {
        if self.full() {
            return Ok(());
        }
        if rest == 0 {
            return self.emit(&h);
        }
        for p in positions(rest) {
            self.extend(h.ad(p), rest & !(1 << p))?;
        }
        Ok(())
    }

    fn emit(&mut self, h: &PackedLie) -> Result<(), TIdealError> {
        self.instances += 1;
        if self.instances % 256 == 1 {
            if let Some(deadline) = self.deadline {
                if Instant::now() > deadline {
                    return Err(TIdealError::BudgetExceeded {
                        instances: self.instances,
                    });
                }
            }
        }
        let coords = self.space.packed_coordinates(h, self.modulus);
        self.echelon.insert(&coords);
        Ok(())
    }
}

fn positions(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| mask >> i & 1 == 1)
}
