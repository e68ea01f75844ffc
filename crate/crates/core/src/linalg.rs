//! Incremental reduced row echelon forms over GF(p).
//!
//! Vectors are slices of canonical residues. Over GF(2) rows are packed into
//! 64-bit words and reduced with XOR; the dense path handles every other
//! prime.

use crate::scalars::inv_mod;

#[derive(Debug, Clone)]
pub(crate) enum Echelon {
    Binary(BinaryEchelon),
    Dense(DenseEchelon),
}

impl Echelon {
    pub fn new(modulus: u64, ncols: usize) -> Self {
        if modulus == 2 {
            Echelon::Binary(BinaryEchelon {
                ncols,
                rows: Vec::new(),
            })
        } else {
            Echelon::Dense(DenseEchelon {
                modulus,
                ncols,
                rows: Vec::new(),
            })
        }
    }

    /// Adds `v` to the span; true if the rank grew.
    pub fn insert(&mut self, v: &[u64]) -> bool {
        match self {
            Echelon::Binary(e) => e.insert(v),
            Echelon::Dense(e) => e.insert(v),
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            Echelon::Binary(e) => e.rows.len(),
            Echelon::Dense(e) => e.rows.len(),
        }
    }

    /// Rows of the reduced echelon form, sorted by pivot, as residues.
    pub fn into_rows(self) -> Vec<Vec<u64>> {
        match self {
            Echelon::Binary(e) => e
                .rows
                .into_iter()
                .map(|(_, words)| (0..e.ncols).map(|j| (words[j / 64] >> (j % 64)) & 1).collect())
                .collect(),
            Echelon::Dense(e) => e.rows.into_iter().map(|(_, row)| row).collect(),
        }
    }

    pub fn pivots(&self) -> Vec<usize> {
        match self {
            Echelon::Binary(e) => e.rows.iter().map(|(p, _)| *p).collect(),
            Echelon::Dense(e) => e.rows.iter().map(|(p, _)| *p).collect(),
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct BinaryEchelon {
    ncols: usize,
    rows: Vec<(usize, Vec<u64>)>,
}

impl BinaryEchelon {
    fn pack(&self, v: &[u64]) -> Vec<u64> {
        debug_assert_eq!(v.len(), self.ncols);
        let mut words = vec![0u64; self.ncols.div_ceil(64).max(1)];
        for (j, &x) in v.iter().enumerate() {
            words[j / 64] |= (x & 1) << (j % 64);
        }
        words
    }

    fn insert(&mut self, v: &[u64]) -> bool {
        let mut w = self.pack(v);
        for (p, row) in &self.rows {
            if (w[p / 64] >> (p % 64)) & 1 == 1 {
                xor_into(&mut w, row);
            }
        }
        let Some(pivot) = lowest_bit(&w) else {
            return false;
        };
        for (_, row) in &mut self.rows {
            if (row[pivot / 64] >> (pivot % 64)) & 1 == 1 {
                xor_into(row, &w);
            }
        }
        let at = self.rows.partition_point(|(p, _)| *p < pivot);
        self.rows.insert(at, (pivot, w));
        true
    }
}

fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= s;
    }
}

fn lowest_bit(words: &[u64]) -> Option<usize> {
    words
        .iter()
        .enumerate()
        .find(|(_, w)| **w != 0)
        .map(|(i, w)| 64 * i + w.trailing_zeros() as usize)
}

#[derive(Debug, Clone)]
pub(crate) struct DenseEchelon {
    modulus: u64,
    ncols: usize,
    rows: Vec<(usize, Vec<u64>)>,
}

impl DenseEchelon {
    fn insert(&mut self, v: &[u64]) -> bool {
        debug_assert_eq!(v.len(), self.ncols);
        let p = self.modulus;
        let mut w = v.to_vec();
        for (pivot, row) in &self.rows {
            let c = w[*pivot];
            if c != 0 {
                sub_multiple(&mut w, row, c, p);
            }
        }
        let Some(pivot) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let scale = inv_mod(w[pivot], p);
        for x in &mut w {
            *x = mul_mod(*x, scale, p);
        }
        for (_, row) in &mut self.rows {
            let c = row[pivot];
            if c != 0 {
                sub_multiple(row, &w, c, p);
            }
        }
        let at = self.rows.partition_point(|(q, _)| *q < pivot);
        self.rows.insert(at, (pivot, w));
        true
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// `dst -= c * src (mod p)`.
fn sub_multiple(dst: &mut [u64], src: &[u64], c: u64, p: u64) {
    let neg = p - c;
    for (d, &s) in dst.iter_mut().zip(src) {
        if s != 0 {
            *d = ((*d as u128 + neg as u128 * s as u128) % p as u128) as u64;
        }
    }
}

/// Reduces `v` against rows in reduced echelon form (pivot entries 1, zero
/// in every other row's pivot column).
pub(crate) fn reduce_against(rows: &[Vec<u64>], pivots: &[usize], v: &mut [u64], modulus: u64) {
    for (row, &pivot) in rows.iter().zip(pivots) {
        let c = v[pivot];
        if c != 0 {
            sub_multiple(v, row, c, modulus);
        }
    }
}

/// Basis of `{x : A x = 0}` where `A` is given by its rows.
pub(crate) fn nullspace(rows: &[Vec<u64>], ncols: usize, modulus: u64) -> Vec<Vec<u64>> {
    let mut e = Echelon::new(modulus, ncols);
    for r in rows {
        e.insert(r);
    }
    let pivots = e.pivots();
    let reduced = e.into_rows();
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..ncols)
        .filter(|&f| !is_pivot[f])
        .map(|free| {
            let mut x = vec![0u64; ncols];
            x[free] = 1;
            for (row, &p) in reduced.iter().zip(&pivots) {
                x[p] = (modulus - row[free] % modulus) % modulus;
            }
            x
        })
        .collect()
}
