//! Exact field arithmetic.
//!
//! A [`FieldSpec`] names the coefficient field (a prime field or the
//! rationals) and carries every operation; [`Scalar`] values are plain data
//! and only make sense together with the field that produced them. The
//! default field is GF(2).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("unrecognised field `{0}` (expected gf2, gf<p> or rational)")]
    UnknownField(String),
}

/// Coefficient field selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    /// GF(p) for a prime `p`.
    Prime(u64),
    /// The rational numbers.
    Rational,
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec::GF2
    }
}

/// An element of some field. Residues are kept canonical (`0 <= v < p`) and
/// fractions are kept in lowest terms, so derived equality is field equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Residue(u64),
    Rational(BigRational),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    pub const GF2: FieldSpec = FieldSpec::Prime(2);

    pub fn prime(p: u64) -> Result<Self, ScalarError> {
        if is_prime(p) {
            Ok(FieldSpec::Prime(p))
        } else {
            Err(ScalarError::NotPrime(p))
        }
    }

    /// The prime modulus, or `None` for the rationals.
    pub fn modulus(&self) -> Option<u64> {
        match *self {
            FieldSpec::Prime(p) => Some(p),
            FieldSpec::Rational => None,
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.modulus().unwrap_or(0)
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Prime(_) => Scalar::Residue(0),
            FieldSpec::Rational => Scalar::Rational(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            FieldSpec::Prime(_) => Scalar::Residue(1),
            FieldSpec::Rational => Scalar::Rational(BigRational::one()),
        }
    }

    /// Reduces an integer into the field.
    pub fn from_integer(&self, n: i64) -> Scalar {
        match *self {
            FieldSpec::Prime(p) => Scalar::Residue(reduce_i128(n as i128, p)),
            FieldSpec::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (*self, a, b) {
            (FieldSpec::Prime(p), Scalar::Residue(x), Scalar::Residue(y)) => {
                Scalar::Residue(((*x as u128 + *y as u128) % p as u128) as u64)
            }
            (FieldSpec::Rational, Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x + y),
            _ => mismatch(self, a, b),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (*self, a, b) {
            (FieldSpec::Prime(p), Scalar::Residue(x), Scalar::Residue(y)) => {
                Scalar::Residue(((*x as u128 * *y as u128) % p as u128) as u64)
            }
            (FieldSpec::Rational, Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x * y),
            _ => mismatch(self, a, b),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (*self, a) {
            (FieldSpec::Prime(p), Scalar::Residue(x)) => Scalar::Residue((p - x % p) % p),
            (FieldSpec::Rational, Scalar::Rational(x)) => Scalar::Rational(-x),
            _ => mismatch(self, a, a),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar, ScalarError> {
        if self.is_zero(a) {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(match (*self, a) {
            (FieldSpec::Prime(p), Scalar::Residue(x)) => Scalar::Residue(inv_mod(*x, p)),
            (FieldSpec::Rational, Scalar::Rational(x)) => Scalar::Rational(x.recip()),
            _ => mismatch(self, a, a),
        })
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        a.is_zero()
    }

    /// Canonical residue of `a` when this is a prime field.
    pub fn residue(&self, a: &Scalar) -> Option<u64> {
        match a {
            Scalar::Residue(v) if self.modulus().is_some() => Some(*v),
            _ => None,
        }
    }

    /// Whether `a` is a canonical element of this field.
    pub fn owns(&self, a: &Scalar) -> bool {
        match (*self, a) {
            (FieldSpec::Prime(p), Scalar::Residue(v)) => *v < p,
            (FieldSpec::Rational, Scalar::Rational(_)) => true,
            _ => false,
        }
    }
}

#[cold]
fn mismatch(field: &FieldSpec, a: &Scalar, b: &Scalar) -> ! {
    panic!("scalars {a:?}, {b:?} do not belong to field {field}")
}

pub(crate) fn reduce_i128(n: i128, p: u64) -> u64 {
    n.rem_euclid(p as i128) as u64
}

pub(crate) fn inv_mod(x: u64, p: u64) -> u64 {
    // extended Euclid on i128 to stay clear of overflow for any u64 prime
    let (mut r0, mut r1) = (p as i128, (x % p) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1, "{x} not invertible mod {p}");
    t0.rem_euclid(p as i128) as u64
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Residue(v) => *v == 0,
            Scalar::Rational(q) => q.is_zero(),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Residue(v) => write!(f, "{v}"),
            Scalar::Rational(q) if q.is_integer() => write!(f, "{}", q.numer()),
            Scalar::Rational(q) => {
                if q.is_negative() {
                    write!(f, "-{}/{}", q.numer().abs(), q.denom())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "gf{p}"),
            FieldSpec::Rational => f.write_str("rational"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim().to_ascii_lowercase();
        if s == "rational" || s == "q" {
            return Ok(FieldSpec::Rational);
        }
        match s.strip_prefix("gf").map(str::parse::<u64>) {
            Some(Ok(p)) => FieldSpec::prime(p),
            _ => Err(ScalarError::UnknownField(s)),
        }
    }
}

impl Serialize for FieldSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
