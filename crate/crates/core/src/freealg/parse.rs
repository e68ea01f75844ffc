//! Text syntax for graded Lie polynomials.
//!
//! ```text
//! poly := term ('+' term)*  |  '0'
//! term := (coeff '*')? mono
//! mono := '[' var (',' var)* ']'  |  var
//! var  := 'x' INT '^' SINT
//! ```
//!
//! Whitespace is ignored; integer coefficients (optionally signed) are
//! reduced into the target field. The printer (`Display` on
//! [`GradedLiePolynomial`]) emits this syntax.

use thiserror::Error;

use super::{GradedLiePolynomial, GradedVariable, LeftNormedMonomial};
use crate::scalars::FieldSpec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at offset {offset}: {message}")]
pub struct ParseError {
    /// Byte offset into the input (whitespace included).
    pub offset: usize,
    pub message: String,
}

pub fn parse_polynomial(text: &str, field: FieldSpec) -> Result<GradedLiePolynomial, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    p.skip_ws();
    if p.peek() == Some(b'0') {
        let save = p.pos;
        p.pos += 1;
        p.skip_ws();
        if p.at_end() {
            return Ok(GradedLiePolynomial::zero(field));
        }
        p.pos = save;
    }
    let mut out = GradedLiePolynomial::zero(field);
    loop {
        let (coeff, mono) = p.term()?;
        out.add_term(mono, field.from_integer(coeff));
        p.skip_ws();
        match p.peek() {
            None => break,
            Some(b'+') => p.pos += 1,
            Some(c) => return Err(p.error(format!("expected '+' or end of input, found '{}'", c as char))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            offset: self.pos,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(d) if d == c => {
                self.pos += 1;
                Ok(())
            }
            Some(d) => Err(self.error(format!("expected '{}', found '{}'", c as char, d as char))),
            None => Err(self.error(format!("expected '{}', found end of input", c as char))),
        }
    }

    fn term(&mut self) -> Result<(i64, LeftNormedMonomial), ParseError> {
        self.skip_ws();
        let coeff = match self.peek() {
            Some(c) if c == b'-' || c.is_ascii_digit() => {
                let c = self.signed()?;
                self.expect(b'*')?;
                c
            }
            _ => 1,
        };
        Ok((coeff, self.mono()?))
    }

    fn mono(&mut self) -> Result<LeftNormedMonomial, ParseError> {
        self.skip_ws();
        if self.peek() != Some(b'[') {
            return Ok(LeftNormedMonomial::single(self.var()?));
        }
        self.pos += 1;
        let mut letters = vec![self.var()?];
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b',') => {
                    self.pos += 1;
                    letters.push(self.var()?);
                }
                Some(b']') => {
                    self.pos += 1;
                    break;
                }
                Some(c) => return Err(self.error(format!("expected ',' or ']', found '{}'", c as char))),
                None => return Err(self.error("unterminated '['")),
            }
        }
        Ok(LeftNormedMonomial::new(letters).expect("nonempty"))
    }

    fn var(&mut self) -> Result<GradedVariable, ParseError> {
        self.expect(b'x')?;
        let start = self.pos;
        let index = self.unsigned()?;
        let index = u32::try_from(index).map_err(|_| ParseError {
            offset: start,
            message: format!("variable index {index} overflows"),
        })?;
        if index == 0 {
            return Err(ParseError {
                offset: start,
                message: "variable indices start at 1".into(),
            });
        }
        self.expect(b'^')?;
        self.skip_ws();
        let degree = self.signed()?;
        Ok(GradedVariable::new(index, degree))
    }

    fn unsigned(&mut self) -> Result<u64, ParseError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        digits.parse().map_err(|_| ParseError {
            offset: start,
            message: format!("integer {digits} overflows"),
        })
    }

    fn signed(&mut self) -> Result<i64, ParseError> {
        let start = self.pos;
        let negative = self.peek() == Some(b'-');
        if negative {
            self.pos += 1;
        }
        let magnitude = self.unsigned()?;
        let value = if negative {
            0i64.checked_sub_unsigned(magnitude)
        } else {
            i64::try_from(magnitude).ok()
        };
        value.ok_or_else(|| ParseError {
            offset: start,
            message: "integer overflows i64".into(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::var;
    use crate::scalars::Scalar;
    use proptest::prelude::*;

    const GF2: FieldSpec = FieldSpec::GF2;

    #[test]
    fn parses_basic_forms() {
        let f = parse_polynomial("[x1^1, x2^3]", GF2).unwrap();
        let m = LeftNormedMonomial::new(vec![var(1, 1), var(2, 3)]).unwrap();
        assert_eq!(f, GradedLiePolynomial::monomial(GF2, m));

        let f = parse_polynomial("[x1^0, x2^2, x3^0] + [x3^0, x2^2, x1^0]", GF2).unwrap();
        assert_eq!(f.len(), 2);
        assert!(f.is_multilinear());

        let f = parse_polynomial("x1^-2", GF2).unwrap();
        assert_eq!(f.zdegree(), Ok(-2));
        assert_eq!(f.variables().into_iter().collect::<Vec<_>>(), vec![var(1, -2)]);
    }

    #[test]
    fn whitespace_and_coefficients() {
        let f = parse_polynomial("  2 * [ x1 ^ -1 ,x2^1 ]+[x2^1,x1^-1]", FieldSpec::Prime(5)).unwrap();
        let m = LeftNormedMonomial::new(vec![var(1, -1), var(2, 1)]).unwrap();
        assert_eq!(f.coefficient(&m), Scalar::Residue(2));
        let g = parse_polynomial("-1*x3^0", FieldSpec::Prime(5)).unwrap();
        assert_eq!(g.to_string(), "4*x3^0");
        // coefficients reduce; 2 vanishes in characteristic two
        assert!(parse_polynomial("2*[x1^0, x2^0]", GF2).unwrap().is_zero());
        assert!(parse_polynomial("0", GF2).unwrap().is_zero());
    }

    #[test]
    fn errors_carry_offsets() {
        let e = parse_polynomial("[x1^1, y2^3]", GF2).unwrap_err();
        assert_eq!(e.offset, 7);
        let e = parse_polynomial("[x1^1, x2^3", GF2).unwrap_err();
        assert_eq!(e.offset, 11);
        let e = parse_polynomial("[x1^1] x2^0", GF2).unwrap_err();
        assert_eq!(e.offset, 7);
        let e = parse_polynomial("x99999999999^1", GF2).unwrap_err();
        assert!(e.message.contains("overflows"));
        let e = parse_polynomial("x1^99999999999999999999", GF2).unwrap_err();
        assert!(e.message.contains("overflows"));
        assert!(parse_polynomial("x0^1", GF2).is_err());
        assert!(parse_polynomial("", GF2).is_err());
        assert!(parse_polynomial("[]", GF2).is_err());
    }

    fn polynomial(field: FieldSpec) -> impl Strategy<Value = GradedLiePolynomial> {
        let letter = (1u32..6, -4i64..5).prop_map(|(i, d)| var(i, d));
        let mono = prop::collection::vec(letter, 1..5);
        prop::collection::vec((mono, 1i64..10), 0..5).prop_map(move |terms| {
            let mut f = GradedLiePolynomial::zero(field);
            for (letters, c) in terms {
                f.add_term(LeftNormedMonomial::new(letters).unwrap(), field.from_integer(c));
            }
            f
        })
    }

    proptest! {
        #[test]
        fn printer_round_trips(p in prop_oneof![Just(2u64), Just(3), Just(11)].prop_flat_map(|p| polynomial(FieldSpec::Prime(p)))) {
            let text = p.to_string();
            prop_assert_eq!(parse_polynomial(&text, p.field()).unwrap(), p);
        }
    }
}
