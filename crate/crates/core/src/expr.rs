//! Text form of symbolic reals.
//!
//! Grammar:
//!
//! ```text
//! real     := term (('+' | '-') term)* | '0'
//! term     := rational '*' 'b(' nat ',' bits ')'
//! bits     := ('0' | '1')*          (canonical: empty or ending in 1)
//! rational := int ('/' posint)?
//! ```
//!
//! Canonical printing sorts terms by `(piece, point)` and keeps
//! coefficients in lowest terms, so `parse(print(x)) = x`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::hamel::{BasisElement, HamelError, HamelReal};

#[derive(Debug, Error, PartialEq, Eq)]
#[error("syntax error at byte {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

fn err<T>(pos: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        pos,
        msg: msg.into(),
    })
}

struct Scanner<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn new(src: &'a str) -> Self {
        Scanner { src, pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        match self.peek() {
            Some(got) if got == c => {
                self.bump();
                Ok(())
            }
            Some(got) => err(self.pos, format!("expected '{c}', found '{got}'")),
            None => err(self.pos, format!("expected '{c}', found end of input")),
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.src.len()
    }

    /// `int`: optional sign followed by digits.
    fn integer(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.peek(), Some('+' | '-')) {
            self.bump();
        }
        let digits_start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits_start {
            return err(self.pos, "expected an integer");
        }
        self.src[start..self.pos]
            .parse::<BigInt>()
            .map_err(|e| ParseError {
                pos: start,
                msg: e.to_string(),
            })
    }

    fn rational(&mut self) -> Result<BigRational, ParseError> {
        let numer = self.integer()?;
        if self.peek() == Some('/') {
            self.bump();
            let dpos = self.pos;
            let denom = self.integer()?;
            if denom <= BigInt::zero() {
                return err(dpos, "denominator must be a positive integer");
            }
            Ok(BigRational::new(numer, denom))
        } else {
            Ok(BigRational::from_integer(numer))
        }
    }

    /// `b(' nat ',' bits ')`; the leading rational has been consumed.
    fn basis_element(&mut self) -> Result<BasisElement, ParseError> {
        self.skip_ws();
        self.expect('b')?;
        self.expect('(')?;
        self.skip_ws();
        let npos = self.pos;
        let piece = self.integer()?;
        let piece = u32::try_from(&piece).map_err(|_| ParseError {
            pos: npos,
            msg: "piece index must be a natural number below 2^32".into(),
        })?;
        self.skip_ws();
        self.expect(',')?;
        let bpos = self.pos;
        let start = self.pos;
        while matches!(self.peek(), Some('0' | '1')) {
            self.pos += 1;
        }
        let bits = &self.src[start..self.pos];
        self.expect(')')?;
        BasisElement::new(piece, bits).map_err(|e: HamelError| ParseError {
            pos: bpos,
            msg: e.to_string(),
        })
    }

    fn term(&mut self) -> Result<(BasisElement, BigRational), ParseError> {
        let coeff = self.rational()?;
        self.skip_ws();
        self.expect('*')?;
        let b = self.basis_element()?;
        Ok((b, coeff))
    }
}

/// Parse a symbolic real and canonicalize it.
pub fn parse_real(src: &str) -> Result<HamelReal, ParseError> {
    let mut sc = Scanner::new(src);
    sc.skip_ws();

    // the literal zero: a bare "0" not followed by a term
    {
        let save = sc.pos;
        if sc.peek() == Some('0') {
            sc.bump();
            if sc.at_end() {
                return Ok(HamelReal::zero());
            }
            sc.pos = save;
        }
    }

    let mut pairs = vec![sc.term()?];
    loop {
        sc.skip_ws();
        match sc.peek() {
            None => break,
            Some(op @ ('+' | '-')) => {
                sc.bump();
                let (b, q) = sc.term()?;
                pairs.push((b, if op == '-' { -q } else { q }));
            }
            Some(c) => return err(sc.pos, format!("expected '+', '-' or end, found '{c}'")),
        }
    }
    Ok(HamelReal::from_terms(pairs))
}

/// Canonical rendering; inverse of [`parse_real`].
pub fn format_real(x: &HamelReal) -> String {
    if x.is_zero() {
        return "0".to_owned();
    }
    let mut out = String::new();
    for (i, (b, q)) in x.terms().enumerate() {
        if i == 0 {
            out.push_str(&format_rational(q));
        } else if q.is_negative() {
            out.push_str(" - ");
            out.push_str(&format_rational(&-q));
        } else {
            out.push_str(" + ");
            out.push_str(&format_rational(q));
        }
        out.push('*');
        out.push_str(&b.to_string());
    }
    out
}

/// `n` or `n/d`, lowest terms (the form every parser here accepts).
pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for HamelReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_real(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn b(piece: u32, point: &str) -> BasisElement {
        BasisElement::new(piece, point).unwrap()
    }

    #[test]
    fn parses_zero() {
        assert!(parse_real("0").unwrap().is_zero());
        assert!(parse_real("  0  ").unwrap().is_zero());
    }

    #[test]
    fn parses_terms() {
        let x = parse_real("2*b(0,) - 1/3*b(2,01)").unwrap();
        assert_eq!(x.coeff(&b(0, "")), Some(&rat(2, 1)));
        assert_eq!(x.coeff(&b(2, "01")), Some(&rat(-1, 3)));
        assert_eq!(x.support_len(), 2);
    }

    #[test]
    fn rejects_non_canonical_point() {
        let e = parse_real("1*b(0,10)").unwrap_err();
        assert!(e.msg.contains("canonical"), "{e}");
    }

    #[test]
    fn rejects_garbage_with_position() {
        assert!(parse_real("").is_err());
        assert!(parse_real("1*b(0,1) % 2*b(1,)").is_err());
        assert!(parse_real("1/0*b(0,)").is_err());
        assert!(parse_real("b(0,)").is_err()); // coefficient is required
    }

    #[test]
    fn round_trips() {
        for src in [
            "0",
            "1*b(0,)",
            "-1/3*b(2,01)",
            "2*b(0,) - 1/3*b(2,01)",
            "5/6*b(1,1) + 7*b(3,011)",
        ] {
            let x = parse_real(src).unwrap();
            assert_eq!(parse_real(&format_real(&x)).unwrap(), x);
        }
        // canonical output re-parses to itself verbatim
        let x = parse_real("-1/2*b(9,) + 4*b(0,101)").unwrap();
        let printed = format_real(&x);
        assert_eq!(format_real(&parse_real(&printed).unwrap()), printed);
    }

    #[test]
    fn zero_coefficient_terms_vanish() {
        assert!(parse_real("0*b(0,)").unwrap().is_zero());
        assert!(parse_real("1*b(0,) - 1*b(0,)").unwrap().is_zero());
    }
}
