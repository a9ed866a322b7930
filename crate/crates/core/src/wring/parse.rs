//! Text grammar for polynomials.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*      divisor must be a nonzero constant
//! factor := ('+' | '-') factor | atom ('^' integer)?
//! atom   := integer | variable | '(' expr ')'
//! ```
//!
//! Whitespace is insignificant. Printing with `Display` and parsing back is
//! the identity.

use num_bigint::BigInt;

use super::poly::{Monomial, Poly, Vars};
use crate::error::{Error, Result};
use crate::field::Field;

struct Parser<'a, V: Vars> {
    src: &'a [u8],
    pos: usize,
    field: Field,
    _vars: std::marker::PhantomData<V>,
}

pub fn parse_poly<V: Vars>(src: &str, field: Field) -> Result<Poly<V>> {
    let mut p = Parser::<V> { src: src.as_bytes(), pos: 0, field, _vars: Default::default() };
    p.skip_ws();
    if p.pos == p.src.len() {
        return Err(p.err("empty input"));
    }
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    let d = out.homogeneous_degree();
    Ok(match d {
        Some(d) => out.with_degree(d).expect("degree was just computed"),
        None => out,
    })
}

impl<V: Vars> Parser<'_, V> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Poly<V>> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == b'+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly<V>> {
        let mut acc = self.factor()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let at = self.pos;
            let rhs = self.factor()?;
            if c == b'*' {
                acc = &acc * &rhs;
            } else {
                let divisor = match rhs.terms().next() {
                    Some((m, k)) if rhs.num_terms() == 1 && m.is_one() => k.clone(),
                    _ => return Err(Error::Parse { pos: at, msg: "divisor must be a nonzero constant".into() }),
                };
                let inv = divisor.inv().ok_or_else(|| Error::Parse { pos: at, msg: "division by zero".into() })?;
                acc = acc.scale(&inv);
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly<V>> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.factor()?.neg())
            }
            Some(b'+') => {
                self.pos += 1;
                self.factor()
            }
            _ => {
                let base = self.atom()?;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    self.skip_ws();
                    let (digits, at) = self.digits();
                    if digits.is_empty() {
                        return Err(self.err("expected exponent"));
                    }
                    let e: u32 =
                        digits.parse().map_err(|_| Error::Parse { pos: at, msg: "exponent too large".into() })?;
                    return Ok(base.pow(e));
                }
                Ok(base)
            }
        }
    }

    fn digits(&mut self) -> (String, usize) {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (String::from_utf8_lossy(&self.src[start..self.pos]).into_owned(), start)
    }

    fn atom(&mut self) -> Result<Poly<V>> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let (digits, _) = self.digits();
                let n: BigInt = digits.parse().expect("ascii digits");
                Ok(Poly::constant(self.field.from_bigint(&n)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                match V::NAMES.iter().position(|n| *n == name) {
                    Some(i) => Ok(Poly::monomial(Monomial::var(i), self.field.one())),
                    None => Err(Error::Parse { pos: start, msg: format!("unknown variable '{name}'") }),
                }
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wring::{WPoly, Wps};

    fn q(s: &str) -> WPoly {
        parse_poly::<Wps>(s, Field::Rational).unwrap()
    }

    #[test]
    fn parses_and_prints() {
        let p = q("Z0^2 + Y0^3 + Y1^3 + X0^6");
        assert_eq!(p.to_string(), "X0^6 + Y0^3 + Y1^3 + Z0^2");
        assert_eq!(p.degree_tag(), Some(6));
        let r = q("  -3/2 * X0 * U0 - (Y0 - Y1)^2*X0^2 ");
        assert_eq!(r, q(&r.to_string()));
        assert_eq!(r.coeff(&Monomial::new(&[1, 0, 0, 0, 1])).to_string(), "-3/2");
    }

    #[test]
    fn errors_report_position() {
        match parse_poly::<Wps>("X0 + W1", Field::Rational) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("{other:?}"),
        }
        match parse_poly::<Wps>("X0 / Y0", Field::Rational) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!(parse_poly::<Wps>("X0 +", Field::Rational).is_err());
        assert!(parse_poly::<Wps>("", Field::Rational).is_err());
        assert!(parse_poly::<Wps>("(X0", Field::Rational).is_err());
    }

    #[test]
    fn prime_field_parsing_reduces() {
        let f7 = Field::prime(7).unwrap();
        let p = parse_poly::<Wps>("-X0 + 1/2*Y0", f7).unwrap();
        assert_eq!(p.to_string(), "6*X0 + 4*Y0");
        assert!(parse_poly::<Wps>("X0/7", f7).is_err());
    }
}
