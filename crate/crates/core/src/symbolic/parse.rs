//! `z(2)*z(3) - 2*z(2,3) + 1/2*z(5)`: symbols `z(k1,...,km)`, rational
//! literals, `+`, `-`, `*` and parentheses. Non-admissible symbols are
//! replaced by their regularized values.

use num_bigint::BigInt;
use num_traits::Zero;

use super::associator::regularized_mzv;
use super::polynomial::SymbolPolynomial;
use crate::error::{Error, Result};
use crate::scalar::Rational;
use crate::words::MzvIndex;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse"))
    }

    fn expr(&mut self) -> Result<SymbolPolynomial> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = acc + self.term()?;
            } else if self.eat(b'-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<SymbolPolynomial> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = acc * self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<SymbolPolynomial> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.factor()?)
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(b'z') => {
                self.pos += 1;
                self.expect(b'(')?;
                let mut ks = Vec::new();
                loop {
                    let k = self.integer()?;
                    match u32::try_from(k) {
                        Ok(k) if k >= 1 => ks.push(k),
                        _ => return self.err("index entries must be positive"),
                    }
                    if !self.eat(b',') {
                        break;
                    }
                }
                self.expect(b')')?;
                let ix = MzvIndex::new(ks).map_err(|e| Error::Parse { pos: self.pos, msg: e.to_string() })?;
                Ok(regularized_mzv(&ix).value)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                let d = if self.eat(b'/') { self.integer()? } else { BigInt::from(1) };
                if d.is_zero() {
                    return self.err("zero denominator");
                }
                Ok(SymbolPolynomial::constant(Rational::new(n, d)))
            }
            Some(c) => self.err(format!("unexpected '{}'", c as char)),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses an expression in ζ_p-symbols.
pub fn parse_expression(s: &str) -> Result<SymbolPolynomial> {
    let mut p = Parser { src: s.as_bytes(), pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    #[test]
    fn grammar() {
        let e = parse_expression("z(2)*z(2) - 2*z(2,2) - 4 * z(1,3)").unwrap();
        assert_eq!(e.weight(), Some(4));
        assert_eq!(e.terms().len(), 3);
        let half = parse_expression("1/2*z(3) + 1/2 * z(3)").unwrap();
        assert_eq!(half, parse_expression("z(3)").unwrap());
        assert_eq!(parse_expression("-(z(2) - z(2))").unwrap(), SymbolPolynomial::zero());
        assert_eq!(parse_expression("3/4").unwrap(), SymbolPolynomial::constant(ratio(3, 4)));
    }

    #[test]
    fn regularizes_non_admissible_symbols() {
        assert_eq!(parse_expression("z(2,1)").unwrap(), parse_expression("-2*z(1,2)").unwrap());
        assert!(parse_expression("z(1)").unwrap().is_zero());
    }

    #[test]
    fn errors_carry_positions() {
        assert!(matches!(parse_expression("z(2"), Err(Error::Parse { pos: 3, .. })));
        assert!(matches!(parse_expression("z(0)"), Err(Error::Parse { .. })));
        assert!(matches!(parse_expression("1/0"), Err(Error::Parse { .. })));
        assert!(matches!(parse_expression("z(2) z(3)"), Err(Error::Parse { .. })));
    }
}
