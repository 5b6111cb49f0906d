//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := coeff ['*' factor ('*' factor)*] | factor ('*' factor)*
//! coeff  := integer ['/' integer]
//! factor := atom ['^' integer] | '(' expr ')' ['^' integer]
//! atom   := var                      (domain expressions)
//!         | 'H' '(' var ')'          (codomain expressions)
//! ```
//!
//! `*` is mandatory between factors; `xy` is read as a single (unknown)
//! variable name, never as a product.

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use super::{CommPoly, FreePoly, Mode, Variable};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unknown variable `{name}` at {pos}")]
    UnknownVariable { pos: usize, name: String },
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Atoms {
    Domain,
    Codomain,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    mode: Mode,
    atoms: Atoms,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, mode: Mode, atoms: Atoms) -> Self {
        Parser { src: text.as_bytes(), pos: 0, mode, atoms }
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

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, b: u8) -> Result<(), ParseError> {
        if self.eat(b) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{}`", b as char)))
        }
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::Syntax { pos: self.pos, message: message.into() }
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse"))
    }

    fn small_integer(&mut self) -> Result<u32, ParseError> {
        let pos = self.pos;
        let n = self.integer()?;
        u32::try_from(n).map_err(|_| ParseError::Syntax { pos, message: "exponent too large".into() })
    }

    fn ident(&mut self) -> Result<(usize, String), ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected variable"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        Ok((start, s.to_string()))
    }

    fn variable(&mut self) -> Result<Variable, ParseError> {
        let (pos, name) = self.ident()?;
        Variable::from_name(&name).ok_or(ParseError::UnknownVariable { pos, name })
    }

    fn atom(&mut self) -> Result<FreePoly, ParseError> {
        match self.atoms {
            Atoms::Domain => Ok(FreePoly::var(self.variable()?, self.mode)),
            Atoms::Codomain => {
                let (pos, name) = self.ident()?;
                if name != "H" {
                    return Err(ParseError::Syntax { pos, message: format!("expected `H(<var>)`, found `{name}`") });
                }
                self.expect(b'(')?;
                let v = self.variable()?;
                self.expect(b')')?;
                Ok(FreePoly::var(v, self.mode))
            }
        }
    }

    fn factor(&mut self) -> Result<FreePoly, ParseError> {
        let base = if self.eat(b'(') {
            let e = self.expr()?;
            self.expect(b')')?;
            e
        } else {
            self.atom()?
        };
        if self.eat(b'^') {
            let k = self.small_integer()?;
            Ok(base.pow(k))
        } else {
            Ok(base)
        }
    }

    fn term(&mut self) -> Result<FreePoly, ParseError> {
        let lead = match self.peek() {
            Some(b) if b.is_ascii_digit() => {
                let num = self.integer()?;
                let den = if self.eat(b'/') { self.integer()? } else { BigInt::from(1) };
                if den == BigInt::from(0) {
                    return Err(self.error("zero denominator"));
                }
                let c = BigRational::new(num, den);
                let mut acc = FreePoly::one(self.mode).scalar_mul(&c);
                if self.eat(b'*') {
                    acc = acc.mul(&self.factor()?).expect("same mode");
                } else {
                    return Ok(acc);
                }
                acc
            }
            _ => self.factor()?,
        };
        let mut acc = lead;
        while self.eat(b'*') {
            acc = acc.mul(&self.factor()?).expect("same mode");
        }
        Ok(acc)
    }

    fn expr(&mut self) -> Result<FreePoly, ParseError> {
        let negate = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let first = self.term()?;
        let mut acc = if negate { first.neg() } else { first };
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.term()?).expect("same mode");
            } else if self.eat(b'-') {
                acc = acc.sub(&self.term()?).expect("same mode");
            } else {
                return Ok(acc);
            }
        }
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error(format!("unexpected `{}`", self.src[self.pos] as char)))
        }
    }
}

/// Parses a domain expression such as `(x+y)^3` or `2*x*y - y*x`.
pub fn parse_expr(text: &str, mode: Mode) -> Result<FreePoly, ParseError> {
    let mut p = Parser::new(text, mode, Atoms::Domain);
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}

/// Parses a codomain expression over `H(<var>)` symbols.
pub fn parse_h_expr(text: &str) -> Result<CommPoly, ParseError> {
    let mut p = Parser::new(text, Mode::Commutative, Atoms::Codomain);
    let e = p.expr()?;
    p.finish()?;
    Ok(CommPoly::from_poly(e))
}

/// Parses `h(<expr>) = <expr in H symbols>`.
pub(crate) fn parse_identity_text(text: &str, mode: Mode) -> Result<(FreePoly, CommPoly), ParseError> {
    let mut p = Parser::new(text, mode, Atoms::Domain);
    let (pos, head) = p.ident()?;
    if head != "h" {
        return Err(ParseError::Syntax { pos, message: format!("expected `h(`, found `{head}`") });
    }
    p.expect(b'(')?;
    let lhs = p.expr()?;
    p.expect(b')')?;
    p.expect(b'=')?;
    p.atoms = Atoms::Codomain;
    p.mode = Mode::Commutative;
    let rhs = p.expr()?;
    p.finish()?;
    Ok((lhs, CommPoly::from_poly(rhs)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::{int, Word};

    const NC: Mode = Mode::NonCommutative;

    #[test]
    fn cube_is_single_word() {
        let p = parse_expr("x^3", NC).unwrap();
        assert_eq!(p.len(), 1);
        let w = Word::new(vec![Variable::X; 3], NC);
        assert_eq!(p.coefficient(&w), int(1));
    }

    #[test]
    fn cube_of_sum_has_all_eight_words() {
        let p = parse_expr("(x+y)^3", NC).unwrap();
        assert_eq!(p.len(), 8);
        // brute-force oracle: every binary word of length 3
        for bits in 0..8u32 {
            let letters = (0..3).map(|i| if bits >> (2 - i) & 1 == 1 { Variable::Y } else { Variable::X }).collect();
            assert_eq!(p.coefficient(&Word::new(letters, NC)), int(1));
        }
    }

    #[test]
    fn explicit_coefficients() {
        let p = parse_expr("2*x*y - y*x", NC).unwrap();
        assert_eq!(p.coefficient(&Word::new(vec![Variable::X, Variable::Y], NC)), int(2));
        assert_eq!(p.coefficient(&Word::new(vec![Variable::Y, Variable::X], NC)), int(-1));
        assert_eq!(p.len(), 2);
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(parse_expr("x*q", NC), Err(ParseError::UnknownVariable { pos: 2, name: "q".into() }));
        assert!(matches!(parse_expr("xy", NC), Err(ParseError::UnknownVariable { pos: 0, .. })));
        assert!(matches!(parse_expr("x +", NC), Err(ParseError::Syntax { pos: 3, .. })));
        assert!(matches!(parse_expr("2 x", NC), Err(ParseError::Syntax { pos: 2, .. })));
        assert!(matches!(parse_expr("(x", NC), Err(ParseError::Syntax { .. })));
        assert!(parse_expr("x*2", NC).is_err());
    }

    #[test]
    fn codomain_symbols() {
        let r = parse_h_expr("3*H(x)^2*H(y) - H(y)*H(x)^2").unwrap();
        assert_eq!(r.to_string(), "2*H(x)^2*H(y)");
        assert!(parse_h_expr("x").is_err());
    }

    #[test]
    fn identity_text() {
        let (l, r) = parse_identity_text("h(x*y*z) = H(x)*H(y)*H(z)", NC).unwrap();
        assert_eq!(l.to_string(), "x*y*z");
        assert_eq!(r.to_string(), "H(x)*H(y)*H(z)");
        assert!(parse_identity_text("g(x) = H(x)", NC).is_err());
    }

    #[test]
    fn constants() {
        assert_eq!(parse_expr("0", NC).unwrap(), FreePoly::zero(NC));
        assert_eq!(parse_expr("1", NC).unwrap(), FreePoly::one(NC));
        assert_eq!(parse_expr("x^0", NC).unwrap(), FreePoly::one(NC));
    }
}
