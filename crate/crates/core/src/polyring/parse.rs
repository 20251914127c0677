//! Recursive-descent parser for the polynomial text format.
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' uint)?
//! base   := rational | var | '(' expr ')'
//! var    := 'x' uint | 'x' | 'y' | 'z' | 'w'
//! rational := int ('/' uint)?
//! ```
//!
//! A leading sign on an expression is accepted. Whitespace is ignored;
//! implicit multiplication is rejected.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Monomial, Polynomial, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("variable x{index} at byte {offset} out of range for {nvars} variables")]
    VarOutOfRange { offset: usize, index: usize, nvars: usize },
    #[error("zero denominator at byte {offset}")]
    ZeroDenominator { offset: usize },
}

/// Parses and expands `text` into a polynomial in `nvars` variables.
pub fn parse_poly(text: &str, nvars: usize) -> Result<Polynomial, ParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, nvars };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.syntax("unexpected trailing input"));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    nvars: usize,
}

impl Parser<'_> {
    fn syntax(&self, message: &str) -> ParseError {
        ParseError::Syntax { offset: self.pos, message: message.to_string() }
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

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let negate = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let first = self.term()?;
        let mut acc = if negate { -first } else { first };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                Some(c) if c == b'(' || c == b'x' || c == b'y' || c == b'z' || c == b'w' || c.is_ascii_digit() => {
                    return Err(self.syntax("implicit multiplication is not allowed; use '*'"));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.base()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.uint()?;
            let e: u32 = e.try_into().map_err(|_| self.syntax("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Polynomial, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.syntax("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.uint()?;
                let mut value = Rational::from_integer(num);
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    let at = self.pos;
                    let den = self.uint()?;
                    if den.is_zero() {
                        return Err(ParseError::ZeroDenominator { offset: at });
                    }
                    value /= Rational::from_integer(den);
                }
                Ok(Polynomial::constant(self.nvars, value))
            }
            Some(c @ (b'x' | b'y' | b'z' | b'w')) => {
                let at = self.pos;
                self.pos += 1;
                let index = if c == b'x' && self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
                    let i = self.uint()?;
                    usize::try_from(i).map_err(|_| self.syntax("variable index too large"))?
                } else {
                    match c {
                        b'x' => 1,
                        b'y' => 2,
                        b'z' => 3,
                        _ => 4,
                    }
                };
                if index == 0 || index > self.nvars {
                    return Err(ParseError::VarOutOfRange { offset: at, index, nvars: self.nvars });
                }
                Ok(Polynomial::monomial(Monomial::var(self.nvars, index - 1), Rational::one()))
            }
            Some(_) => Err(self.syntax("expected a number, a variable or '('")),
            None => Err(self.syntax("unexpected end of input")),
        }
    }

    fn uint(&mut self) -> Result<BigInt, ParseError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.syntax("expected an unsigned integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse::<BigInt>().expect("ascii digits parse"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert!(parse_poly("0", 2).unwrap().is_zero());
        let f = parse_poly("x1^3 - x2^3", 2).unwrap();
        assert_eq!(f, Polynomial::from_int_terms(2, &[(&[3, 0], 1, 1), (&[0, 3], -1, 1)]));
        let f = parse_poly("(x1+x2)^2", 2).unwrap();
        assert_eq!(f, Polynomial::from_int_terms(2, &[(&[2, 0], 1, 1), (&[1, 1], 2, 1), (&[0, 2], 1, 1)]));
    }

    #[test]
    fn letters_and_rationals() {
        let f = parse_poly("x^2 + 1/2*y*z - w", 4).unwrap();
        assert_eq!(f.to_string(), "x1^2 + 1/2*x2*x3 - x4");
        assert_eq!(parse_poly(" - 3 / 4 ", 1).unwrap().constant_term(), Rational::new((-3).into(), 4.into()));
    }

    #[test]
    fn errors() {
        assert_eq!(parse_poly("x1 + x3", 2), Err(ParseError::VarOutOfRange { offset: 5, index: 3, nvars: 2 }));
        assert_eq!(parse_poly("1/0", 1), Err(ParseError::ZeroDenominator { offset: 2 }));
        assert!(matches!(parse_poly("2x", 1), Err(ParseError::Syntax { offset: 1, .. })));
        assert!(matches!(parse_poly("(x", 1), Err(ParseError::Syntax { offset: 2, .. })));
        assert!(matches!(parse_poly("x +", 1), Err(ParseError::Syntax { offset: 3, .. })));
        assert!(matches!(parse_poly("x0", 1), Err(ParseError::VarOutOfRange { index: 0, .. })));
    }
}
