//! Parser for integer polynomials in `x`.
//!
//! ```text
//! expr   = term { ("+" | "-") term } ;
//! term   = unary { ["*"] unary } ;          (* juxtaposition multiplies *)
//! unary  = ("+" | "-") unary | power ;
//! power  = atom [ "^" digits ] ;
//! atom   = digits | "x" | "(" expr ")" ;
//! ```
//!
//! Whitespace is ignored between tokens.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::zx::IntPoly;

const MAX_EXPONENT: u32 = 100_000;

pub fn parse_poly(src: &str) -> Result<IntPoly> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected character"));
    }
    Ok(e)
}

/// Parse a decimal integer with optional sign.
pub fn parse_int(src: &str) -> Result<BigInt> {
    src.trim().parse::<BigInt>().map_err(|_| Error::Parse {
        pos: 0,
        msg: format!("not an integer: {src:?}"),
    })
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        let found = match self.src.get(self.pos) {
            Some(c) => format!("{:?}", *c as char),
            None => "end of input".to_string(),
        };
        Error::Parse {
            pos: self.pos,
            msg: format!("{msg} (found {found})"),
        }
    }

    fn skip_ws(&mut self) {
        while self
            .src
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_whitespace())
        {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<IntPoly> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            acc = if c == b'+' { &acc + &t } else { &acc - &t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<IntPoly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(c) if c.is_ascii_digit() || c == b'x' || c == b'(' => {
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<IntPoly> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<IntPoly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let digits = self
                .digits()
                .ok_or_else(|| self.error("expected exponent"))?;
            let k: u32 =
                digits
                    .parse()
                    .ok()
                    .filter(|k| *k <= MAX_EXPONENT)
                    .ok_or(Error::Parse {
                        pos: start,
                        msg: format!("exponent {digits} is too large"),
                    })?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<IntPoly> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                Ok(IntPoly::x())
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits().unwrap();
                Ok(IntPoly::constant(d.parse().unwrap()))
            }
            _ => Err(self.error("expected a number, 'x' or '('")),
        }
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(src: &str) -> String {
        parse_poly(src).unwrap().to_string()
    }

    #[test]
    fn verbatim_forms() {
        assert_eq!(s("x^5+3x^2+144"), "x^5 + 3*x^2 + 144");
        assert_eq!(s("x^5 + 3 * x^2 + 144"), "x^5 + 3*x^2 + 144");
        assert_eq!(s("x^5-53"), "x^5 - 53");
        assert_eq!(s("x+7"), "x + 7");
        assert_eq!(s("(x+1)^2"), "x^2 + 2*x + 1");
        assert_eq!(s("-(x - 2)(x + 2)"), "-x^2 + 4");
        assert_eq!(s("2^3 x"), "8*x");
        assert_eq!(s("x^27 + 81x + 80"), "x^27 + 81*x + 80");
        assert_eq!(s("0"), "0");
    }

    #[test]
    fn errors_carry_positions() {
        assert!(matches!(parse_poly("x^"), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(
            parse_poly("x + y"),
            Err(Error::Parse { pos: 4, .. })
        ));
        assert!(matches!(
            parse_poly("(x+1"),
            Err(Error::Parse { pos: 4, .. })
        ));
        assert!(matches!(parse_poly(""), Err(Error::Parse { pos: 0, .. })));
        assert!(parse_poly("x^999999999").is_err());
    }

    #[test]
    fn integers() {
        assert_eq!(parse_int(" -53 ").unwrap(), BigInt::from(-53));
        assert!(parse_int("5x").is_err());
    }
}
