//! Text form of polynomials: `+ - * / ^`, parentheses, rational literals,
//! variables `x` and `y`.

use alloc::string::{String, ToString};
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::RatPoly2;
use crate::rational::Rational;

/// Parse failure with the byte offset where it was detected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at position {}: {}", self.pos, self.msg)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

type PResult<T> = Result<T, ParseError>;

impl<'a> Parser<'a> {
    fn err<T>(&self, pos: usize, msg: &str) -> PResult<T> {
        Err(ParseError {
            pos,
            msg: msg.to_string(),
        })
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

    fn expr(&mut self) -> PResult<RatPoly2> {
        let mut acc = self.term()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == b'+' { acc + rhs } else { acc - rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> PResult<RatPoly2> {
        let mut acc = self.unary()?;
        while let Some(op @ (b'*' | b'/')) = self.peek() {
            let at = self.pos;
            self.pos += 1;
            let rhs = self.unary()?;
            if op == b'*' {
                acc = &acc * &rhs;
            } else {
                match rhs.constant_value() {
                    Some(c) if !c.is_zero() => acc = acc.scale(&c.recip()),
                    Some(_) => return self.err(at, "division by zero"),
                    None => return self.err(at, "division by a non-constant polynomial"),
                }
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> PResult<RatPoly2> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> PResult<RatPoly2> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let at = {
            self.skip_ws();
            self.pos
        };
        let negative = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            _ => false,
        };
        let Some(n) = self.integer() else {
            return self.err(at, "expected an integer exponent");
        };
        if negative && !n.is_zero() {
            return self.err(at, "negative exponent");
        }
        let Ok(e) = u32::try_from(n) else {
            return self.err(at, "exponent too large");
        };
        Ok(base.pow(e))
    }

    fn integer(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let s = core::str::from_utf8(&self.src[start..self.pos]).ok()?;
        BigInt::from_str(s).ok()
    }

    fn atom(&mut self) -> PResult<RatPoly2> {
        let at = {
            self.skip_ws();
            self.pos
        };
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                Ok(RatPoly2::x())
            }
            Some(b'y') => {
                self.pos += 1;
                Ok(RatPoly2::y())
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err(self.pos, "expected ')'");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer().unwrap();
                Ok(RatPoly2::constant(Rational::from_integer(n)))
            }
            Some(_) => self.err(at, "unexpected character"),
            None => self.err(at, "unexpected end of input"),
        }
    }
}

pub fn parse(s: &str) -> Result<RatPoly2, ParseError> {
    let mut p = Parser {
        src: s.as_bytes(),
        pos: 0,
    };
    let out = p.expr()?;
    if p.peek().is_some() {
        return p.err(p.pos, "unexpected trailing input");
    }
    Ok(out)
}

impl FromStr for RatPoly2 {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse(s)
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, i: u32, j: u32) -> fmt::Result {
    let mut first = true;
    for (v, e) in [('x', i), ('y', j)] {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        if e == 1 {
            write!(f, "{v}")?;
        } else {
            write!(f, "{v}^{e}")?;
        }
    }
    Ok(())
}

/// Terms are printed by descending power of `y`, then descending power of `x`.
impl fmt::Display for RatPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut terms: alloc::vec::Vec<_> = self.terms().collect();
        terms.sort_by_key(|&((i, j), _)| core::cmp::Reverse((j, i)));
        for (k, ((i, j), c)) in terms.into_iter().enumerate() {
            let mag = c.abs();
            if k == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let constant = i == 0 && j == 0;
            if constant || !mag.is_one() {
                f.write_str(&crate::rational::format_rational(&mag))?;
                if !constant {
                    f.write_str("*")?;
                }
            }
            write_monomial(f, i, j)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;

    #[test]
    fn round_trip_example() {
        let s = "y^3 - 20*x*y^2 + 16*y^2 + 45*x^3*y - 40*x^2*y - 27*x^5 + 25*x^4";
        let p: RatPoly2 = s.parse().unwrap();
        assert_eq!(p.num_terms(), 7);
        assert_eq!(format!("{p}"), s);
    }

    #[test]
    fn rationals_and_signs() {
        let p: RatPoly2 = "-1/2*x^2 + 3/4 - y".parse().unwrap();
        assert_eq!(format!("{p}"), "-y - 1/2*x^2 + 3/4");
        assert_eq!(format!("{}", RatPoly2::zero()), "0");
        let q: RatPoly2 = "(x - 1)*(x + 1)/3".parse().unwrap();
        assert_eq!(format!("{q}"), "1/3*x^2 - 1/3");
        assert_eq!("x^0".parse::<RatPoly2>().unwrap(), RatPoly2::one());
    }

    #[test]
    fn errors_carry_positions() {
        let e = "x + * y".parse::<RatPoly2>().unwrap_err();
        assert_eq!(e.pos, 4);
        let e = "x^-2".parse::<RatPoly2>().unwrap_err();
        assert_eq!((e.pos, e.msg.as_str()), (2, "negative exponent"));
        let e = "x / y".parse::<RatPoly2>().unwrap_err();
        assert_eq!(e.pos, 2);
        let e = "(x + 1".parse::<RatPoly2>().unwrap_err();
        assert_eq!(e.pos, 6);
        assert_eq!("x z".parse::<RatPoly2>().unwrap_err().pos, 2);
        assert_eq!("z".parse::<RatPoly2>().unwrap_err().msg, "unexpected character");
    }
}
