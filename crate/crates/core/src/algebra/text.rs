//! Text format for polynomials.
//!
//! A polynomial is a sum of terms joined by `+` or `-`; a term is
//! `[coeff][*]var^e*var^e...` where `coeff` is an integer or `p/q` and `^1`
//! may be omitted. Printing and parsing round-trip exactly.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::monomial::Monomial;
use super::poly::Polynomial;
use super::ring::PolynomialRing;
use super::scalar::{IntegralDomain, Rational};
use crate::error::{Error, Result};

impl<F: IntegralDomain> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, t) in self.terms().iter().enumerate() {
            let negative = t.coeff.is_negative();
            let abs = if negative { -t.coeff.clone() } else { t.coeff.clone() };
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono = format_monomial(self.ring(), &t.mono);
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

/// `x^2*y`, or the empty string for the unit monomial.
pub fn format_monomial(ring: &PolynomialRing, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(ring.name(i).to_string()),
            _ => parts.push(format!("{}^{}", ring.name(i), e)),
        }
    }
    parts.join("*")
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: &'a Arc<PolynomialRing>,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            position: self.pos,
            message: message.into(),
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

    fn digits(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("digit string parses"))
    }

    fn name(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        match self.src.get(self.pos) {
            Some(c) if c.is_ascii_alphabetic() || *c == b'_' => self.pos += 1,
            _ => return self.err("expected a variable name"),
        }
        while let Some(c) = self.src.get(self.pos) {
            if c.is_ascii_alphanumeric() || *c == b'_' || *c == b',' {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii name")
            .to_string())
    }

    fn factor(&mut self, exps: &mut [u32]) -> Result<()> {
        let start = self.pos;
        let name = self.name()?;
        let Some(i) = self.ring.var_index(&name) else {
            self.pos = start;
            return Err(Error::UnknownVariable(name));
        };
        let e = if self.peek() == Some(b'^') {
            self.pos += 1;
            let d = self.digits()?;
            u32::try_from(d).or_else(|_| self.err("exponent too large"))?
        } else {
            1
        };
        exps[i] = exps[i]
            .checked_add(e)
            .ok_or_else(|| Error::Parse {
                position: self.pos,
                message: "exponent overflow".into(),
            })?;
        Ok(())
    }

    fn term(&mut self) -> Result<(Rational, Monomial)> {
        let mut coeff = Rational::one();
        let mut exps = vec![0u32; self.ring.nvars()];
        let mut need_factor = true;
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            let num = self.digits()?;
            let den = if self.peek() == Some(b'/') {
                self.pos += 1;
                let d = self.digits()?;
                if d.is_zero() {
                    return self.err("zero denominator");
                }
                d
            } else {
                BigInt::one()
            };
            coeff = Rational::new(num, den);
            need_factor = false;
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    need_factor = true;
                }
                Some(c) if c.is_ascii_alphabetic() || c == b'_' => need_factor = true,
                _ => {}
            }
        }
        if need_factor {
            self.factor(&mut exps)?;
            while self.peek() == Some(b'*') {
                self.pos += 1;
                self.factor(&mut exps)?;
            }
        }
        Ok((coeff, Monomial::new(exps)))
    }

    fn polynomial(&mut self) -> Result<Polynomial<Rational>> {
        let mut terms = Vec::new();
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -Rational::one()
            }
            Some(b'+') => {
                self.pos += 1;
                Rational::one()
            }
            None => return self.err("empty polynomial"),
            _ => Rational::one(),
        };
        loop {
            let (c, m) = self.term()?;
            terms.push((sign * c, m));
            match self.peek() {
                None => break,
                Some(b'+') => sign = Rational::one(),
                Some(b'-') => sign = -Rational::one(),
                Some(_) => return self.err("expected `+`, `-` or end of input"),
            }
            self.pos += 1;
        }
        Ok(Polynomial::from_terms(self.ring, terms))
    }
}

/// Parses a polynomial with rational coefficients over `ring`.
pub fn parse(ring: &Arc<PolynomialRing>, text: &str) -> Result<Polynomial<Rational>> {
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
        ring,
    };
    parser.polynomial()
}

/// Parses a single monomial such as `x_1_0^2*x_2_1` (coefficient 1).
pub fn parse_monomial(ring: &Arc<PolynomialRing>, text: &str) -> Result<Monomial> {
    let p = parse(ring, text)?;
    match p.terms() {
        [t] if t.coeff.is_one() => Ok(t.mono.clone()),
        _ => Err(Error::Parse {
            position: 0,
            message: format!("`{text}` is not a monomial"),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::ratio;

    fn ring() -> Arc<PolynomialRing> {
        PolynomialRing::standard(
            ["y0", "y1", "y2", "x_1_0", "x_2_1"].iter().map(|s| s.to_string()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn parses_documented_examples() {
        let r = ring();
        let p = parse(&r, "y0*y2 - y1^2").unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.to_string(), "-y1^2 + y0*y2");
        let q = parse(&r, "3/2*x_1_0^2*x_2_1").unwrap();
        assert_eq!(q.terms()[0].coeff, ratio(3, 2));
        assert_eq!(q.to_string(), "3/2*x_1_0^2*x_2_1");
    }

    #[test]
    fn optional_star_and_constants() {
        let r = ring();
        assert_eq!(parse(&r, "2y0").unwrap(), parse(&r, "2*y0").unwrap());
        assert_eq!(parse(&r, " - 4/6 ").unwrap().to_string(), "-2/3");
        assert_eq!(parse(&r, "y0 - y0").unwrap().to_string(), "0");
        assert_eq!(parse(&r, "0").unwrap().to_string(), "0");
        assert_eq!(parse(&r, "y0^1*y0").unwrap().to_string(), "y0^2");
    }

    #[test]
    fn parse_errors() {
        let r = ring();
        assert!(matches!(parse(&r, "z"), Err(Error::UnknownVariable(_))));
        assert!(matches!(parse(&r, ""), Err(Error::Parse { .. })));
        assert!(matches!(parse(&r, "y0 +"), Err(Error::Parse { .. })));
        assert!(matches!(parse(&r, "1/0*y0"), Err(Error::Parse { .. })));
        assert!(matches!(parse(&r, "y0 y1"), Err(Error::Parse { .. })));
        assert!(parse_monomial(&r, "2*y0").is_err());
        assert!(parse_monomial(&r, "y0*y1").is_ok());
    }
}
