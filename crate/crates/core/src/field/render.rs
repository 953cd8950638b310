//! Text form for Laurent polynomials and rational functions, with a parser
//! for the same grammar. Rendering then parsing is the identity.
//!
//! Grammar (whitespace allowed between tokens):
//!
//! ```text
//! ratfunc  := laurent | "(" laurent ")" "/" "(" laurent ")"
//! laurent  := ["-"] term (("+" | "-") term)*
//! term     := coeff | coeff "*" mono | mono
//! mono     := "t" "^" int
//! coeff    := rational | zmono | "(" cycpoly ")"
//! cycpoly  := ["-"] cterm (("+" | "-") cterm)*
//! cterm    := rational | rational "*" zmono | zmono
//! zmono    := "z" | "z" "^" uint
//! rational := uint | uint "/" uint
//! ```
//!
//! `t` is the formal variable; `z` denotes the primitive k-th root of unity
//! for the order k supplied to the parser and renderer.

use super::cyclotomic::Cyclotomic;
use super::laurent::LaurentPoly;
use super::ratfunc::{RatFunc, TorsionValue};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("parse error at byte {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

/// One rendered summand with the sign split off, so the caller can join
/// terms with " + " / " - ".
fn signed_rational_string(q: &BigRational) -> (bool, String) {
    let neg = q.is_negative();
    let a = q.abs();
    let s = if a.denom().is_one() {
        a.numer().to_string()
    } else {
        format!("{}/{}", a.numer(), a.denom())
    };
    (neg, s)
}

fn render_cyclotomic_inner(c: &Cyclotomic, k: u32) -> String {
    let v = c
        .demote_to(k)
        .unwrap_or_else(|| panic!("coefficient does not lie in Q(zeta_{k})"));
    let mut out = String::new();
    let mut first = true;
    for (i, q) in v.coeffs().iter().enumerate() {
        if q.is_zero() {
            continue;
        }
        let (neg, mag) = signed_rational_string(q);
        let body = if i == 0 {
            mag
        } else {
            let z = if i == 1 { "z".to_string() } else { format!("z^{i}") };
            if mag == "1" {
                z
            } else {
                format!("{mag}*{z}")
            }
        };
        if first {
            if neg {
                out.push('-');
            }
            first = false;
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if first {
        out.push('0');
    }
    out
}

/// (sign, magnitude) for one Laurent term's coefficient: rationals render
/// bare with the sign split off, anything else goes in parentheses as a
/// polynomial in z. A magnitude of None means an implicit 1, dropped in
/// front of t^n.
fn coeff_parts(c: &Cyclotomic, k: u32) -> (bool, Option<String>) {
    match c.demote_to(k).and_then(|v| v.as_rational()) {
        Some(q) => {
            let (neg, mag) = signed_rational_string(&q);
            (neg, if mag == "1" { None } else { Some(mag) })
        }
        None => (false, Some(format!("({})", render_cyclotomic_inner(c, k)))),
    }
}

pub fn render_laurent(p: &LaurentPoly, k: u32) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    let mut first = true;
    for (e, c) in p.terms() {
        let (neg, coeff_str) = coeff_parts(c, k);
        let body = match (coeff_str, e) {
            (None, 0) => "1".to_string(),
            (None, e) => format!("t^{e}"),
            (Some(s), 0) => s,
            (Some(s), e) => format!("{s}*t^{e}"),
        };
        if first {
            if neg {
                out.push('-');
            }
            first = false;
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    out
}

pub fn render_ratfunc(x: &RatFunc, k: u32) -> String {
    if x.is_laurent() {
        render_laurent(x.numerator(), k)
    } else {
        format!(
            "({})/({})",
            render_laurent(x.numerator(), k),
            render_laurent(x.denominator(), k)
        )
    }
}

pub fn render_torsion_value(t: &TorsionValue) -> String {
    render_ratfunc(t.value(), t.order())
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    order: u32,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, order: u32) -> Self {
        Parser {
            src: src.as_bytes(),
            pos: 0,
            order,
        }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn parse_uint(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected a number");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn parse_int(&mut self) -> Result<BigInt, ParseError> {
        let neg = self.eat(b'-');
        let n = self.parse_uint()?;
        Ok(if neg { -n } else { n })
    }

    fn parse_rational(&mut self) -> Result<BigRational, ParseError> {
        let numer = self.parse_uint()?;
        if self.eat(b'/') {
            let denom = self.parse_uint()?;
            if denom.is_zero() {
                return self.err("zero denominator in rational");
            }
            Ok(BigRational::new(numer, denom))
        } else {
            Ok(BigRational::from_integer(numer))
        }
    }

    fn parse_zmono(&mut self) -> Result<Cyclotomic, ParseError> {
        self.expect(b'z')?;
        let e = if self.eat(b'^') {
            let n = self.parse_uint()?;
            i64::try_from(&n).map_err(|_| ParseError {
                position: self.pos,
                message: "exponent too large".into(),
            })?
        } else {
            1
        };
        Ok(Cyclotomic::zeta_pow(self.order, e))
    }

    fn parse_cterm(&mut self) -> Result<Cyclotomic, ParseError> {
        match self.peek() {
            Some(b'z') => self.parse_zmono(),
            Some(c) if c.is_ascii_digit() => {
                let q = self.parse_rational()?;
                if self.eat(b'*') {
                    let z = self.parse_zmono()?;
                    Ok(z.mul(&Cyclotomic::from_rational(q)))
                } else {
                    Ok(Cyclotomic::from_rational(q))
                }
            }
            _ => self.err("expected a coefficient term"),
        }
    }

    fn parse_cycpoly(&mut self) -> Result<Cyclotomic, ParseError> {
        let mut acc = Cyclotomic::zero();
        let mut neg = self.eat(b'-');
        loop {
            let t = self.parse_cterm()?;
            acc = if neg { acc.sub(&t) } else { acc.add(&t) };
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    neg = false;
                }
                Some(b'-') => {
                    self.pos += 1;
                    neg = true;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn parse_tmono(&mut self) -> Result<i64, ParseError> {
        self.expect(b't')?;
        self.expect(b'^')?;
        let n = self.parse_int()?;
        i64::try_from(&n).map_err(|_| ParseError {
            position: self.pos,
            message: "exponent too large".into(),
        })
    }

    fn parse_term(&mut self) -> Result<LaurentPoly, ParseError> {
        match self.peek() {
            Some(b't') => {
                let e = self.parse_tmono()?;
                Ok(LaurentPoly::term(Cyclotomic::one(), e))
            }
            Some(b'(') => {
                self.pos += 1;
                let c = self.parse_cycpoly()?;
                self.expect(b')')?;
                let e = if self.eat(b'*') { self.parse_tmono()? } else { 0 };
                Ok(LaurentPoly::term(c, e))
            }
            Some(b'z') => {
                let c = self.parse_zmono()?;
                let e = if self.eat(b'*') { self.parse_tmono()? } else { 0 };
                Ok(LaurentPoly::term(c, e))
            }
            Some(c) if c.is_ascii_digit() => {
                let q = self.parse_rational()?;
                let e = if self.eat(b'*') { self.parse_tmono()? } else { 0 };
                Ok(LaurentPoly::term(Cyclotomic::from_rational(q), e))
            }
            _ => self.err("expected a term"),
        }
    }

    fn parse_laurent(&mut self) -> Result<LaurentPoly, ParseError> {
        let mut acc = LaurentPoly::zero();
        let mut neg = self.eat(b'-');
        loop {
            let t = self.parse_term()?;
            acc = if neg { acc.sub(&t) } else { acc.add(&t) };
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    neg = false;
                }
                Some(b'-') => {
                    self.pos += 1;
                    neg = true;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    /// Whether the input is "(...)/(...)" at top level.
    fn looks_like_quotient(&self) -> bool {
        let mut i = self.pos;
        let n = self.src.len();
        while i < n && self.src[i].is_ascii_whitespace() {
            i += 1;
        }
        if i >= n || self.src[i] != b'(' {
            return false;
        }
        let mut depth = 0usize;
        while i < n {
            match self.src[i] {
                b'(' => depth += 1,
                b')' => {
                    depth -= 1;
                    if depth == 0 {
                        i += 1;
                        while i < n && self.src[i].is_ascii_whitespace() {
                            i += 1;
                        }
                        return i < n && self.src[i] == b'/';
                    }
                }
                _ => {}
            }
            i += 1;
        }
        false
    }
}

pub fn parse_laurent(s: &str, order: u32) -> Result<LaurentPoly, ParseError> {
    let mut p = Parser::new(s, order);
    let v = p.parse_laurent()?;
    if !p.at_end() {
        return p.err("unexpected trailing input");
    }
    Ok(v)
}

pub fn parse_ratfunc(s: &str, order: u32) -> Result<RatFunc, ParseError> {
    let mut p = Parser::new(s, order);
    if p.looks_like_quotient() {
        p.expect(b'(')?;
        let num = p.parse_laurent()?;
        p.expect(b')')?;
        p.expect(b'/')?;
        p.expect(b'(')?;
        let den = p.parse_laurent()?;
        p.expect(b')')?;
        if !p.at_end() {
            return p.err("unexpected trailing input");
        }
        if den.is_zero() {
            return p.err("zero denominator");
        }
        Ok(RatFunc::new(num, den))
    } else {
        let num = p.parse_laurent()?;
        if !p.at_end() {
            return p.err("unexpected trailing input");
        }
        Ok(RatFunc::from_laurent(num))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> Cyclotomic {
        Cyclotomic::from_integer(n)
    }

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|&(e, c)| (e, int(c))))
    }

    #[test]
    fn renders_integer_laurent() {
        let p = lp(&[(-2, 3), (0, -1), (5, 1)]);
        assert_eq!(render_laurent(&p, 1), "3*t^-2 - 1 + t^5");
        assert_eq!(render_laurent(&LaurentPoly::zero(), 1), "0");
        assert_eq!(render_laurent(&lp(&[(0, -7)]), 1), "-7");
        assert_eq!(render_laurent(&lp(&[(1, -1)]), 1), "-t^1");
    }

    #[test]
    fn renders_cyclotomic_coefficients() {
        let c = Cyclotomic::zeta(3).mul(&int(2)).add(&int(1)); // 1 + 2ζ_3
        let p = LaurentPoly::term(c, 4);
        assert_eq!(render_laurent(&p, 3), "(1 + 2*z)*t^4");
        let m = LaurentPoly::term(Cyclotomic::zeta_pow(5, 2).neg(), 0);
        assert_eq!(render_laurent(&m, 5), "(-z^2)");
    }

    #[test]
    fn renders_quotients() {
        let x = RatFunc::new(lp(&[(0, 1)]), lp(&[(0, 2), (1, 1)]));
        assert_eq!(render_ratfunc(&x, 1), "(1/2)/(1 + 1/2*t^1)");
        let y = RatFunc::from_laurent(lp(&[(0, 1), (1, 1)]));
        assert_eq!(render_ratfunc(&y, 1), "1 + t^1");
    }

    #[test]
    fn parses_what_it_renders() {
        let k = 12;
        let samples = vec![
            RatFunc::zero(),
            RatFunc::from_integer(-3),
            RatFunc::from_laurent(lp(&[(-2, 3), (0, -1), (5, 1)])),
            RatFunc::from_laurent(LaurentPoly::from_terms(vec![
                (0, Cyclotomic::zeta(3)),
                (2, Cyclotomic::zeta_pow(12, 7).neg()),
                (-1, Cyclotomic::from_rational(num_rational::BigRational::new(
                    num_bigint::BigInt::from(-5),
                    num_bigint::BigInt::from(3),
                ))),
            ])),
            RatFunc::new(lp(&[(0, 1), (3, -2)]), lp(&[(0, 3), (1, 1), (2, 1)])),
            RatFunc::new(
                LaurentPoly::from_terms(vec![(0, Cyclotomic::zeta(4))]),
                lp(&[(0, 1), (1, -1)]),
            ),
        ];
        for x in samples {
            let s = render_ratfunc(&x, k);
            let back = parse_ratfunc(&s, k).unwrap_or_else(|e| panic!("{s}: {e}"));
            assert_eq!(back, x, "round trip through {s:?}");
        }
    }

    #[test]
    fn parses_handwritten_forms() {
        assert_eq!(parse_ratfunc("t^2", 1).unwrap(), RatFunc::from_laurent(lp(&[(2, 1)])));
        assert_eq!(
            parse_ratfunc(" - 2*t^-1 + 1/2 ", 1).unwrap(),
            RatFunc::from_laurent(LaurentPoly::from_terms(vec![
                (-1, int(-2)),
                (0, Cyclotomic::from_rational(num_rational::BigRational::new(
                    num_bigint::BigInt::from(1),
                    num_bigint::BigInt::from(2),
                ))),
            ]))
        );
        // z means the parse-order root of unity
        let v = parse_ratfunc("z^3", 6).unwrap();
        assert_eq!(v, RatFunc::from_cyclotomic(Cyclotomic::zeta_pow(6, 3)));
        assert_eq!(v, RatFunc::from_integer(-1));
        // quotient with redundant factor still lands in canonical form
        let q = parse_ratfunc("(t^2 - 1)/(t^1 - 1)", 1).unwrap();
        assert_eq!(q, RatFunc::from_laurent(lp(&[(0, 1), (1, 1)])));
        // sums collapse duplicate exponents
        assert_eq!(parse_ratfunc("t^3 - t^3", 1).unwrap(), RatFunc::zero());
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(parse_ratfunc("", 1).is_err());
        assert!(parse_ratfunc("t^", 1).is_err());
        assert!(parse_ratfunc("1 +", 1).is_err());
        assert!(parse_ratfunc("(1)/(0)", 1).is_err());
        assert!(parse_ratfunc("t^2 t^3", 1).is_err());
        assert!(parse_ratfunc("3..5", 1).is_err());
        assert!(parse_ratfunc("^2", 1).is_err());
    }
}
