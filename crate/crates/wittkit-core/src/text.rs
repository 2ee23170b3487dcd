//! Shared polynomial text format.
//!
//! A polynomial is a sum of terms `c*t^k` (univariate) or
//! `c*x1^a1*...*xn^an` (multivariate); `c` is a rational literal `p/q` or an
//! integer, whitespace is insignificant, exponent `1`, exponent-`0` factors,
//! and coefficient `1` may be elided. `2t` is accepted as `2*t`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rat::Rat;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(crate) enum Var {
    /// The univariate variable `t`.
    T,
    /// `x<index>`, 1-based.
    X(usize),
}

pub(crate) struct Term {
    pub coeff: Rat,
    pub factors: Vec<(Var, i64)>,
}

struct Scanner<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn new(s: &'a str) -> Self {
        Scanner { bytes: s.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.bytes.get(self.pos).is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek();
        if b.is_some() {
            self.pos += 1;
        }
        b
    }

    fn digits(&mut self) -> Result<&'a str> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(Error::Parse(String::from("expected digits")));
        }
        Ok(core::str::from_utf8(&self.bytes[start..self.pos]).unwrap())
    }

    fn bigint(&mut self) -> Result<BigInt> {
        let s = self.digits()?;
        BigInt::from_str(s).map_err(|_| Error::Parse(String::from("bad integer literal")))
    }

    fn signed_exponent(&mut self) -> Result<i64> {
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let s = self.digits()?;
        let v: i64 = s
            .parse()
            .map_err(|_| Error::Parse(String::from("exponent out of range")))?;
        Ok(if neg { -v } else { v })
    }
}

pub(crate) fn parse_terms(s: &str) -> Result<Vec<Term>> {
    let mut sc = Scanner::new(s);
    let mut terms = Vec::new();
    sc.skip_ws();
    if sc.peek().is_none() {
        return Err(Error::Parse(String::from("empty polynomial")));
    }
    loop {
        sc.skip_ws();
        let mut sign = Rat::one();
        match sc.peek() {
            Some(b'+') => {
                sc.bump();
            }
            Some(b'-') => {
                sc.bump();
                sign = -sign;
            }
            _ => {}
        }
        let term = parse_term(&mut sc)?;
        terms.push(Term { coeff: sign * term.coeff, factors: term.factors });
        sc.skip_ws();
        match sc.peek() {
            None => return Ok(terms),
            Some(b'+') | Some(b'-') => continue,
            Some(b) => {
                return Err(Error::Parse(alloc::format!(
                    "unexpected character '{}'",
                    b as char
                )))
            }
        }
    }
}

fn parse_term(sc: &mut Scanner) -> Result<Term> {
    let mut coeff = Rat::one();
    let mut factors: Vec<(Var, i64)> = Vec::new();
    loop {
        sc.skip_ws();
        match sc.peek() {
            Some(b) if b.is_ascii_digit() => {
                let numer = sc.bigint()?;
                sc.skip_ws();
                let denom = if sc.peek() == Some(b'/') {
                    sc.bump();
                    sc.skip_ws();
                    let d = sc.bigint()?;
                    if d.is_zero() {
                        return Err(Error::Parse(String::from("zero denominator")));
                    }
                    d
                } else {
                    BigInt::one()
                };
                coeff *= Rat::new(numer, denom);
            }
            Some(b't') => {
                sc.bump();
                let exp = var_exponent(sc)?;
                push_factor(&mut factors, Var::T, exp);
            }
            Some(b'x') => {
                sc.bump();
                let idx: usize = sc
                    .digits()?
                    .parse()
                    .map_err(|_| Error::Parse(String::from("variable index out of range")))?;
                if idx == 0 {
                    return Err(Error::Parse(String::from("variable indices start at x1")));
                }
                let exp = var_exponent(sc)?;
                push_factor(&mut factors, Var::X(idx), exp);
            }
            _ => return Err(Error::Parse(String::from("expected a coefficient or variable"))),
        }
        sc.skip_ws();
        match sc.peek() {
            Some(b'*') => {
                sc.bump();
            }
            Some(b) if b.is_ascii_digit() || b == b't' || b == b'x' => {
                // implicit multiplication, e.g. "2t"
            }
            _ => break,
        }
    }
    Ok(Term { coeff, factors })
}

fn var_exponent(sc: &mut Scanner) -> Result<i64> {
    if sc.peek() == Some(b'^') {
        sc.bump();
        sc.signed_exponent()
    } else {
        Ok(1)
    }
}

fn push_factor(factors: &mut Vec<(Var, i64)>, var: Var, exp: i64) {
    for (v, e) in factors.iter_mut() {
        if *v == var {
            *e += exp;
            return;
        }
    }
    factors.push((var, exp));
}

/// Writes one rendered term: sign separator, coefficient (elided when `±1`
/// unless the term is constant), and the variable part.
pub(crate) fn write_term<F>(
    f: &mut fmt::Formatter<'_>,
    coeff: &Rat,
    first: &mut bool,
    vars: F,
    constant_term: bool,
) -> fmt::Result
where
    F: Fn(&mut fmt::Formatter<'_>) -> fmt::Result,
{
    let negative = coeff.is_negative();
    if *first {
        if negative {
            write!(f, "-")?;
        }
    } else if negative {
        write!(f, " - ")?;
    } else {
        write!(f, " + ")?;
    }
    *first = false;
    let mag = if negative { -coeff } else { coeff.clone() };
    if constant_term {
        write!(f, "{mag}")?;
    } else {
        if !mag.is_one() {
            write!(f, "{mag}*")?;
        }
        vars(f)?;
    }
    Ok(())
}
