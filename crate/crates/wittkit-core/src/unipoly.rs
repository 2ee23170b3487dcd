//! Dense univariate polynomials over exact rationals.
//!
//! Degrees in this artifact stay small (a few hundred), so a dense coefficient
//! vector indexed by exponent is the right representation. The zero polynomial
//! is the empty vector and its degree is `None`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};
use core::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rat::{self, Rat};
use crate::text;

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct UniPoly {
    coeffs: Vec<Rat>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly::constant(Rat::one())
    }

    /// The variable `t`.
    pub fn var() -> Self {
        UniPoly::monomial(Rat::one(), 1)
    }

    pub fn constant(c: Rat) -> Self {
        UniPoly::from_coeffs(vec![c])
    }

    /// `c·t^k`.
    pub fn monomial(c: Rat, k: usize) -> Self {
        if c.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = c;
        UniPoly { coeffs }
    }

    /// Coefficients indexed by exponent; trailing zeros are trimmed.
    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    /// Convenience constructor from small integers, lowest exponent first.
    pub fn from_ints(cs: &[i64]) -> Self {
        UniPoly::from_coeffs(cs.iter().map(|&c| rat::int(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` is the degree of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn scaled(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return UniPoly::zero();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Monic normalization; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => UniPoly::zero(),
            Some(lc) => self.scaled(&lc.recip()),
        }
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * rat::int(k as i64))
            .collect();
        UniPoly::from_coeffs(coeffs)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = UniPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// `self(b(t))` by Horner's scheme.
    pub fn compose(&self, b: &UniPoly) -> Self {
        let mut acc = UniPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * b) + &UniPoly::constant(c.clone());
        }
        acc
    }

    /// Exact `(quotient, remainder)` with `deg r < deg b`.
    pub fn divrem(&self, b: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        let db = b.degree().ok_or(Error::ZeroDivisor)?;
        let lb = b.leading_coeff().unwrap().clone();
        let mut r = self.clone();
        let mut q = vec![Rat::zero(); self.coeffs.len().saturating_sub(db)];
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let c = r.leading_coeff().unwrap() / &lb;
            let shift = dr - db;
            q[shift] = c.clone();
            // r -= c·t^shift·b
            for (k, bc) in b.coeffs.iter().enumerate() {
                let upd = &r.coeffs[shift + k] - &(bc * &c);
                r.coeffs[shift + k] = upd;
            }
            while r.coeffs.last().is_some_and(|x| x.is_zero()) {
                r.coeffs.pop();
            }
        }
        Ok((UniPoly::from_coeffs(q), r))
    }

    /// Exact division; `None` when the remainder is nonzero.
    pub fn div_exact(&self, b: &UniPoly) -> Option<UniPoly> {
        let (q, r) = self.divrem(b).ok()?;
        r.is_zero().then_some(q)
    }

    /// Monic gcd; `gcd(0, b)` is the monic normalization of `b`.
    pub fn gcd(a: &UniPoly, b: &UniPoly) -> UniPoly {
        let mut x = a.clone();
        let mut y = b.clone();
        while !y.is_zero() {
            let (_, r) = x.divrem(&y).expect("nonzero divisor");
            x = y;
            y = r;
        }
        x.monic()
    }

    /// Writes `self` as a polynomial in `f` when possible: returns `h` with
    /// `self = h(f)`. Uses the `f`-adic expansion: `self` lies in `k[f]` iff
    /// every remainder in iterated division by `f` is constant.
    ///
    /// Requires `deg f >= 1`.
    pub fn as_polynomial_in(&self, f: &UniPoly) -> Option<UniPoly> {
        assert!(
            f.degree().is_some_and(|d| d >= 1),
            "as_polynomial_in requires deg f >= 1"
        );
        let mut p = self.clone();
        let mut out = Vec::new();
        while !p.is_zero() {
            let (q, r) = p.divrem(f).expect("nonzero divisor");
            if !r.is_constant() {
                return None;
            }
            out.push(r.coeff(0));
            p = q;
        }
        Some(UniPoly::from_coeffs(out))
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            let mut c = self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero);
            if let Some(b) = rhs.coeffs.get(k) {
                c += b;
            }
            coeffs.push(c);
        }
        UniPoly::from_coeffs(coeffs)
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        self + &(-rhs)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let upd = &coeffs[i + j] + &(a * b);
                coeffs[i + j] = upd;
            }
        }
        UniPoly::from_coeffs(coeffs)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            text::write_term(f, c, &mut first, |f| {
                if k == 1 {
                    write!(f, "t")
                } else {
                    write!(f, "t^{k}")
                }
            }, k == 0)?;
        }
        Ok(())
    }
}

impl FromStr for UniPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let terms = text::parse_terms(s)?;
        let mut acc = UniPoly::zero();
        for term in terms {
            let mut k: usize = 0;
            for (var, exp) in term.factors {
                if var != text::Var::T {
                    return Err(Error::Parse(String::from(
                        "univariate polynomials use the variable t",
                    )));
                }
                if exp < 0 {
                    return Err(Error::Parse(String::from(
                        "negative exponents are not allowed in polynomials",
                    )));
                }
                k += exp as usize;
            }
            acc = &acc + &UniPoly::monomial(term.coeff, k);
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{frac, int};

    fn p(s: &str) -> UniPoly {
        s.parse().unwrap()
    }

    #[test]
    fn mul_difference_of_squares() {
        assert_eq!(&p("t+1") * &p("t-1"), p("t^2-1"));
    }

    #[test]
    fn derivative_power_rule() {
        assert_eq!(p("t^2+t").derivative(), p("2*t+1"));
    }

    #[test]
    fn compose_substitution() {
        // direct substitution oracle: (t^3)^2 + 1
        assert_eq!(p("t^2+1").compose(&p("t^3")), p("t^6+1"));
    }

    #[test]
    fn divrem_reconstruction() {
        let a = p("t^5 + 2*t^3 - t + 4");
        let b = p("t^2 + 1");
        let (q, r) = a.divrem(&b).unwrap();
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn divrem_by_zero() {
        assert_eq!(p("t").divrem(&UniPoly::zero()), Err(Error::ZeroDivisor));
    }

    #[test]
    fn gcd_is_monic_and_handles_zero() {
        let g = UniPoly::gcd(&p("2*t^2-2"), &p("3*t+3"));
        assert_eq!(g, p("t+1"));
        assert_eq!(UniPoly::gcd(&UniPoly::zero(), &p("5*t")), p("t"));
        assert_eq!(UniPoly::gcd(&UniPoly::zero(), &UniPoly::zero()), UniPoly::zero());
    }

    #[test]
    fn polynomial_in_f_examples() {
        // expand (t^2)^2 + 2(t^2) + 7
        let h = p("t^4+2*t^2+7").as_polynomial_in(&p("t^2")).unwrap();
        assert_eq!(h, p("t^2+2*t+7"));
        assert_eq!(p("t^3").as_polynomial_in(&p("t^2")), None);
        let c = p("5").as_polynomial_in(&p("t^3+t")).unwrap();
        assert_eq!(c, p("5"));
    }

    #[test]
    fn polynomial_in_f_reconstructs() {
        let f = p("t^3 - 2*t");
        let h = p("t^2 + 1/3*t - 4");
        let composed = h.compose(&f);
        assert_eq!(composed.as_polynomial_in(&f), Some(h));
    }

    #[test]
    fn parse_and_render_round_trip() {
        for s in ["0", "t^2 + 2*t", "t^4 - 4/3*t^2 + 1", "-t + 1/2", "7"] {
            let q = p(s);
            assert_eq!(p(&alloc::format!("{q}")), q);
        }
        assert_eq!(p("2t^2"), p("2*t^2"));
        assert_eq!(p("t*t"), p("t^2"));
        assert!("t^-1".parse::<UniPoly>().is_err());
        assert!("x1".parse::<UniPoly>().is_err());
        assert!("".parse::<UniPoly>().is_err());
    }

    #[test]
    fn eval_exact() {
        assert_eq!(p("t^2 - 1/2").eval(&frac(1, 2)), frac(-1, 4));
        assert_eq!(p("t^3").eval(&int(-2)), int(-8));
    }
}
