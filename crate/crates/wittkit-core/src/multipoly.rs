//! Sparse multivariate polynomials over exact rationals.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rat::Rat;
use crate::text::{self, Var};

/// Exponent vector, one entry per variable. Ordered by graded lex with
/// `x1 > x2 > ... > xn`.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn constant(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, idx: usize) -> Self {
        let mut e = vec![0; nvars];
        e[idx] = 1;
        Monomial(e)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => self.0.cmp(&other.0),
            ord => ord,
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rat>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        MultiPoly::constant(Rat::one(), nvars)
    }

    pub fn constant(c: Rat, nvars: usize) -> Self {
        let mut p = MultiPoly::zero(nvars);
        p.add_term(Monomial::constant(nvars), c);
        p
    }

    /// `x_{idx+1}` (0-based index).
    pub fn var(nvars: usize, idx: usize) -> Self {
        assert!(idx < nvars);
        let mut p = MultiPoly::zero(nvars);
        p.add_term(Monomial::var(nvars, idx), Rat::one());
        p
    }

    pub fn monomial(c: Rat, exps: &[u32]) -> Self {
        let mut p = MultiPoly::zero(exps.len());
        p.add_term(Monomial(exps.to_vec()), c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.total_degree()).max()
    }

    /// Smallest `x1`-exponent over the support; `None` for the zero polynomial.
    pub fn min_exponent(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[var]).min()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        debug_assert_eq!(m.0.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.nvars != other.nvars {
            return Err(Error::VariableMismatch);
        }
        let mut out = self.clone();
        for (m, c) in other.terms.iter() {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scaled(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.nvars != other.nvars {
            return Err(Error::VariableMismatch);
        }
        let mut out = MultiPoly::zero(self.nvars);
        for (ma, ca) in self.terms.iter() {
            for (mb, cb) in other.terms.iter() {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    /// `∂/∂x_{var+1}` (0-based index).
    pub fn partial_derivative(&self, var: usize) -> Self {
        assert!(var < self.nvars);
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in self.terms.iter() {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[var] = e - 1;
            out.add_term(Monomial(exps), c * crate::rat::int(e as i64));
        }
        out
    }

    /// Multiplication by `x_{var+1}^k`.
    pub fn mul_var_power(&self, var: usize, k: u32) -> Self {
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in self.terms.iter() {
            let mut exps = m.0.clone();
            exps[var] += k;
            out.add_term(Monomial(exps), c.clone());
        }
        out
    }

    /// Reinterprets the polynomial over `nvars >= self.nvars` variables.
    pub fn padded(&self, nvars: usize) -> Self {
        assert!(nvars >= self.nvars);
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut exps = m.0.clone();
                exps.resize(nvars, 0);
                (Monomial(exps), c.clone())
            })
            .collect();
        MultiPoly { nvars, terms }
    }

    /// Parses the shared text format; the number of variables is the largest
    /// index that occurs (use [`Self::padded`] afterwards if a wider ring is
    /// intended). Plain constants parse with zero variables.
    pub fn parse(s: &str) -> Result<Self> {
        let terms = text::parse_terms(s)?;
        let mut nvars = 0usize;
        for term in &terms {
            for (var, exp) in &term.factors {
                match var {
                    Var::T => {
                        return Err(Error::Parse(String::from(
                            "multivariate polynomials use variables x1, x2, ...",
                        )))
                    }
                    Var::X(idx) => {
                        if *exp < 0 {
                            return Err(Error::Parse(String::from(
                                "negative exponents are not allowed in polynomials",
                            )));
                        }
                        nvars = nvars.max(*idx);
                    }
                }
            }
        }
        let mut out = MultiPoly::zero(nvars);
        for term in terms {
            let mut exps = vec![0u32; nvars];
            for (var, exp) in term.factors {
                if let Var::X(idx) = var {
                    exps[idx - 1] += exp as u32;
                }
            }
            out.add_term(Monomial(exps), term.coeff);
        }
        Ok(out)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let constant = m.total_degree() == 0;
            text::write_term(f, c, &mut first, |f| {
                let mut star = false;
                for (i, e) in m.0.iter().enumerate() {
                    if *e == 0 {
                        continue;
                    }
                    if star {
                        write!(f, "*")?;
                    }
                    star = true;
                    if *e == 1 {
                        write!(f, "x{}", i + 1)?;
                    } else {
                        write!(f, "x{}^{}", i + 1, e)?;
                    }
                }
                Ok(())
            }, constant)?;
        }
        Ok(())
    }
}
