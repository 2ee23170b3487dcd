//! Truncated formal Laurent series in descending powers of `t`.
//!
//! A series carries its own provable truncation as data: `trunc = Some(T)`
//! means every coefficient at exponent `<= T` is unknown (the series is known
//! modulo `O(t^T)`), `trunc = None` means the series is exact. Arithmetic
//! propagates the tightest provable bound, so precision loss is always loud.

use alloc::collections::BTreeMap;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rat::{self, Rat};
use crate::text;
use crate::unipoly::UniPoly;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentSeries {
    /// Known nonzero coefficients; every stored exponent exceeds `trunc`.
    coeffs: BTreeMap<i64, Rat>,
    /// Exponents `<= trunc` are unknown; `None` means exact.
    trunc: Option<i64>,
}

fn opt_add(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    Some(a? + b?)
}

/// Max where `None` stands for -infinity.
fn opt_max(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.max(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl LaurentSeries {
    pub fn zero() -> Self {
        LaurentSeries { coeffs: BTreeMap::new(), trunc: None }
    }

    pub fn one() -> Self {
        LaurentSeries::term(Rat::one(), 0)
    }

    /// The variable `t`.
    pub fn var() -> Self {
        LaurentSeries::term(Rat::one(), 1)
    }

    /// `c·t^e`, exact.
    pub fn term(c: Rat, e: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(e, c);
        }
        LaurentSeries { coeffs, trunc: None }
    }

    pub fn from_terms(terms: &[(i64, Rat)]) -> Self {
        let mut out = LaurentSeries::zero();
        for (e, c) in terms {
            out = &out + &LaurentSeries::term(c.clone(), *e);
        }
        out
    }

    pub fn from_poly(p: &UniPoly) -> Self {
        let coeffs = p
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k as i64, c.clone()))
            .collect();
        LaurentSeries { coeffs, trunc: None }
    }

    /// Largest exponent with a known nonzero coefficient.
    pub fn top_deg(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn trunc_order(&self) -> Option<i64> {
        self.trunc
    }

    pub fn is_exact(&self) -> bool {
        self.trunc.is_none()
    }

    /// No known nonzero coefficients (either exact zero or zero to truncation).
    pub fn is_zero_to_trunc(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `Some(value)` when the coefficient at `e` is determined, `None` when it
    /// lies at or below the truncation order.
    pub fn known_coeff(&self, e: i64) -> Option<Rat> {
        if let Some(t) = self.trunc {
            if e <= t {
                return None;
            }
        }
        Some(self.coeffs.get(&e).cloned().unwrap_or_else(Rat::zero))
    }

    pub fn known_terms(&self) -> impl DoubleEndedIterator<Item = (&i64, &Rat)> {
        self.coeffs.iter()
    }

    /// Imposes (or deepens to) the truncation `O(t^order)`.
    pub fn truncated(&self, order: i64) -> Self {
        let trunc = opt_max(self.trunc, Some(order));
        let cutoff = trunc.unwrap();
        let coeffs = self
            .coeffs
            .iter()
            .filter(|(e, _)| **e > cutoff)
            .map(|(e, c)| (*e, c.clone()))
            .collect();
        LaurentSeries { coeffs, trunc }
    }

    /// The known coefficients reinterpreted as an exact Laurent polynomial.
    pub fn known_prefix(&self) -> Self {
        LaurentSeries { coeffs: self.coeffs.clone(), trunc: None }
    }

    pub fn scaled(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return LaurentSeries { coeffs: BTreeMap::new(), trunc: self.trunc };
        }
        LaurentSeries {
            coeffs: self.coeffs.iter().map(|(e, a)| (*e, a * c)).collect(),
            trunc: self.trunc,
        }
    }

    /// Term-by-term derivative `d/dt`; the unknown tail `O(t^T)` differentiates
    /// to `O(t^{T-1})`.
    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .filter(|(e, _)| **e != 0)
            .map(|(e, c)| (*e - 1, c * rat::int(*e)))
            .collect();
        LaurentSeries { coeffs, trunc: self.trunc.map(|t| t - 1) }
    }

    /// Reciprocal. The top coefficient must be known and nonzero; for a series
    /// known modulo `O(t^T)` with top degree `D` the result is known modulo
    /// `O(t^{T-2D})`. Exact inputs must be monomials (anything else has an
    /// infinite exact reciprocal); impose a truncation first.
    pub fn reciprocal(&self) -> Result<Self> {
        let top = self.top_deg().ok_or(Error::NotInvertible)?;
        let lc = self.coeffs.get(&top).unwrap().clone();
        match self.trunc {
            None => {
                if self.coeffs.len() == 1 {
                    Ok(LaurentSeries::term(lc.recip(), -top))
                } else {
                    Err(Error::NeedsTruncation)
                }
            }
            Some(t) => {
                // Relative series u with u_0 = 1: self = lc·t^top·u.
                let rel_floor = t - top; // u known for exponents > rel_floor
                let u: BTreeMap<i64, Rat> = self
                    .coeffs
                    .iter()
                    .map(|(e, c)| (*e - top, c / &lc))
                    .collect();
                // r·u = 1 solved coefficient by coefficient, descending.
                let mut r: BTreeMap<i64, Rat> = BTreeMap::new();
                r.insert(0, Rat::one());
                let mut j = -1;
                while j > rel_floor {
                    let mut acc = Rat::zero();
                    for (i, ri) in r.iter() {
                        if let Some(uc) = u.get(&(j - i)) {
                            acc += ri * uc;
                        }
                    }
                    if !acc.is_zero() {
                        r.insert(j, -acc);
                    }
                    j -= 1;
                }
                let inv_lc = lc.recip();
                let coeffs = r
                    .into_iter()
                    .map(|(e, c)| (e - top, c * &inv_lc))
                    .collect();
                Ok(LaurentSeries { coeffs, trunc: Some(t - 2 * top) }.normalized())
            }
        }
    }

    /// Integer power; negative exponents go through [`Self::reciprocal`].
    pub fn power(&self, k: i64) -> Result<Self> {
        if k < 0 {
            return self.reciprocal()?.power(-k);
        }
        let mut acc = LaurentSeries::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        Ok(acc)
    }

    fn normalized(mut self) -> Self {
        if let Some(t) = self.trunc {
            self.coeffs.retain(|e, c| *e > t && !c.is_zero());
        } else {
            self.coeffs.retain(|_, c| !c.is_zero());
        }
        self
    }
}

impl Add for &LaurentSeries {
    type Output = LaurentSeries;
    fn add(self, rhs: &LaurentSeries) -> LaurentSeries {
        let trunc = opt_max(self.trunc, rhs.trunc);
        let mut coeffs = self.coeffs.clone();
        for (e, c) in rhs.coeffs.iter() {
            let entry = coeffs.entry(*e).or_insert_with(Rat::zero);
            *entry += c;
        }
        LaurentSeries { coeffs, trunc }.normalized()
    }
}

impl Sub for &LaurentSeries {
    type Output = LaurentSeries;
    fn sub(self, rhs: &LaurentSeries) -> LaurentSeries {
        self + &(-rhs)
    }
}

impl Neg for &LaurentSeries {
    type Output = LaurentSeries;
    fn neg(self) -> LaurentSeries {
        LaurentSeries {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(),
            trunc: self.trunc,
        }
    }
}

impl Mul for &LaurentSeries {
    type Output = LaurentSeries;
    fn mul(self, rhs: &LaurentSeries) -> LaurentSeries {
        // Unknown-tail bookkeeping: with a = known_a + O(t^{T_a}) and likewise
        // for b, the product tail collects at max(T_a + top_b, T_b + top_a,
        // T_a + T_b); the last term only matters when a known part is empty.
        let trunc = [
            opt_add(self.trunc, rhs.top_deg()),
            opt_add(rhs.trunc, self.top_deg()),
            opt_add(self.trunc, rhs.trunc),
        ]
        .into_iter()
        .fold(None, opt_max);
        let mut coeffs: BTreeMap<i64, Rat> = BTreeMap::new();
        for (ea, ca) in self.coeffs.iter() {
            for (eb, cb) in rhs.coeffs.iter() {
                let e = ea + eb;
                if let Some(t) = trunc {
                    if e <= t {
                        continue;
                    }
                }
                let entry = coeffs.entry(e).or_insert_with(Rat::zero);
                *entry += ca * cb;
            }
        }
        LaurentSeries { coeffs, trunc }.normalized()
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() && self.trunc.is_none() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().rev() {
            text::write_term(f, c, &mut first, |f| {
                if *e == 1 {
                    write!(f, "t")
                } else {
                    write!(f, "t^{e}")
                }
            }, *e == 0)?;
        }
        if let Some(t) = self.trunc {
            if first {
                write!(f, "O(t^{t})")?;
            } else {
                write!(f, " + O(t^{t})")?;
            }
        }
        Ok(())
    }
}
