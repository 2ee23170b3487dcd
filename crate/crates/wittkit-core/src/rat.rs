//! Exact rational scalars.
//!
//! `Rat` is `num_rational::BigRational`: always reduced, denominator positive,
//! zero stored as `0/1`. Everything in this crate computes over it exactly.

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub type Rat = num_rational::BigRational;

/// Integer as a rational.
pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `n/d`, reduced. Panics if `d == 0`.
pub fn frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn is_one(r: &Rat) -> bool {
    r.is_one()
}

pub fn is_zero(r: &Rat) -> bool {
    r.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_and_rendered() {
        assert_eq!(frac(2, 4), frac(1, 2));
        assert_eq!(frac(1, -3), frac(-1, 3));
        assert_eq!(alloc::format!("{}", frac(-4, 45)), "-4/45");
        assert_eq!(alloc::format!("{}", int(7)), "7");
        assert_eq!(alloc::format!("{}", int(0)), "0");
    }

    #[test]
    fn parses_both_literal_forms() {
        use core::str::FromStr;
        assert_eq!(Rat::from_str("3/4").unwrap(), frac(3, 4));
        assert_eq!(Rat::from_str("-5").unwrap(), int(-5));
    }
}
