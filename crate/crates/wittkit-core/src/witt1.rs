//! Elements and finitely generated subalgebras of the one-sided Witt algebra
//! `k[t]∂`.
//!
//! The degree convention is `deg(g∂) = deg(g) - 1`, so the basis fields
//! `t^{n+1}∂` have degree `n` for `n >= -1`. A spanning set is kept in
//! degree-echelonized form: monic elements with pairwise distinct leading
//! degrees, fully back-reduced, which makes membership a triangular
//! elimination.

use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{Row, SparseEchelon};
use crate::rat::Rat;
use crate::unipoly::UniPoly;

/// The vector field `g·d/dt`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WittElement1 {
    g: UniPoly,
}

impl WittElement1 {
    pub fn new(g: UniPoly) -> Self {
        WittElement1 { g }
    }

    pub fn zero() -> Self {
        WittElement1 { g: UniPoly::zero() }
    }

    /// The basis field `t^{n+1}∂`; requires `n >= -1`.
    pub fn basis(n: i64) -> Self {
        assert!(n >= -1);
        WittElement1::new(UniPoly::monomial(num_traits::One::one(), (n + 1) as usize))
    }

    pub fn poly(&self) -> &UniPoly {
        &self.g
    }

    pub fn is_zero(&self) -> bool {
        self.g.is_zero()
    }

    /// `deg(g∂) = deg(g) - 1`; `None` for the zero field.
    pub fn degree(&self) -> Option<i64> {
        self.g.degree().map(|d| d as i64 - 1)
    }

    pub fn is_monic(&self) -> bool {
        self.g.is_monic()
    }

    pub fn monic(&self) -> Self {
        WittElement1::new(self.g.monic())
    }

    pub fn scaled(&self, c: &Rat) -> Self {
        WittElement1::new(self.g.scaled(c))
    }

    pub fn add(&self, other: &Self) -> Self {
        WittElement1::new(&self.g + other.poly())
    }

    pub fn sub(&self, other: &Self) -> Self {
        WittElement1::new(&self.g - other.poly())
    }

    /// `[f∂, g∂] = (f·g' - f'·g)∂`, exact.
    pub fn bracket(&self, other: &Self) -> Self {
        let fg = &self.g * &other.g.derivative();
        let gf = &self.g.derivative() * &other.g;
        WittElement1::new(&fg - &gf)
    }

    /// Coefficient of the basis field of degree `n` (i.e. of `t^{n+1}∂`).
    pub fn basis_coeff(&self, n: i64) -> Rat {
        if n < -1 {
            return Rat::zero();
        }
        self.g.coeff((n + 1) as usize)
    }

    fn row(&self) -> Row<i64> {
        self.g
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k as i64, c.clone()))
            .collect()
    }

    fn from_row(row: &Row<i64>) -> Self {
        let mut coeffs = alloc::vec![Rat::zero(); row.keys().next_back().map_or(0, |k| *k as usize + 1)];
        for (k, c) in row {
            coeffs[*k as usize] = c.clone();
        }
        WittElement1::new(UniPoly::from_coeffs(coeffs))
    }
}

impl fmt::Display for WittElement1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})∂", self.g)
    }
}

/// Degree-echelonized spanning set of a bracket-closed subspace of `k[t]∂`,
/// truncated at vector-field degree `degree_bound - 1`.
#[derive(Clone, Debug)]
pub struct SubalgebraBasis1 {
    echelon: SparseEchelon<i64>,
    degree_bound: i64,
    saturated: bool,
}

impl SubalgebraBasis1 {
    /// Smallest bracket-closed subspace containing the generators,
    /// intersected with `{degree <= degree_bound - 1}`.
    ///
    /// `saturated` is set when a full closure pass produced no new leading
    /// degree and the maximal attained degree plus the minimal positive
    /// degree is `< degree_bound - 1`: a new bracket can only land at the sum
    /// of existing degrees, so the span is then genuinely closed, not just
    /// closed within the truncation.
    pub fn closure(generators: &[WittElement1], degree_bound: i64) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::NoGenerators);
        }
        let max_gen = generators.iter().filter_map(|u| u.degree()).max();
        if let Some(mg) = max_gen {
            if degree_bound < mg + 1 {
                return Err(Error::OutOfBound);
            }
        }
        let mut echelon: SparseEchelon<i64> = SparseEchelon::new();
        let mut all: Vec<WittElement1> = Vec::new();
        let mut work: Vec<WittElement1> = Vec::new();
        for u in generators {
            if let Some((_, row)) = echelon.insert(u.row()) {
                let e = WittElement1::from_row(&row);
                all.push(e.clone());
                work.push(e);
            }
        }
        while let Some(u) = work.pop() {
            let mut idx = 0;
            while idx < all.len() {
                let w = u.bracket(&all[idx]);
                idx += 1;
                match w.degree() {
                    None => continue,
                    Some(d) if d > degree_bound - 1 => continue,
                    Some(_) => {}
                }
                if let Some((_, row)) = echelon.insert(w.row()) {
                    let e = WittElement1::from_row(&row);
                    all.push(e.clone());
                    work.push(e);
                }
            }
        }
        let degrees: Vec<i64> = echelon.pivots().map(|p| p - 1).collect();
        let max_deg = degrees.iter().copied().max();
        let min_pos = degrees.iter().copied().filter(|d| *d > 0).min();
        let saturated = match (max_deg, min_pos) {
            (Some(max), Some(mp)) => max + mp < degree_bound - 1,
            _ => true,
        };
        Ok(SubalgebraBasis1 { echelon, degree_bound, saturated })
    }

    pub fn degree_bound(&self) -> i64 {
        self.degree_bound
    }

    pub fn saturated(&self) -> bool {
        self.saturated
    }

    pub fn dim(&self) -> usize {
        self.echelon.dim()
    }

    /// Echelon elements in increasing leading degree; each is monic.
    pub fn elements(&self) -> Vec<WittElement1> {
        self.echelon.rows().map(WittElement1::from_row).collect()
    }

    /// Leading degrees of the echelon elements, increasing.
    pub fn leading_degrees(&self) -> Vec<i64> {
        self.echelon.pivots().map(|p| p - 1).collect()
    }

    pub fn max_attained_degree(&self) -> Option<i64> {
        self.leading_degrees().last().copied()
    }

    /// Exact membership in the stored span by leading-degree elimination.
    /// Errors when the degree of `u` exceeds the bound.
    pub fn contains(&self, u: &WittElement1) -> Result<bool> {
        if let Some(d) = u.degree() {
            if d > self.degree_bound - 1 {
                return Err(Error::OutOfBound);
            }
        }
        Ok(self.echelon.contains(u.row()))
    }

    /// gcd of the leading degrees in the sense of the generated subgroup of
    /// the integers: degree `-1` contributes 1, degree `0` contributes
    /// nothing, and a basis attaining only degree 0 yields 0.
    pub fn degree_gcd(&self) -> i64 {
        self.leading_degrees()
            .iter()
            .fold(0i64, |acc, d| acc.gcd(&d.abs()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::int;

    fn field(s: &str) -> WittElement1 {
        WittElement1::new(s.parse().unwrap())
    }

    #[test]
    fn bracket_basis_relation() {
        // [t^2∂, t^3∂] = t^4∂, i.e. [e_1, e_2] = (2-1)e_3
        assert_eq!(field("t^2").bracket(&field("t^3")), field("t^4"));
        // antisymmetry on equal arguments
        assert!(field("t").bracket(&field("t")).is_zero());
        // [∂, t^3∂] = 3t^2∂
        assert_eq!(field("1").bracket(&field("t^3")), field("3*t^2"));
    }

    #[test]
    fn degree_convention() {
        assert_eq!(field("1").degree(), Some(-1));
        assert_eq!(field("t").degree(), Some(0));
        assert_eq!(WittElement1::zero().degree(), None);
        assert_eq!(WittElement1::basis(5), field("t^6"));
    }

    #[test]
    fn closure_odd_family() {
        let basis =
            SubalgebraBasis1::closure(&[field("t^3"), field("t^5")], 40).unwrap();
        // all odd polynomial degrees 3..=39, i.e. field degrees 2, 4, ..., 38
        let expected: Vec<i64> = (1..=19).map(|k| 2 * k).collect();
        assert_eq!(basis.leading_degrees(), expected);
        assert!(!basis.saturated());
        // contains 2t^7∂ from [t^3∂, t^5∂]
        assert!(basis.contains(&field("2*t^7")).unwrap());
        assert!(!basis.contains(&field("t")).unwrap());
        assert!(basis.contains(&WittElement1::zero()).unwrap());
        assert_eq!(basis.degree_gcd(), 2);
    }

    #[test]
    fn closure_two_dimensional() {
        let basis = SubalgebraBasis1::closure(&[field("t"), field("t^2")], 40).unwrap();
        assert_eq!(basis.dim(), 2);
        assert!(basis.saturated());
        assert_eq!(basis.leading_degrees(), alloc::vec![0, 1]);
    }

    #[test]
    fn closure_full_tail() {
        let basis = SubalgebraBasis1::closure(&[field("t^2"), field("t^3")], 40).unwrap();
        let expected: Vec<i64> = (1..=39).collect();
        assert_eq!(basis.leading_degrees(), expected);
        assert_eq!(basis.degree_gcd(), 1);
    }

    #[test]
    fn closure_preconditions() {
        assert_eq!(
            SubalgebraBasis1::closure(&[], 10).unwrap_err(),
            Error::NoGenerators
        );
        assert_eq!(
            SubalgebraBasis1::closure(&[field("t^12")], 10).unwrap_err(),
            Error::OutOfBound
        );
    }

    #[test]
    fn member_out_of_bound() {
        let basis = SubalgebraBasis1::closure(&[field("t")], 4).unwrap();
        assert_eq!(basis.contains(&field("t^9")), Err(Error::OutOfBound));
    }

    #[test]
    fn degree_gcd_conventions() {
        let basis = SubalgebraBasis1::closure(&[field("1")], 10).unwrap();
        assert_eq!(basis.degree_gcd(), 1);
        let basis = SubalgebraBasis1::closure(&[field("t")], 10).unwrap();
        assert_eq!(basis.degree_gcd(), 0);
    }

    #[test]
    fn echelon_elements_are_monic_and_sorted() {
        let basis =
            SubalgebraBasis1::closure(&[field("2*t^3 + t"), field("3*t^5")], 30).unwrap();
        let mut last = None;
        for e in basis.elements() {
            assert!(e.is_monic());
            assert!(last < e.degree());
            last = e.degree();
        }
    }

    #[test]
    fn basis_coeff_indexing() {
        let u = field("t^3 + 2*t^2 + 5");
        assert_eq!(u.basis_coeff(2), int(1));
        assert_eq!(u.basis_coeff(1), int(2));
        assert_eq!(u.basis_coeff(-1), int(5));
        assert_eq!(u.basis_coeff(-2), int(0));
    }
}
