//! The Laurent-series engine: normalization of a monic field `g∂` to
//! `s^d ∂_s`, change of basis into powers of `s`, Veronese membership, and
//! the two-element coefficient law.
//!
//! `∂_s` is never materialized: with `∂_s = (1/s')∂`, every identity here is
//! evaluated through `s^d/s'` and multiplication by `s'/s`.

use alloc::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::laurent::LaurentSeries;
use crate::rat::{self, Rat};
use crate::unipoly::UniPoly;
use crate::witt1::WittElement1;

/// A truncated series `s = t + lower degree terms` with `order` correction
/// steps performed: coefficients of `s` are known for exponents `1` down to
/// `1 - order`.
#[derive(Clone, Debug)]
pub struct SeriesChart {
    s: LaurentSeries,
    steps: u32,
}

/// Solves `s^d / s' = g + O(t^{d-steps-1})` for a monic `g` of degree
/// `d >= 1`, one coefficient per step: starting from `s = t`, each step reads
/// the top residual coefficient `α` at `t^{d-n-1}` and corrects by
/// `-α/(n+d)·t^{-n}`.
///
/// The iteration is a fixed triangular solve: rerunning or extending `steps`
/// never changes previously computed coefficients.
pub fn hensel_root(g: &UniPoly, steps: u32) -> Result<SeriesChart> {
    if !g.is_monic() {
        return Err(Error::NonMonic);
    }
    let d = g.degree().filter(|d| *d >= 1).ok_or(Error::DegreeTooSmall)? as i64;
    let g_series = LaurentSeries::from_poly(g);
    // s stays an exact Laurent polynomial during the iteration.
    let mut s = LaurentSeries::var();
    for n in 0..steps as i64 {
        let residual = &s.power(d)? - &(&s.derivative() * &g_series);
        // s^d = s'(g + α t^{d-n-1}) + O(t^{d-n-2}) and s' = 1 + O(t^{-1}),
        // so α is the residual coefficient at t^{d-n-1} itself.
        let alpha = residual.known_coeff(d - n - 1).expect("exact residual");
        if !alpha.is_zero() {
            let c = -alpha / rat::int(n + d);
            s = &s + &LaurentSeries::term(c, -n);
        }
    }
    Ok(SeriesChart { s: s.truncated(-(steps as i64)), steps })
}

impl SeriesChart {
    pub fn series(&self) -> &LaurentSeries {
        &self.s
    }

    pub fn steps(&self) -> u32 {
        self.steps
    }

    /// `s^d - s'·g` over the known prefix of `s`, taken exactly. Its top
    /// exponent bounds the order of `s^d/s' - g` since `s'` is a unit of the
    /// form `1 + lower order terms`.
    pub fn residual(&self, g: &UniPoly) -> Result<LaurentSeries> {
        let d = g.degree().filter(|d| *d >= 1).ok_or(Error::DegreeTooSmall)? as i64;
        let s = self.s.known_prefix();
        Ok(&s.power(d)? - &(&s.derivative() * &LaurentSeries::from_poly(g)))
    }

    /// Top exponent of [`Self::residual`]; `None` when the residual vanishes
    /// identically on the known prefix.
    pub fn residual_order(&self, g: &UniPoly) -> Result<Option<i64>> {
        Ok(self.residual(g)?.top_deg())
    }

    fn power_of_s(&self, cache: &mut BTreeMap<i64, LaurentSeries>, k: i64) -> Result<LaurentSeries> {
        if let Some(p) = cache.get(&k) {
            return Ok(p.clone());
        }
        let p = if k >= 0 {
            self.s.power(k)?
        } else {
            self.s.reciprocal()?.power(-k)?
        };
        cache.insert(k, p.clone());
        Ok(p)
    }

    /// Coefficients `b_k` with `a = Σ b_k s^k + O(s-window)`, computed by
    /// triangular elimination from the top exponent down (`s^k = t^k + lower`
    /// order terms, so the system is unitriangular). Returns the map of
    /// nonzero resolved coefficients together with the provable window floor:
    /// indices `> floor` are determined, `None` floor means the expansion is
    /// exact and complete.
    pub fn expand(&self, a: &LaurentSeries) -> Result<(BTreeMap<i64, Rat>, Option<i64>)> {
        let mut cache: BTreeMap<i64, LaurentSeries> = BTreeMap::new();
        let mut rem = a.clone();
        let mut out = BTreeMap::new();
        while let Some(k) = rem.top_deg() {
            let b = rem.known_coeff(k).expect("top coefficient is known");
            out.insert(k, b.clone());
            let sk = self.power_of_s(&mut cache, k)?;
            rem = &rem - &sk.scaled(&b);
        }
        Ok((out, rem.trunc_order()))
    }

    /// [`Self::expand`] with a required resolution depth: every index
    /// `>= k_min` must be determined, otherwise the error reports an
    /// estimate of the number of steps that would suffice.
    pub fn expand_to(&self, a: &LaurentSeries, k_min: i64) -> Result<BTreeMap<i64, Rat>> {
        let (out, floor) = self.expand(a)?;
        if let Some(fl) = floor {
            if fl >= k_min {
                let gap = (fl - k_min + 1).max(1) as u32;
                return Err(Error::IncreaseSteps { required: self.steps + gap });
            }
        }
        Ok(out)
    }
}

/// Expansion of a vector field in the chart: `u = Σ b_k s^{k+1} ∂_s` is
/// equivalent to `a·s'/s = Σ b_k s^k` for `u = a∂`.
fn chart_coordinates(
    u: &WittElement1,
    chart: &SeriesChart,
) -> Result<(BTreeMap<i64, Rat>, Option<i64>)> {
    let a = LaurentSeries::from_poly(u.poly());
    let w = &(&a * &chart.series().derivative()) * &chart.series().reciprocal()?;
    chart.expand(&w)
}

/// Membership of `u` in the Veronese subalgebra of index `d` attached to the
/// chart: true iff every resolvable index `k` with `b_k != 0` is divisible by
/// `d`. Fails loudly when the chart resolves no index at all.
pub fn veronese_member(u: &WittElement1, d: i64, chart: &SeriesChart) -> Result<bool> {
    Ok(veronese_report(u, d, chart)?.member)
}

#[derive(Clone, Debug)]
pub struct VeroneseReport {
    pub member: bool,
    /// Indices are determined strictly above this floor (`None`: complete).
    pub window_floor: Option<i64>,
    /// First (largest) resolvable index witnessing non-membership.
    pub offending_index: Option<i64>,
}

pub fn veronese_report(u: &WittElement1, d: i64, chart: &SeriesChart) -> Result<VeroneseReport> {
    assert!(d >= 1, "veronese index must be positive");
    if u.is_zero() {
        return Ok(VeroneseReport { member: true, window_floor: None, offending_index: None });
    }
    let (coeffs, floor) = chart_coordinates(u, chart)?;
    if coeffs.is_empty() {
        // u is nonzero yet nothing was resolvable: the window is too shallow.
        let top = u.degree().unwrap_or(0);
        let gap = floor.map_or(1, |fl| (fl - top + 1).max(1)) as u32;
        return Err(Error::IncreaseSteps { required: chart.steps + gap });
    }
    let offending = coeffs.keys().rev().find(|k| (*k).rem_euclid(d) != 0).copied();
    Ok(VeroneseReport { member: offending.is_none(), window_floor: floor, offending_index: offending })
}

/// Outcome of the coefficient law on a monic pair of distinct degrees `n`,
/// `m`, both multiples of `d`: at the minimal offset `k` not divisible by `d`
/// where either field carries a nonzero coefficient `α` (at degree `n - k`)
/// or `β` (at degree `m - k`), the law asserts `(m + k)·α = (n + k)·β`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LawCheck {
    /// No offending offset exists: both fields are Veronese-aligned.
    Aligned,
    Offset { k: i64, alpha: Rat, beta: Rat, holds: bool },
}

pub fn coefficient_law(a: &WittElement1, b: &WittElement1, d: i64) -> Result<LawCheck> {
    assert!(d >= 1, "veronese index must be positive");
    if !a.is_monic() || !b.is_monic() {
        return Err(Error::NonMonic);
    }
    let n = a.degree().ok_or(Error::DegeneratePair)?;
    let m = b.degree().ok_or(Error::DegeneratePair)?;
    if n == m {
        return Err(Error::DegeneratePair);
    }
    if n.rem_euclid(d) != 0 || m.rem_euclid(d) != 0 {
        return Err(Error::DegreeNotMultiple);
    }
    for k in 1..=(n.max(m) + 1) {
        if k.rem_euclid(d) == 0 {
            continue;
        }
        let alpha = a.basis_coeff(n - k);
        let beta = b.basis_coeff(m - k);
        if alpha.is_zero() && beta.is_zero() {
            continue;
        }
        let holds = rat::int(m + k) * &alpha == rat::int(n + k) * &beta;
        return Ok(LawCheck::Offset { k, alpha, beta, holds });
    }
    Ok(LawCheck::Aligned)
}

/// Minimal offset `k >= 1` with `d` not dividing `k` at which `u` carries a
/// nonzero coefficient below its leading term, with that coefficient.
pub fn first_offending_offset(u: &WittElement1, d: i64) -> Option<(i64, Rat)> {
    let n = u.degree()?;
    for k in 1..=(n + 1) {
        if k.rem_euclid(d) == 0 {
            continue;
        }
        let c = u.basis_coeff(n - k);
        if !c.is_zero() {
            return Some((k, c));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{frac, int};

    fn poly(s: &str) -> UniPoly {
        s.parse().unwrap()
    }

    fn field(s: &str) -> WittElement1 {
        WittElement1::new(poly(s))
    }

    #[test]
    fn pure_monomial_is_a_fixed_point() {
        let chart = hensel_root(&poly("t^3"), 8).unwrap();
        assert_eq!(chart.series().known_coeff(1), Some(int(1)));
        for e in -6..=0 {
            assert_eq!(chart.series().known_coeff(e), Some(int(0)));
        }
        assert_eq!(chart.residual_order(&poly("t^3")).unwrap(), None);
    }

    #[test]
    fn named_instance_t2_plus_1() {
        let chart = hensel_root(&poly("t^2+1"), 6).unwrap();
        let s = chart.series();
        assert_eq!(s.known_coeff(1), Some(int(1)));
        assert_eq!(s.known_coeff(0), Some(int(0)));
        assert_eq!(s.known_coeff(-1), Some(frac(1, 3)));
        assert_eq!(s.known_coeff(-2), Some(int(0)));
        assert_eq!(s.known_coeff(-3), Some(frac(-4, 45)));
        assert_eq!(s.known_coeff(-6), None);
        // residual check: s^2/s' = t^2 + 1 + O(t^{d-N-1})
        let ord = chart.residual_order(&poly("t^2+1")).unwrap();
        assert!(ord.unwrap_or(i64::MIN) < 2 - 6);
    }

    #[test]
    fn shifted_cube_terminates_exactly() {
        let chart = hensel_root(&poly("t^3 + 3*t^2 + 3*t + 1"), 10).unwrap();
        assert_eq!(chart.series().known_coeff(0), Some(int(1)));
        for e in -9..=-1 {
            assert_eq!(chart.series().known_coeff(e), Some(int(0)));
        }
    }

    #[test]
    fn residual_oracle_t2_plus_t() {
        let chart = hensel_root(&poly("t^2+t"), 6).unwrap();
        let ord = chart.residual_order(&poly("t^2+t")).unwrap();
        assert!(ord.unwrap_or(i64::MIN) < 2 - 6);
    }

    #[test]
    fn extension_stability() {
        let short = hensel_root(&poly("t^4 - 2*t^2 + t"), 5).unwrap();
        let long = hensel_root(&poly("t^4 - 2*t^2 + t"), 12).unwrap();
        for e in -4..=1 {
            assert_eq!(short.series().known_coeff(e), long.series().known_coeff(e));
        }
    }

    #[test]
    fn requires_monic() {
        assert!(matches!(hensel_root(&poly("2*t^2"), 4), Err(Error::NonMonic)));
        assert!(matches!(hensel_root(&poly("1"), 4), Err(Error::DegreeTooSmall)));
    }

    #[test]
    fn expand_identity_chart() {
        let chart = hensel_root(&poly("t^3"), 8).unwrap();
        let (coeffs, _) = chart.expand(&LaurentSeries::var()).unwrap();
        assert_eq!(coeffs, BTreeMap::from([(1, int(1))]));
        // round trip: s^2 expanded back
        let s2 = chart.series().power(2).unwrap();
        let (coeffs, _) = chart.expand(&s2).unwrap();
        assert_eq!(coeffs, BTreeMap::from([(2, int(1))]));
    }

    #[test]
    fn expand_nontrivial_chart() {
        // s = t + (1/3)t^{-1} + ... gives t^2 = s^2 - 2/3 + lower order terms
        let chart = hensel_root(&poly("t^2+1"), 8).unwrap();
        let t2 = LaurentSeries::from_poly(&poly("t^2"));
        let (coeffs, floor) = chart.expand(&t2).unwrap();
        assert_eq!(coeffs.get(&2), Some(&int(1)));
        assert_eq!(coeffs.get(&1), None);
        assert_eq!(coeffs.get(&0), Some(&frac(-2, 3)));
        assert!(floor.unwrap() < -1);
        // re-substitute: Σ b_k s^k reproduces t^2 on the window
        let mut back = LaurentSeries::zero();
        for (k, b) in &coeffs {
            let sk = if *k >= 0 {
                chart.series().power(*k).unwrap()
            } else {
                chart.series().reciprocal().unwrap().power(-k).unwrap()
            };
            back = &back + &sk.scaled(b);
        }
        let diff = &back - &t2;
        assert!(diff.is_zero_to_trunc());
    }

    #[test]
    fn expand_to_reports_required_steps() {
        let chart = hensel_root(&poly("t^2+1"), 4).unwrap();
        let t2 = LaurentSeries::from_poly(&poly("t^2"));
        match chart.expand_to(&t2, -30) {
            Err(Error::IncreaseSteps { required }) => assert!(required > 4),
            other => panic!("expected IncreaseSteps, got {other:?}"),
        }
    }

    #[test]
    fn veronese_membership_identity_chart() {
        let chart = hensel_root(&poly("t^3"), 8).unwrap();
        assert!(veronese_member(&field("t^3"), 2, &chart).unwrap());
        assert!(!veronese_member(&field("t^2"), 2, &chart).unwrap());
        assert!(veronese_member(&WittElement1::zero(), 2, &chart).unwrap());
    }

    #[test]
    fn veronese_membership_shifted_chart() {
        // s = t + 1: (t+1)^3 ∂ = s^3 ∂_s has index 2
        let chart = hensel_root(&poly("t^3 + 3*t^2 + 3*t + 1"), 8).unwrap();
        assert!(veronese_member(&field("t^3 + 3*t^2 + 3*t + 1"), 2, &chart).unwrap());
        let report = veronese_report(&field("t^2"), 2, &chart).unwrap();
        assert!(!report.member);
        assert!(report.offending_index.is_some());
    }

    #[test]
    fn coefficient_law_binomial_family() {
        // a = (t+1)^3∂ (degree 2), b = (t+1)^5∂ (degree 4), d = 2:
        // k = 1, α = 3, β = 5, and 5·3 = 3·5.
        let a = field("t^3 + 3*t^2 + 3*t + 1");
        let b = field("t^5 + 5*t^4 + 10*t^3 + 10*t^2 + 5*t + 1");
        match coefficient_law(&a, &b, 2).unwrap() {
            LawCheck::Offset { k, alpha, beta, holds } => {
                assert_eq!(k, 1);
                assert_eq!(alpha, int(3));
                assert_eq!(beta, int(5));
                assert!(holds);
            }
            LawCheck::Aligned => panic!("expected an offset"),
        }
    }

    #[test]
    fn coefficient_law_aligned_and_solved_cases() {
        assert_eq!(coefficient_law(&field("t^3"), &field("t^5"), 2).unwrap(), LawCheck::Aligned);
        // a = e_2 + e_1, b = e_4 + (5/3)e_3: (4+1)·1 = (2+1)·(5/3)
        let a = field("t^3 + t^2");
        let b = WittElement1::new(&poly("t^5") + &poly("t^4").scaled(&frac(5, 3)));
        match coefficient_law(&a, &b, 2).unwrap() {
            LawCheck::Offset { k, holds, .. } => {
                assert_eq!(k, 1);
                assert!(holds);
            }
            LawCheck::Aligned => panic!("expected an offset"),
        }
    }

    #[test]
    fn coefficient_law_preconditions() {
        assert_eq!(coefficient_law(&field("t^3"), &field("t^3"), 2), Err(Error::DegeneratePair));
        assert_eq!(coefficient_law(&field("t^4"), &field("t^6"), 2), Err(Error::DegreeNotMultiple));
        assert_eq!(coefficient_law(&field("2*t^3"), &field("t^5"), 2), Err(Error::NonMonic));
    }
}
