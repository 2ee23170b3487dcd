//! Diagnostics for subalgebras of `Der(k[x_1..x_n])`: multivariate brackets,
//! the `x_1`-divisibility filtration and its quotient dimensions, iterated
//! bracket growth with a log-log slope estimate, abelianization codimension,
//! and component-space dimensions.
//!
//! Infinite-dimensionality is always reported as a verdict over a bound
//! schedule, never asserted: these quantities are semi-decidable at finite
//! truncation.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use rand_core::RngCore;

use crate::error::{Error, Result};
use crate::linalg::{intersect_coordinate_subspace, Row, SparseEchelon};
use crate::multipoly::{Monomial, MultiPoly};
use crate::rat::{self, Rat};

/// The vector field `Σ comps[i]·∂_{i+1}` over `n = comps.len()` variables.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WittElementN {
    comps: Vec<MultiPoly>,
}

/// Coordinate of a field: component index (outer key) and monomial, ordered
/// graded-lexicographically with `x1 > ... > xn`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KeyN {
    pub comp: usize,
    pub mono: Monomial,
}

impl Ord for KeyN {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.comp, &self.mono).cmp(&(other.comp, &other.mono))
    }
}

impl PartialOrd for KeyN {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl WittElementN {
    pub fn new(comps: Vec<MultiPoly>) -> Result<Self> {
        let n = comps.len();
        if comps.iter().any(|c| c.nvars() != n) {
            return Err(Error::VariableMismatch);
        }
        Ok(WittElementN { comps })
    }

    pub fn zero(nvars: usize) -> Self {
        WittElementN { comps: vec![MultiPoly::zero(nvars); nvars] }
    }

    /// `poly·∂_{comp+1}` (0-based component).
    pub fn single(nvars: usize, comp: usize, poly: MultiPoly) -> Result<Self> {
        if comp >= nvars || poly.nvars() != nvars {
            return Err(Error::VariableMismatch);
        }
        let mut comps = vec![MultiPoly::zero(nvars); nvars];
        comps[comp] = poly;
        Ok(WittElementN { comps })
    }

    pub fn nvars(&self) -> usize {
        self.comps.len()
    }

    pub fn comps(&self) -> &[MultiPoly] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(MultiPoly::is_zero)
    }

    /// Max total degree over the components; `None` for the zero field.
    pub fn total_degree(&self) -> Option<u32> {
        self.comps.iter().filter_map(MultiPoly::total_degree).max()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.nvars() != other.nvars() {
            return Err(Error::VariableMismatch);
        }
        let comps = self
            .comps
            .iter()
            .zip(&other.comps)
            .map(|(a, b)| a.add(b))
            .collect::<Result<_>>()?;
        Ok(WittElementN { comps })
    }

    pub fn scaled(&self, c: &Rat) -> Self {
        WittElementN { comps: self.comps.iter().map(|p| p.scaled(c)).collect() }
    }

    /// `[Σ u_i ∂_i, Σ v_j ∂_j] = Σ_j (Σ_i u_i ∂_i(v_j) - v_i ∂_i(u_j)) ∂_j`.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        let n = self.nvars();
        if n != other.nvars() {
            return Err(Error::VariableMismatch);
        }
        let mut comps = Vec::with_capacity(n);
        for j in 0..n {
            let mut acc = MultiPoly::zero(n);
            for i in 0..n {
                if !self.comps[i].is_zero() {
                    acc = acc.add(&self.comps[i].mul(&other.comps[j].partial_derivative(i))?)?;
                }
                if !other.comps[i].is_zero() {
                    acc = acc.sub(&other.comps[i].mul(&self.comps[j].partial_derivative(i))?)?;
                }
            }
            comps.push(acc);
        }
        Ok(WittElementN { comps })
    }

    pub fn coords(&self) -> Row<KeyN> {
        let mut row = BTreeMap::new();
        for (comp, p) in self.comps.iter().enumerate() {
            for (m, c) in p.terms() {
                row.insert(KeyN { comp, mono: m.clone() }, c.clone());
            }
        }
        row
    }

    pub fn from_coords(row: &Row<KeyN>, nvars: usize) -> Self {
        let mut out = WittElementN::zero(nvars);
        for (k, c) in row {
            out.comps[k.comp].add_term(k.mono.clone(), c.clone());
        }
        out
    }
}

/// All monomials in `nvars` variables of total degree `<= total`, in
/// increasing graded-lex order.
pub fn monomials_up_to(nvars: usize, total: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut current = vec![0u32; nvars];
    fn rec(out: &mut Vec<Monomial>, current: &mut Vec<u32>, var: usize, left: u32) {
        if var == current.len() {
            out.push(Monomial(current.clone()));
            return;
        }
        for e in 0..=left {
            current[var] = e;
            rec(out, current, var + 1, left - e);
        }
        current[var] = 0;
    }
    rec(&mut out, &mut current, 0, total);
    out.sort();
    out
}

/// Monomial spanning set of the full derivation algebra truncated at total
/// degree `total`.
pub fn full_wn_basis(nvars: usize, total: u32) -> Vec<WittElementN> {
    let mut out = Vec::new();
    for comp in 0..nvars {
        for m in monomials_up_to(nvars, total) {
            let mut p = MultiPoly::zero(nvars);
            p.add_term(m, Rat::from_integer(1.into()));
            out.push(WittElementN::single(nvars, comp, p).unwrap());
        }
    }
    out
}

/// Position in the `x_1`-divisibility filtration: components `<= j` (1-based)
/// require `x_1^{i+1}`, the rest require `x_1^i`. `(i, n)` is identified
/// with `(i+1, 0)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct FiltrationIndex {
    pub i: u32,
    pub j: usize,
}

impl FiltrationIndex {
    pub fn new(i: u32, j: usize, nvars: usize) -> Result<Self> {
        if j > nvars {
            return Err(Error::Precondition("filtration index j must satisfy j <= n"));
        }
        Ok(if j == nvars { FiltrationIndex { i: i + 1, j: 0 } } else { FiltrationIndex { i, j } })
    }

    pub fn successor(&self, nvars: usize) -> Self {
        FiltrationIndex::new(self.i, self.j + 1, nvars).unwrap()
    }

    /// Required `x_1`-exponent for the 0-based component `comp`.
    fn required(&self, comp: usize) -> u32 {
        if comp < self.j {
            self.i + 1
        } else {
            self.i
        }
    }
}

fn rows_up_to(elements: &[WittElementN], bound: u32) -> Vec<Row<KeyN>> {
    elements
        .iter()
        .filter(|e| e.total_degree().is_some_and(|d| d <= bound))
        .map(WittElementN::coords)
        .collect()
}

/// Exact intersection of the stored span with the filtration subspace,
/// truncated at total degree `bound`.
pub fn filtration_basis(
    elements: &[WittElementN],
    idx: FiltrationIndex,
    bound: u32,
) -> Result<Vec<WittElementN>> {
    let Some(first) = elements.first() else {
        return Ok(Vec::new());
    };
    let nvars = first.nvars();
    if elements.iter().any(|e| e.nvars() != nvars) {
        return Err(Error::VariableMismatch);
    }
    let rows = rows_up_to(elements, bound);
    let inter = intersect_coordinate_subspace(rows, |k: &KeyN| k.mono.0[0] >= idx.required(k.comp));
    Ok(inter.iter().map(|r| WittElementN::from_coords(r, nvars)).collect())
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Trend {
    Stabilized,
    Growing,
}

fn trend_of(dims: &[(u32, usize)]) -> Trend {
    match dims {
        [.., (_, a), (_, b)] if a == b => Trend::Stabilized,
        [_] | [] => Trend::Stabilized,
        _ => Trend::Growing,
    }
}

/// Dimensions of the filtration quotient at each bound of the schedule, with
/// a stabilized/growing verdict (evidence of infinite dimension, not proof).
pub fn filtration_quotient_dims(
    elements: &[WittElementN],
    idx: FiltrationIndex,
    schedule: &[u32],
) -> Result<(Vec<(u32, usize)>, Trend)> {
    let nvars = elements.first().map_or(1, WittElementN::nvars);
    let next = idx.successor(nvars);
    let mut dims = Vec::with_capacity(schedule.len());
    for &bound in schedule {
        let outer = filtration_basis(elements, idx, bound)?.len();
        let inner = filtration_basis(elements, next, bound)?.len();
        dims.push((bound, outer - inner));
    }
    let trend = trend_of(&dims);
    Ok((dims, trend))
}

/// Samples bracket pairs from the truncated filtration spanning set at level
/// `(i, j)` (requires `i >= 1`) and checks each bracket against the span at
/// level `(i, j+1)`. Only pairs whose bracket stays inside the truncation are
/// sampled; `true` means no sampled bracket escaped the inner span.
pub fn derived_inclusion_holds<R: RngCore>(
    elements: &[WittElementN],
    idx: FiltrationIndex,
    samples: u32,
    rng: &mut R,
) -> Result<bool> {
    if idx.i < 1 {
        return Err(Error::Precondition("derived inclusion is asserted for i >= 1"));
    }
    let Some(first) = elements.first() else {
        return Ok(true);
    };
    let nvars = first.nvars();
    let bound = elements
        .iter()
        .filter_map(WittElementN::total_degree)
        .max()
        .unwrap_or(0);
    let outer = filtration_basis(elements, idx, bound)?;
    let inner = filtration_basis(elements, idx.successor(nvars), bound)?;
    let mut inner_ech: SparseEchelon<KeyN> = SparseEchelon::new();
    for e in &inner {
        inner_ech.insert(e.coords());
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for a in 0..outer.len() {
        for b in 0..outer.len() {
            let da = outer[a].total_degree().unwrap_or(0);
            let db = outer[b].total_degree().unwrap_or(0);
            if da + db <= bound + 1 {
                pairs.push((a, b));
            }
        }
    }
    if pairs.is_empty() {
        return Ok(true);
    }
    for _ in 0..samples {
        let (a, b) = pairs[(rng.next_u64() % pairs.len() as u64) as usize];
        let w = outer[a].bracket(&outer[b])?;
        if w.is_zero() {
            continue;
        }
        if !inner_ech.contains(w.coords()) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GrowthVerdict {
    Bounded,
    Polynomial,
    SaturatedAtBound,
}

#[derive(Clone, Debug)]
pub struct GrowthReport {
    /// `dims[k]` is the dimension of the cumulative span `Σ_{m<=k} C_m(V)`.
    pub dims: Vec<usize>,
    /// Least-squares slope of the log-log tail; the growth exponent estimate.
    pub slope: Option<f64>,
    pub verdict: GrowthVerdict,
}

/// Iterated bracket growth `C_0 = V`, `C_k = [C_{k-1}, V]`, reported through
/// the cumulative spans `U_k = U_{k-1} + [U_{k-1}, V]` (the identity
/// `Σ_{m<=k} C_m = U_k` lets each step bracket only the newly added rows).
///
/// `cell_budget` caps the total number of stored coefficients; hitting it
/// stops the iteration early with a `SaturatedAtBound` verdict.
pub fn growth_sequence(
    generators: &[WittElementN],
    k_steps: u32,
    cell_budget: Option<usize>,
) -> Result<GrowthReport> {
    if generators.is_empty() {
        return Err(Error::NoGenerators);
    }
    let nvars = generators[0].nvars();
    if generators.iter().any(|g| g.nvars() != nvars) {
        return Err(Error::VariableMismatch);
    }
    let mut ech: SparseEchelon<KeyN> = SparseEchelon::new();
    let mut frontier: Vec<WittElementN> = Vec::new();
    for g in generators {
        if let Some((_, row)) = ech.insert(g.coords()) {
            frontier.push(WittElementN::from_coords(&row, nvars));
        }
    }
    let mut dims = vec![ech.dim()];
    let mut saturated = false;
    'outer: for _ in 1..=k_steps {
        let mut next = Vec::new();
        for b in &frontier {
            for v in generators {
                let w = b.bracket(v)?;
                if w.is_zero() {
                    continue;
                }
                if let Some((_, row)) = ech.insert(w.coords()) {
                    next.push(WittElementN::from_coords(&row, nvars));
                }
            }
        }
        dims.push(ech.dim());
        frontier = next;
        if let Some(budget) = cell_budget {
            if ech.cells() > budget {
                saturated = true;
                break 'outer;
            }
        }
        if frontier.is_empty() {
            while dims.len() <= k_steps as usize {
                dims.push(ech.dim());
            }
            break;
        }
    }
    let slope = fit_tail_slope(&dims);
    let verdict = if saturated {
        GrowthVerdict::SaturatedAtBound
    } else if dims.len() >= 3 && dims[dims.len() - 1] == dims[dims.len() - 3] {
        GrowthVerdict::Bounded
    } else {
        GrowthVerdict::Polynomial
    };
    Ok(GrowthReport { dims, slope, verdict })
}

/// Least squares on `(ln k, ln dims[k])` over the last `max(5, K/2)` points;
/// `None` when fewer than 5 tail points exist.
#[allow(clippy::needless_range_loop)]
fn fit_tail_slope(dims: &[usize]) -> Option<f64> {
    let k_max = dims.len().checked_sub(1)?;
    let tail = 5usize.max(k_max / 2).min(k_max);
    if tail < 5 {
        return None;
    }
    let mut sx = 0.0f64;
    let mut sy = 0.0f64;
    let mut sxx = 0.0f64;
    let mut sxy = 0.0f64;
    let n = tail as f64;
    for k in (k_max - tail + 1)..=k_max {
        let x = libm::log(k as f64);
        let y = libm::log(dims[k] as f64);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    let denom = n * sxx - sx * sx;
    if denom == 0.0 {
        return None;
    }
    Some((n * sxy - sx * sy) / denom)
}

/// Codimension of the visible derived part inside `L` at each bound of the
/// schedule: the span of pairwise brackets that stay inside the truncated
/// span. For a bracket-closed spanning set this is `dim(L/[L,L])` truncated;
/// brackets that leave the span or the bound are dropped.
pub fn abelianization_dims(
    elements: &[WittElementN],
    schedule: &[u32],
) -> Result<(Vec<(u32, usize)>, Trend)> {
    let mut out = Vec::with_capacity(schedule.len());
    for &bound in schedule {
        let kept: Vec<&WittElementN> = elements
            .iter()
            .filter(|e| e.total_degree().is_some_and(|d| d <= bound))
            .collect();
        let mut full: SparseEchelon<KeyN> = SparseEchelon::new();
        for e in &kept {
            full.insert(e.coords());
        }
        let mut derived: SparseEchelon<KeyN> = SparseEchelon::new();
        for a in 0..kept.len() {
            for b in (a + 1)..kept.len() {
                let w = kept[a].bracket(kept[b])?;
                if w.is_zero() {
                    continue;
                }
                if w.total_degree().is_some_and(|d| d <= bound) && full.contains(w.coords()) {
                    derived.insert(w.coords());
                }
            }
        }
        out.push((bound, full.dim() - derived.dim()));
    }
    let trend = trend_of(&out);
    Ok((out, trend))
}

/// Dimension of the span of the `comp`-th components (1-based) of the
/// truncated basis elements, per bound.
pub fn component_dims(
    elements: &[WittElementN],
    comp: usize,
    schedule: &[u32],
) -> Result<Vec<(u32, usize)>> {
    let Some(first) = elements.first() else {
        return Ok(schedule.iter().map(|&b| (b, 0)).collect());
    };
    if comp == 0 || comp > first.nvars() {
        return Err(Error::Precondition("component index is 1-based and at most n"));
    }
    let mut out = Vec::with_capacity(schedule.len());
    for &bound in schedule {
        let mut ech: SparseEchelon<Monomial> = SparseEchelon::new();
        for e in elements {
            if e.total_degree().is_none_or(|d| d > bound) {
                continue;
            }
            let row: Row<Monomial> = e.comps()[comp - 1]
                .terms()
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect();
            ech.insert(row);
        }
        out.push((bound, ech.dim()));
    }
    Ok(out)
}

/// Checks the closed-form expansion of `[x1^p f ∂_k, x1^q g ∂_l]`:
/// `x1^{p+q-1}((x1 f ∂_k(g) + δ_{1,k} q f g)∂_l - (x1 ∂_l(f) g + δ_{1,l} p f g)∂_k)`
/// against the direct bracket, exactly. `k`, `l` are 1-based.
pub fn expansion_identity_holds(
    f: &MultiPoly,
    g: &MultiPoly,
    p: u32,
    q: u32,
    k: usize,
    l: usize,
) -> Result<bool> {
    let n = f.nvars();
    if g.nvars() != n {
        return Err(Error::VariableMismatch);
    }
    if k == 0 || k > n || l == 0 || l > n {
        return Err(Error::Precondition("component indices are 1-based and at most n"));
    }
    let k0 = k - 1;
    let l0 = l - 1;
    let lhs_u = WittElementN::single(n, k0, f.mul_var_power(0, p))?;
    let lhs_v = WittElementN::single(n, l0, g.mul_var_power(0, q))?;
    let lhs = lhs_u.bracket(&lhs_v)?;

    // The x1^{p+q-1} prefix is folded into each summand so the case
    // p + q = 0 (where the delta terms vanish) never forms x1^{-1}.
    let mut rhs = WittElementN::single(n, l0, f.mul(&g.partial_derivative(k0))?.mul_var_power(0, p + q))?;
    rhs = rhs.add(&WittElementN::single(
        n,
        k0,
        f.partial_derivative(l0).mul(g)?.mul_var_power(0, p + q).neg(),
    )?)?;
    if k0 == 0 && q > 0 {
        rhs = rhs.add(&WittElementN::single(
            n,
            l0,
            f.mul(g)?.scaled(&rat::int(q as i64)).mul_var_power(0, p + q - 1),
        )?)?;
    }
    if l0 == 0 && p > 0 {
        rhs = rhs.add(&WittElementN::single(
            n,
            k0,
            f.mul(g)?.scaled(&rat::int(p as i64)).mul_var_power(0, p + q - 1).neg(),
        )?)?;
    }
    Ok(lhs == rhs)
}

fn binom_signed(n: i64, k: i64) -> u64 {
    if n < 0 || k < 0 || k > n {
        0
    } else {
        num_integer::binomial(n as u64, k as u64)
    }
}

/// `dim k[x_1..x_n]_{<= total} = C(n + total, n)`.
pub fn poly_space_dim(nvars: u32, total: u32) -> u64 {
    binom_signed((nvars + total) as i64, nvars as i64)
}

/// Codimension of `(x_1^2) ∩ k[x_1..x_n]_{<= total}` inside
/// `k[x_1..x_n]_{<= total}`: `C(total + n - 1, n - 1) + C(total + n - 2, n - 1)`.
pub fn codim_x1_squared(nvars: u32, total: u32) -> u64 {
    let n = nvars as i64;
    let l = total as i64;
    binom_signed(l + n - 1, n - 1) + binom_signed(l + n - 2, n - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mp(s: &str, n: usize) -> MultiPoly {
        MultiPoly::parse(s).unwrap().padded(n)
    }

    fn el(n: usize, comps: &[&str]) -> WittElementN {
        WittElementN::new(comps.iter().map(|s| mp(s, n)).collect()).unwrap()
    }

    #[test]
    fn bracket_examples() {
        // [x1 ∂2, x2 ∂1] = x1 ∂1 - x2 ∂2
        let u = el(2, &["0", "x1"]);
        let v = el(2, &["x2", "0"]);
        assert_eq!(u.bracket(&v).unwrap(), el(2, &["x1", "-x2"]));
        // Weyl relation [∂1, x1 ∂1] = ∂1
        let a = el(2, &["1", "0"]);
        let b = el(2, &["x1", "0"]);
        assert_eq!(a.bracket(&b).unwrap(), el(2, &["1", "0"]));
        // antisymmetry on equal arguments
        let u = el(3, &["x1*x2", "x3^2", "1"]);
        assert!(u.bracket(&u).unwrap().is_zero());
    }

    #[test]
    fn expansion_identity_examples() {
        let t = expansion_identity_holds(&mp("x2", 2), &mp("x1", 2), 1, 1, 2, 1).unwrap();
        assert!(t);
        let ones = mp("1", 2);
        assert!(expansion_identity_holds(&ones, &ones, 0, 0, 1, 1).unwrap());
        assert!(expansion_identity_holds(&mp("x1*x2", 3), &mp("x3", 3), 2, 1, 1, 3).unwrap());
    }

    #[test]
    fn filtration_w2_example() {
        let w2 = full_wn_basis(2, 6);
        let idx = FiltrationIndex::new(1, 0, 2).unwrap();
        let basis = filtration_basis(&w2, idx, 6).unwrap();
        // all x1·m·∂_1 and x1·m·∂_2 with deg(x1·m) <= 6
        let per_comp = monomials_up_to(2, 5).len();
        assert_eq!(basis.len(), 2 * per_comp);
        // (0,0) imposes nothing
        let idx0 = FiltrationIndex::new(0, 0, 2).unwrap();
        assert_eq!(filtration_basis(&w2, idx0, 6).unwrap().len(), w2.len());
        // span{∂2} has no x1 factor
        let d2 = vec![el(2, &["0", "1"])];
        assert!(filtration_basis(&d2, idx, 6).unwrap().is_empty());
    }

    #[test]
    fn filtration_wraps_at_n() {
        let idx = FiltrationIndex::new(1, 2, 2).unwrap();
        assert_eq!(idx, FiltrationIndex { i: 2, j: 0 });
    }

    #[test]
    fn quotient_dims_w2() {
        let w2 = full_wn_basis(2, 8);
        let idx = FiltrationIndex::new(1, 0, 2).unwrap();
        let (dims, trend) = filtration_quotient_dims(&w2, idx, &[4, 6, 8]).unwrap();
        assert_eq!(dims, vec![(4, 4), (6, 6), (8, 8)]);
        assert_eq!(trend, Trend::Growing);
    }

    #[test]
    fn quotient_dims_single_element() {
        // x1∂1 lies in L_{1,0} but not in L_{1,1} (which needs x1^2 there);
        // x1^2∂1 lies in both, so its quotient class vanishes.
        let l = vec![el(2, &["x1", "0"])];
        let idx = FiltrationIndex::new(1, 0, 2).unwrap();
        let (dims, trend) = filtration_quotient_dims(&l, idx, &[4, 6]).unwrap();
        assert_eq!(dims, vec![(4, 1), (6, 1)]);
        assert_eq!(trend, Trend::Stabilized);
        let l = vec![el(2, &["x1^2", "0"])];
        let (dims, _) = filtration_quotient_dims(&l, idx, &[4, 6]).unwrap();
        assert_eq!(dims, vec![(4, 0), (6, 0)]);
    }

    #[test]
    fn quotient_dims_zero() {
        let (dims, trend) =
            filtration_quotient_dims(&[], FiltrationIndex { i: 1, j: 0 }, &[4, 6]).unwrap();
        assert_eq!(dims, vec![(4, 0), (6, 0)]);
        assert_eq!(trend, Trend::Stabilized);
    }

    #[test]
    fn derived_inclusion_w2() {
        use rand_core::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let w2 = full_wn_basis(2, 5);
        for j in 0..2 {
            let idx = FiltrationIndex::new(1, j, 2).unwrap();
            assert!(derived_inclusion_holds(&w2, idx, 40, &mut rng).unwrap());
        }
        let err = derived_inclusion_holds(&w2, FiltrationIndex { i: 0, j: 0 }, 5, &mut rng);
        assert!(matches!(err, Err(Error::Precondition(_))));
    }

    #[test]
    fn growth_single_generator_is_bounded() {
        let gens = vec![el(1, &["1"])];
        let report = growth_sequence(&gens, 10, None).unwrap();
        assert_eq!(report.dims, vec![1; 11]);
        assert_eq!(report.verdict, GrowthVerdict::Bounded);
    }

    #[test]
    fn growth_w1_pair_is_linear() {
        let gens = vec![el(1, &["1"]), el(1, &["x1^3"])];
        let report = growth_sequence(&gens, 12, None).unwrap();
        assert!(report.dims.windows(2).all(|w| w[0] <= w[1]));
        assert_eq!(report.verdict, GrowthVerdict::Polynomial);
        // consistency bound for k >= 1: dims[k] <= n·C(n + N·k, n), N = 3
        for (k, dim) in report.dims.iter().enumerate().skip(1) {
            assert!(*dim as u64 <= poly_space_dim(1, 3 * k as u32));
        }
    }

    #[test]
    fn growth_sl2_is_bounded() {
        // ∂ and x^2∂ close up with x∂ into a three-dimensional subalgebra.
        let gens = vec![el(1, &["1"]), el(1, &["x1^2"])];
        let report = growth_sequence(&gens, 12, None).unwrap();
        assert_eq!(report.dims.last(), Some(&3));
        assert_eq!(report.verdict, GrowthVerdict::Bounded);
    }

    #[test]
    fn growth_budget_saturates() {
        let gens = vec![el(1, &["1"]), el(1, &["x1^3"])];
        let report = growth_sequence(&gens, 30, Some(10)).unwrap();
        assert_eq!(report.verdict, GrowthVerdict::SaturatedAtBound);
        assert!(report.dims.len() < 31);
    }

    #[test]
    fn abelianization_examples() {
        // abelian span {x2^j ∂1 : j <= D}: codim = D + 1, growing
        let abelian: Vec<WittElementN> = (0..=8u32)
            .map(|j| {
                let mut p = MultiPoly::zero(2);
                p.add_term(Monomial(vec![0, j]), rat::int(1));
                WittElementN::single(2, 0, p).unwrap()
            })
            .collect();
        let (dims, trend) = abelianization_dims(&abelian, &[4, 6, 8]).unwrap();
        assert_eq!(dims, vec![(4, 5), (6, 7), (8, 9)]);
        assert_eq!(trend, Trend::Growing);
        // W1 truncated is perfect within bound
        let w1 = full_wn_basis(1, 8);
        let (dims, _) = abelianization_dims(&w1, &[8]).unwrap();
        assert_eq!(dims, vec![(8, 0)]);
        // one-dimensional span
        let span_t = vec![el(1, &["x1"])];
        let (dims, trend) = abelianization_dims(&span_t, &[4, 6]).unwrap();
        assert_eq!(dims, vec![(4, 1), (6, 1)]);
        assert_eq!(trend, Trend::Stabilized);
    }

    #[test]
    fn component_dim_examples() {
        let w2 = full_wn_basis(2, 6);
        let dims = component_dims(&w2, 1, &[6]).unwrap();
        assert_eq!(dims, vec![(6, poly_space_dim(2, 6) as usize)]);
        let l = vec![el(2, &["x2", "0"]), el(2, &["x2^2", "0"])];
        assert_eq!(component_dims(&l, 1, &[4]).unwrap(), vec![(4, 2)]);
        let l = vec![el(2, &["0", "x2"])];
        assert_eq!(component_dims(&l, 1, &[4]).unwrap(), vec![(4, 0)]);
    }

    #[test]
    fn counting_formulas() {
        assert_eq!(poly_space_dim(2, 3), 10);
        for n in 0..5 {
            assert_eq!(poly_space_dim(n, 0), 1);
        }
        assert_eq!(codim_x1_squared(2, 4), 9);
        // brute-force check against monomial enumeration
        for n in 1..=3usize {
            for l in 0..=6u32 {
                let total = monomials_up_to(n, l).len() as u64;
                assert_eq!(poly_space_dim(n as u32, l), total);
                let not_div = monomials_up_to(n, l)
                    .into_iter()
                    .filter(|m| m.0[0] < 2)
                    .count() as u64;
                assert_eq!(codim_x1_squared(n as u32, l), not_div);
            }
        }
    }

    #[test]
    fn filtration_nesting() {
        let w2 = full_wn_basis(2, 5);
        let bound = 5;
        for i in 0..2u32 {
            for j in 0..2usize {
                let idx = FiltrationIndex::new(i, j, 2).unwrap();
                let outer = filtration_basis(&w2, idx, bound).unwrap();
                let inner = filtration_basis(&w2, idx.successor(2), bound).unwrap();
                let mut ech: SparseEchelon<KeyN> = SparseEchelon::new();
                for e in &outer {
                    ech.insert(e.coords());
                }
                for e in &inner {
                    assert!(ech.contains(e.coords()));
                }
            }
        }
    }
}
