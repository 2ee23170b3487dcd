//! Classification of infinite-dimensional subalgebras of `k[t]∂`.
//!
//! From generators of `L`, the pipeline computes the gcd `d` of attained
//! degrees, the canonical monic polynomial `f` with `f(0) = 0` and
//! `deg f = d` whose powers of the chart series `s` carry `L`, the minimal
//! pair `(g_f, h_f)` with `f'·g_f = h_f(f)`, the minimal monic `g` with
//! `k[f]g∂ ⊆ L`, and the codimension of `L` in `k[f]g_f∂`. Every inclusion is
//! verified on the truncated basis and recorded in the certificates; when a
//! verification window is too small the pipeline escalates its bounds.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::hensel::{hensel_root, SeriesChart};
use crate::laurent::LaurentSeries;
use crate::linalg::solve_dense;
use crate::rat::Rat;
use crate::unipoly::UniPoly;
use crate::witt1::{SubalgebraBasis1, WittElement1};

/// gcd of the leading degrees of the echelon basis. For non-saturated bases
/// this is an upper-bound estimate (in the divisibility order) of the true
/// degree gcd; the caller certifies it downstream.
pub fn degree_gcd(basis: &SubalgebraBasis1) -> i64 {
    basis.degree_gcd()
}

/// `true` iff `u = g∂` restricts to a derivation of `k[f]`, i.e. `f'·g` is a
/// polynomial in `f`.
pub fn is_field_derivation(f: &UniPoly, u: &WittElement1) -> bool {
    (&f.derivative() * u.poly()).as_polynomial_in(f).is_some()
}

/// The smallest monic `g` such that `g∂` restricts to a derivation of
/// `k[f]`, together with the witness `h` satisfying `f'·g = h(f)`.
///
/// For each candidate degree `m` (which must satisfy `d - 1 + m ≡ 0 mod d`)
/// the condition is an exact linear system over the coefficients of `g`.
/// A solution of degree `(d-1)^2` always exists — the norm of `f'` in the
/// extension `k(f) ⊆ k(t)` divided by `f'` — so running past that bound is an
/// internal error, not a search that should be extended.
pub fn minimal_field_derivation(f: &UniPoly) -> Result<(UniPoly, UniPoly)> {
    let d = f.degree().filter(|d| *d >= 1).ok_or(Error::DegreeTooSmall)?;
    let fp = f.derivative();
    let bound = 1usize.max((d - 1) * (d - 1));
    for m in 0..=bound {
        if (d - 1 + m) % d != 0 {
            continue;
        }
        let levels = m.div_ceil(d) + 1;
        let rhs: Vec<Rat> = obstruction(&(&fp * &UniPoly::monomial(num_traits::One::one(), m)), f, levels)
            .into_iter()
            .map(|c| -c)
            .collect();
        let cols: Vec<Vec<Rat>> = (0..m)
            .map(|j| obstruction(&(&fp * &UniPoly::monomial(num_traits::One::one(), j)), f, levels))
            .collect();
        let rows: Vec<Vec<Rat>> = (0..rhs.len())
            .map(|r| cols.iter().map(|col| col[r].clone()).collect())
            .collect();
        if let Some(a) = solve_dense(&rows, &rhs) {
            let mut g = UniPoly::monomial(num_traits::One::one(), m);
            for (j, c) in a.into_iter().enumerate() {
                g = &g + &UniPoly::monomial(c, j);
            }
            let h = (&fp * &g)
                .as_polynomial_in(f)
                .expect("solved system certifies membership");
            return Ok((g, h));
        }
    }
    Err(Error::SearchExceeded)
}

/// Non-constant parts of the `f`-adic expansion of `p`, flattened over a
/// fixed number of levels: `p` is a polynomial in `f` iff this vanishes.
fn obstruction(p: &UniPoly, f: &UniPoly, levels: usize) -> Vec<Rat> {
    let d = f.degree().expect("deg f >= 1");
    let mut out = Vec::with_capacity(levels * (d - 1));
    let mut cur = p.clone();
    for _ in 0..levels {
        let (q, r) = cur.divrem(f).expect("nonzero divisor");
        for k in 1..d {
            out.push(r.coeff(k));
        }
        cur = q;
    }
    debug_assert!(cur.is_zero(), "level count must exhaust the degree");
    out
}

/// The unique monic `f` with `f(0) = 0` and `deg f = d` lying in the even
/// subfield `k((s^{-d}))` of the chart derived from a basis element.
///
/// Writing `f = t^d + c_{d-1}t^{d-1} + ... + c_1 t`, the conditions that the
/// `s`-expansion of `f` vanish at every exponent not divisible by `d` are
/// unitriangular in the `c_j`; the coefficients at exponents `d-1, ..., 1`
/// pin every unknown and the remaining conditions inside the resolvable
/// window are verified.
pub fn ratio_field_generator(basis: &SubalgebraBasis1, steps: u32) -> Result<UniPoly> {
    ratio_field_generator_detailed(basis, steps).map(|(f, _)| f)
}

#[derive(Clone, Debug)]
pub(crate) struct ChartCertificate {
    pub chart_element_degree: i64,
    pub window_floor: Option<i64>,
}

pub(crate) fn ratio_field_generator_detailed(
    basis: &SubalgebraBasis1,
    steps: u32,
) -> Result<(UniPoly, ChartCertificate)> {
    let d = basis.degree_gcd();
    if d < 1 {
        return Err(Error::Degenerate);
    }
    let chart_el = basis
        .elements()
        .into_iter()
        .find(|e| e.degree().is_some_and(|deg| deg >= 0))
        .ok_or(Error::Degenerate)?;
    let chart_el_degree = chart_el.degree().unwrap();
    let chart: SeriesChart = hensel_root(chart_el.poly(), steps)?;

    // s-expansions of t^j for j = 1..=d; each is unitriangular with leading
    // index j.
    let mut expansions: Vec<BTreeMap<i64, Rat>> = Vec::with_capacity(d as usize);
    let mut floor: Option<i64> = None;
    for j in 1..=d {
        let (map, fl) = chart.expand(&LaurentSeries::from_poly(&UniPoly::monomial(
            num_traits::One::one(),
            j as usize,
        )))?;
        floor = match (floor, fl) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        };
        expansions.push(map);
    }
    let coeff_at = |j: i64, idx: i64| -> Rat {
        expansions[(j - 1) as usize]
            .get(&idx)
            .cloned()
            .unwrap_or_else(Rat::zero)
    };
    if let Some(fl) = floor {
        if fl >= 1 && d > 1 {
            return Err(Error::IncreaseSteps { required: steps + fl as u32 + 1 });
        }
    }
    // Solve c_{d-1}, ..., c_1 top-down.
    let mut c = vec![Rat::zero(); d as usize];
    for j in (1..d).rev() {
        let mut b = coeff_at(d, j);
        for i in (j + 1)..d {
            b += &c[i as usize] * &coeff_at(i, j);
        }
        c[j as usize] = -b;
    }
    // Verify every remaining resolvable index not divisible by d.
    let verify_floor = floor.unwrap_or(i64::MIN / 2);
    for idx in (verify_floor + 1..=0).rev() {
        if idx.rem_euclid(d) == 0 {
            continue;
        }
        let mut b = coeff_at(d, idx);
        for i in 1..d {
            b += &c[i as usize] * &coeff_at(i, idx);
        }
        if !b.is_zero() {
            return Err(Error::BoundInsufficient);
        }
    }
    let mut f = UniPoly::monomial(num_traits::One::one(), d as usize);
    for j in 1..d {
        f = &f + &UniPoly::monomial(c[j as usize].clone(), j as usize);
    }
    Ok((f, ChartCertificate { chart_element_degree: chart_el_degree, window_floor: floor }))
}

/// The minimal monic `g` with `k[f]g∂` contained in the span, verified by
/// membership of `f^k·g∂` for every `k` inside the attained-degree window.
/// Returns the number of membership certificates checked.
///
/// Candidate order: the monic gcd of all observed `q` (where `f'·g_i = q_i(f)`
/// over the echelon elements) is provably minimal whenever its verification
/// passes, because the gcd divides the `q` of every element of the span. On
/// failure the candidate is rebuilt from the elements whose own
/// `k[f]`-module closure verifies (sound by the Bezout combination), then
/// lowered greedily through verified gcds with the observed `q`.
pub fn minimal_submodule_generator(
    basis: &SubalgebraBasis1,
    f: &UniPoly,
) -> Result<(UniPoly, usize)> {
    let d = f.degree().filter(|d| *d >= 1).ok_or(Error::DegreeTooSmall)? as i64;
    let fp = f.derivative();
    let elements = basis.elements();
    let max_att = basis.max_attained_degree().ok_or(Error::Degenerate)?;
    let qs: Vec<UniPoly> = elements
        .iter()
        .map(|e| {
            (&fp * e.poly())
                .as_polynomial_in(f)
                .ok_or(Error::BoundInsufficient)
        })
        .collect::<Result<_>>()?;

    let verify = |q: &UniPoly| -> Option<(UniPoly, usize)> {
        let g = q.compose(f).div_exact(&fp)?.monic();
        let g_degree = g.degree()? as i64 - 1;
        if g_degree > max_att {
            return None;
        }
        let mut checked = 0usize;
        let mut power = UniPoly::one();
        let mut k = 0i64;
        while g_degree + k * d <= max_att {
            let el = WittElement1::new(&power * &g);
            if !basis.contains(&el).ok()? {
                return None;
            }
            checked += 1;
            power = &power * f;
            k += 1;
        }
        Some((g, checked))
    };

    let gcd_all = qs.iter().fold(UniPoly::zero(), |acc, q| UniPoly::gcd(&acc, q));
    if let Some((g, checked)) = verify(&gcd_all) {
        return Ok((g, checked));
    }

    // Elements whose own k[f]-multiples all lie in the span.
    let single_ok = |e: &WittElement1| -> bool {
        let e_deg = match e.degree() {
            Some(deg) => deg,
            None => return true,
        };
        let mut power = f.clone();
        let mut k = 1i64;
        while e_deg + k * d <= max_att {
            let el = WittElement1::new(&power * e.poly());
            match basis.contains(&el) {
                Ok(true) => {}
                _ => return false,
            }
            power = &power * f;
            k += 1;
        }
        true
    };
    let verified_qs: Vec<&UniPoly> = elements
        .iter()
        .zip(qs.iter())
        .filter(|(e, _)| single_ok(e))
        .map(|(_, q)| q)
        .collect();
    if verified_qs.is_empty() {
        return Err(Error::BoundInsufficient);
    }
    let mut cand = verified_qs
        .iter()
        .fold(UniPoly::zero(), |acc, q| UniPoly::gcd(&acc, q));
    let mut best = verify(&cand).ok_or(Error::BoundInsufficient)?;
    loop {
        let mut improved = false;
        for q in &qs {
            let r = UniPoly::gcd(&cand, q);
            if r.degree() < cand.degree() {
                if let Some(res) = verify(&r) {
                    cand = r;
                    best = res;
                    improved = true;
                }
            }
        }
        if !improved {
            return Ok(best);
        }
    }
}

/// Codimension of the attained degree set inside the degree set of
/// `k[f]g_f∂`, counted up to the maximal attained degree. The count is
/// certified stable when no degree is missing within the last two periods.
fn codim_count(basis: &SubalgebraBasis1, f: &UniPoly, g_f: &UniPoly) -> Result<(usize, bool)> {
    let d = f.degree().unwrap() as i64;
    let e0 = g_f.degree().ok_or(Error::Degenerate)? as i64 - 1;
    let attained = basis.leading_degrees();
    let max_att = *attained.last().ok_or(Error::Degenerate)?;
    for e in &attained {
        if *e < e0 || (*e - e0).rem_euclid(d) != 0 {
            return Err(Error::BoundInsufficient);
        }
    }
    let attained: alloc::collections::BTreeSet<i64> = attained.into_iter().collect();
    let mut missing = 0usize;
    let mut missing_in_tail = false;
    let mut e = e0;
    while e <= max_att {
        if !attained.contains(&e) {
            missing += 1;
            if e > max_att - 2 * d {
                missing_in_tail = true;
            }
        }
        e += d;
    }
    Ok((missing, !missing_in_tail))
}

#[derive(Clone, Debug, Default)]
pub struct Certificates {
    pub degree_bound: i64,
    pub steps: u32,
    pub basis_dim: usize,
    pub max_attained_degree: i64,
    /// Degree of the basis element whose chart carried the computation.
    pub chart_element_degree: i64,
    /// Resolvable-window floor of the f-solve verification (exclusive).
    pub window_floor: Option<i64>,
    /// Basis elements verified to restrict to derivations of `k[f]`.
    pub field_membership_checked: usize,
    /// Membership certificates `f^k·g_min∂ ∈ L` checked.
    pub module_members_checked: usize,
    pub codim_stabilized: bool,
    /// Bounds tried after the initial ones, in order.
    pub escalations: Vec<(i64, u32)>,
}

#[derive(Clone, Debug)]
pub struct Classification {
    /// Monic, `f(0) = 0`, `deg f = d`.
    pub f: UniPoly,
    pub d: i64,
    /// Minimal monic `g_f` with `f'·g_f = h_f(f)`.
    pub g_f: UniPoly,
    pub h_f: UniPoly,
    /// Minimal monic `g` with `k[f]g∂ ⊆ L` on the certified window.
    pub g_min: UniPoly,
    pub codim: usize,
    pub certificates: Certificates,
}

#[derive(Clone, Debug)]
pub struct ClassifyOptions {
    pub bound: i64,
    pub steps: u32,
    pub max_bound: i64,
    pub max_steps: u32,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { bound: 40, steps: 16, max_bound: 512, max_steps: 256 }
    }
}

/// The full pipeline with bound escalation: closure, degree gcd, canonical
/// `f`, minimal pair, field-membership checks, minimal submodule generator,
/// codimension. Doubles `bound` and `steps` (up to the configured maxima)
/// whenever a verification step reports insufficiency.
pub fn classify(generators: &[WittElement1], opts: &ClassifyOptions) -> Result<Classification> {
    let mut bound = opts.bound;
    let mut steps = opts.steps;
    let mut escalations: Vec<(i64, u32)> = Vec::new();
    loop {
        match classify_once(generators, bound, steps) {
            Ok(mut c) => {
                c.certificates.escalations = escalations;
                return Ok(c);
            }
            Err(Error::BoundInsufficient) | Err(Error::IncreaseSteps { .. }) | Err(Error::OutOfBound) => {
                if bound >= opts.max_bound && steps >= opts.max_steps {
                    return Err(Error::BoundExhausted);
                }
                bound = (bound * 2).min(opts.max_bound);
                steps = (steps * 2).min(opts.max_steps);
                escalations.push((bound, steps));
            }
            Err(e) => return Err(e),
        }
    }
}

fn classify_once(generators: &[WittElement1], bound: i64, steps: u32) -> Result<Classification> {
    let basis = SubalgebraBasis1::closure(generators, bound)?;
    if basis.dim() == 0 {
        return Err(Error::Degenerate);
    }
    if basis.saturated() {
        return Err(Error::FiniteDimensional);
    }
    let d = basis.degree_gcd();
    if d < 1 {
        return Err(Error::Degenerate);
    }
    let (f, chart_cert) = ratio_field_generator_detailed(&basis, steps)?;
    let (g_f, h_f) = minimal_field_derivation(&f)?;
    let mut field_checked = 0usize;
    for e in basis.elements() {
        if !is_field_derivation(&f, &e) {
            return Err(Error::BoundInsufficient);
        }
        field_checked += 1;
    }
    let (g_min, members_checked) = minimal_submodule_generator(&basis, &f)?;
    let (codim, stabilized) = codim_count(&basis, &f, &g_f)?;
    if !stabilized {
        return Err(Error::BoundInsufficient);
    }
    Ok(Classification {
        d,
        g_f,
        h_f,
        g_min,
        codim,
        certificates: Certificates {
            degree_bound: bound,
            steps,
            basis_dim: basis.dim(),
            max_attained_degree: basis.max_attained_degree().unwrap(),
            chart_element_degree: chart_cert.chart_element_degree,
            window_floor: chart_cert.window_floor,
            field_membership_checked: field_checked,
            module_members_checked: members_checked,
            codim_stabilized: stabilized,
            escalations: Vec::new(),
        },
        f,
    })
}
