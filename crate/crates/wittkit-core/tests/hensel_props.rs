//! Residual-order, determinism, round-trip, and alignment properties of the
//! series engine.

use rand_core::RngCore;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wittkit_core::hensel::{coefficient_law, hensel_root, veronese_member, LawCheck};
use wittkit_core::rat::int;
use wittkit_core::{LaurentSeries, SubalgebraBasis1, UniPoly, WittElement1};

fn random_monic(rng: &mut ChaCha8Rng, deg_range: core::ops::RangeInclusive<usize>) -> UniPoly {
    let lo = *deg_range.start();
    let hi = *deg_range.end();
    let deg = lo + (rng.next_u64() as usize) % (hi - lo + 1);
    let mut coeffs: Vec<_> = (0..deg).map(|_| int(rng.next_u64() as i64 % 4 - 1)).collect();
    coeffs.push(int(1));
    UniPoly::from_coeffs(coeffs)
}

#[test]
fn residual_order_random_monic_inputs() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..15 {
        let g = random_monic(&mut rng, 1..=6);
        let d = g.degree().unwrap() as i64;
        let chart = hensel_root(&g, 12).unwrap();
        let ord = chart.residual_order(&g).unwrap();
        assert!(
            ord.unwrap_or(i64::MIN) < d - 12,
            "residual too large for g = {g}: ord = {ord:?}"
        );
    }
}

#[test]
fn iteration_is_deterministic_and_prefix_stable() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..10 {
        let g = random_monic(&mut rng, 1..=5);
        let a = hensel_root(&g, 9).unwrap();
        let b = hensel_root(&g, 9).unwrap();
        assert_eq!(a.series(), b.series());
        let long = hensel_root(&g, 17).unwrap();
        for e in (-8..=1).rev() {
            assert_eq!(a.series().known_coeff(e), long.series().known_coeff(e));
        }
    }
}

#[test]
fn expansion_round_trip_random() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..10 {
        let g = random_monic(&mut rng, 1..=4);
        let chart = hensel_root(&g, 14).unwrap();
        let a = LaurentSeries::from_poly(&random_monic(&mut rng, 1..=5));
        let (coeffs, floor) = chart.expand(&a).unwrap();
        let mut back = LaurentSeries::zero();
        for (k, b) in &coeffs {
            back = &back + &chart.series().power(*k).unwrap().scaled(b);
        }
        let diff = &back - &a;
        assert!(diff.is_zero_to_trunc(), "round trip failed below floor {floor:?}");
    }
}

/// One Veronese member forces all members, on truncated closures of
/// conjugated families.
#[test]
fn one_member_implies_all_members() {
    for shift in [int(1), int(-2), wittkit_core::rat::frac(1, 2)] {
        let t_shift = &UniPoly::var() + &UniPoly::constant(shift);
        let cube = t_shift.pow(3);
        let fifth = t_shift.pow(5);
        let gens = [WittElement1::new(cube.clone()), WittElement1::new(fifth)];
        let basis = SubalgebraBasis1::closure(&gens, 36).unwrap();
        let chart = hensel_root(&cube, 24).unwrap();
        let members: Vec<bool> = basis
            .elements()
            .iter()
            .map(|e| veronese_member(e, 2, &chart).unwrap())
            .collect();
        assert!(members.iter().any(|m| *m));
        assert!(members.iter().all(|m| *m), "implication violated");
    }
}

/// On families that are not aligned with the identity chart, the coefficient
/// law binds every monic distinct-degree pair.
#[test]
fn coefficient_law_on_conjugated_closures() {
    let t_shift = &UniPoly::var() + &UniPoly::constant(int(1));
    let gens = [
        WittElement1::new(t_shift.pow(3)),
        WittElement1::new(t_shift.pow(5)),
    ];
    let basis = SubalgebraBasis1::closure(&gens, 30).unwrap();
    let elements = basis.elements();
    let mut checked = 0;
    for a in &elements {
        for b in &elements {
            if a.degree() == b.degree() {
                continue;
            }
            match coefficient_law(a, b, 2).unwrap() {
                LawCheck::Offset { holds, .. } => {
                    assert!(holds, "law fails for degrees {:?}, {:?}", a.degree(), b.degree());
                    checked += 1;
                }
                LawCheck::Aligned => {}
            }
        }
    }
    assert!(checked > 20);
}
