//! Property-based and randomized tests of the toric division algorithm.

mod common;

use common::{divisible_by_linear_solve, TestRng};
use fourbar_balance::{
    is_divisible, toric_divide, Coeff, DirectionFunctional, Exponent, GaussianRational as Gq,
    NewtonPolygon, Poly,
};
use proptest::prelude::*;

fn arb_gq() -> impl Strategy<Value = Gq> {
    (-9i64..=9, 1i64..=9, -9i64..=9, 1i64..=9).prop_map(|(rn, rd, in_, id)| {
        Gq::new(common::rat(rn, rd), common::rat(in_, id))
    })
}

fn arb_poly(max_terms: usize, span: i64) -> impl Strategy<Value = Poly> {
    prop::collection::vec(((-span..=span), (-span..=span), arb_gq()), 1..=max_terms)
        .prop_map(Poly::from_terms)
}

fn arb_nonzero_poly(max_terms: usize, span: i64) -> impl Strategy<Value = Poly> {
    arb_poly(max_terms, span).prop_filter("nonzero", |p| !p.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reconstruction_identity(f in arb_poly(8, 4), g in arb_nonzero_poly(6, 4)) {
        let qr = toric_divide(&f, &g, DirectionFunctional::default()).unwrap();
        prop_assert_eq!(f, qr.quotient.mul(&g).add(&qr.remainder));
    }

    #[test]
    fn remainder_support_in_np_of_dividend(f in arb_nonzero_poly(8, 4), g in arb_nonzero_poly(6, 4)) {
        let qr = toric_divide(&f, &g, DirectionFunctional::default()).unwrap();
        let np_f = NewtonPolygon::of(&f).unwrap();
        for e in qr.remainder.support() {
            prop_assert!(np_f.contains(e), "remainder exponent {} outside NP(F)", e);
        }
    }

    #[test]
    fn multiples_divide_exactly(q in arb_poly(5, 3), g in arb_nonzero_poly(5, 3)) {
        let f = q.mul(&g);
        let qr = toric_divide(&f, &g, DirectionFunctional::default()).unwrap();
        prop_assert!(qr.remainder.is_zero());
        prop_assert_eq!(qr.quotient, q);
    }

    #[test]
    fn ostrowski_additivity(a in arb_nonzero_poly(8, 5), b in arb_nonzero_poly(8, 5)) {
        let (np_a, np_b, np_ab) = common::np_triple(&a, &b);
        prop_assert_eq!(np_a.minkowski_sum(&np_b), np_ab);
    }

    #[test]
    fn conjugation_is_a_ring_map(a in arb_poly(6, 4), b in arb_poly(6, 4)) {
        prop_assert_eq!(a.mul(&b).conj_on_torus(), a.conj_on_torus().mul(&b.conj_on_torus()));
        prop_assert_eq!(a.add(&b).conj_on_torus(), a.conj_on_torus().add(&b.conj_on_torus()));
    }

    #[test]
    fn divisibility_is_conjugation_invariant(q in arb_poly(4, 3), g in arb_nonzero_poly(4, 3)) {
        let f = q.mul(&g);
        let (ok, _) = is_divisible(&f.conj_on_torus(), &g.conj_on_torus()).unwrap();
        prop_assert!(ok);
    }

    #[test]
    fn direction_choice_does_not_change_divisibility(
        f in arb_nonzero_poly(6, 3),
        g in arb_nonzero_poly(4, 3),
        alpha in 1i64..50,
        beta in prop::sample::select(vec![997i64, 1_000_003, 7919]),
    ) {
        let default = toric_divide(&f, &g, DirectionFunctional::default()).unwrap();
        let other = toric_divide(&f, &g, DirectionFunctional::new(alpha, beta)).unwrap();
        prop_assert_eq!(default.remainder.is_zero(), other.remainder.is_zero());
    }
}

#[test]
fn division_agrees_with_linear_solve_oracle() {
    let mut rng = TestRng::new(0x5eed);
    let mut divisible_seen = 0;
    let mut indivisible_seen = 0;
    for _ in 0..150 {
        let g = rng.poly(5, -3, 3);
        let f = if rng.below(2) == 0 {
            rng.poly(4, -3, 3).mul(&g)
        } else {
            rng.poly(6, -4, 4)
        };
        let (ok, _) = is_divisible(&f, &g).unwrap();
        let oracle = divisible_by_linear_solve(&f, &g);
        assert_eq!(ok, oracle, "division and oracle disagree on f = {f}, g = {g}");
        if ok {
            divisible_seen += 1;
        } else {
            indivisible_seen += 1;
        }
    }
    // both verdicts must actually be exercised
    assert!(divisible_seen >= 30, "only {divisible_seen} divisible cases");
    assert!(indivisible_seen >= 30, "only {indivisible_seen} indivisible cases");
}

#[test]
fn monomial_units_divide_everything() {
    let mut rng = TestRng::new(7);
    for _ in 0..20 {
        let f = rng.poly(6, -4, 4);
        let unit = Poly::monomial(
            Exponent::new(rng.int_in(-3, 3), rng.int_in(-3, 3)),
            rng.gq(),
        );
        if unit.is_zero() {
            continue;
        }
        let (ok, _) = is_divisible(&f, &unit).unwrap();
        assert!(ok, "unit {unit} must divide {f}");
    }
}

#[test]
fn zero_dividend_gives_zero_quotient() {
    let g = Poly::from_terms([(1, 0, Gq::one()), (0, 1, Gq::from_ints(-1, 0))]);
    let qr = toric_divide(&Poly::zero(), &g, DirectionFunctional::default()).unwrap();
    assert!(qr.quotient.is_zero());
    assert!(qr.remainder.is_zero());
}

#[test]
fn oracle_sanity() {
    // x^2 - y^2 = (x - y)(x + y); x^2 + y^2 has no such cofactor
    let g = Poly::from_terms([(1, 0, Gq::one()), (0, 1, Gq::from_ints(-1, 0))]);
    let f = Poly::from_terms([(2, 0, Gq::one()), (0, 2, Gq::from_ints(-1, 0))]);
    assert!(divisible_by_linear_solve(&f, &g));
    let f2 = Poly::from_terms([(2, 0, Gq::one()), (0, 2, Gq::one())]);
    assert!(!divisible_by_linear_solve(&f2, &g));
}
