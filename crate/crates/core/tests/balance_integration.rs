//! End-to-end balance analysis: classification, mode factorization,
//! certificates and synthesis across the kinematic cases.

mod common;

use common::{rat, TestRng};
use fourbar_balance::{
    check_balance, classify_case, derive, dynamic_determinant, geometric_constraint,
    mode_factors, momentum_form, synthesize_case_iia, synthesize_case_iva, toric_divide,
    DesignParams, DirectionFunctional, Error, GaussianRational as Gq, KinematicCase,
    NewtonPolygon, SynthesisChoices,
};
use num_traits::Signed;

fn base_params(l1: (i64, i64), l2: (i64, i64), l3: (i64, i64), d: (i64, i64)) -> DesignParams {
    DesignParams {
        l1: rat(l1.0, l1.1),
        l2: rat(l2.0, l2.1),
        l3: rat(l3.0, l3.1),
        d: rat(d.0, d.1),
        m1: rat(2, 1),
        m2: rat(3, 1),
        m3: rat(1, 1),
        r1: rat(1, 3),
        r2: rat(1, 2),
        r3: rat(2, 5),
        p1: Gq::from_ints(1, 0),
        p2: Gq::new(rat(3, 5), rat(4, 5)),
        p3: Gq::from_ints(-1, 0),
        i1: rat(1, 1),
        i2: rat(2, 1),
        i3: rat(1, 2),
    }
}

#[test]
fn mode_factorization_per_case() {
    let cases = [
        (base_params((1, 1), (1, 1), (3, 1), (3, 1)), KinematicCase::CaseII, vec!["z1 = z2"]),
        (base_params((3, 1), (2, 1), (2, 1), (3, 1)), KinematicCase::CaseIII, vec!["z1 = 1"]),
        (base_params((3, 1), (2, 1), (3, 1), (2, 1)), KinematicCase::CaseIV, vec!["z2 = -1"]),
        (
            base_params((2, 1), (2, 1), (2, 1), (2, 1)),
            KinematicCase::CaseV,
            vec!["z1 = z2", "z1 = 1", "z2 = -1"],
        ),
    ];
    let h = DirectionFunctional::default();
    for (params, expected_case, expected_lines) in cases {
        let case = classify_case(&params.l1, &params.l2, &params.l3, &params.d);
        assert_eq!(case, expected_case);
        let dp = derive(&params).unwrap();
        let comps = mode_factors(case, &dp).unwrap();
        let g = geometric_constraint(&dp);
        let np_g = NewtonPolygon::of(&g).unwrap();
        let mut lines = Vec::new();
        for comp in &comps {
            let qr = toric_divide(&g, &comp.factor, h).unwrap();
            assert!(qr.remainder.is_zero(), "{case}: {} must divide G", comp.factor);
            // Minkowski additivity of the factor/cofactor split
            let np_f = NewtonPolygon::of(&comp.factor).unwrap();
            let np_q = NewtonPolygon::of(&qr.quotient).unwrap();
            assert_eq!(np_f.minkowski_sum(&np_q), np_g, "{case}: NP additivity");
            if comp.label.ends_with('B') || case == KinematicCase::CaseV {
                lines.push(comp.constraint.clone());
            }
        }
        if case == KinematicCase::CaseV {
            lines.sort_by_key(|c| expected_lines.iter().position(|e| e == c));
        }
        let expected: Vec<String> = expected_lines.iter().map(|s| s.to_string()).collect();
        assert_eq!(lines, expected, "{case}");
    }
}

#[test]
fn irreducible_case_single_mode() {
    let params = base_params((1, 1), (2, 1), (3, 1), (9, 2));
    let report = check_balance(&params, DirectionFunctional::default()).unwrap();
    assert_eq!(report.case, KinematicCase::Irreducible);
    assert_eq!(report.modes.len(), 1);
    assert!(!report.balanced);
    assert!(!report.modes[0].static_ok);
}

#[test]
fn static_but_not_dynamic() {
    // start from the balanced design, then change I2: F-conditions keep
    // holding (they do not involve I2) but J2 moves off the balance surface
    let params = DesignParams {
        i2: rat(1, 1),
        ..balanced_preset()
    };
    let report = check_balance(&params, DirectionFunctional::default()).unwrap();
    let a = report.modes.iter().find(|m| m.label == "II-A").unwrap();
    assert!(a.static_ok);
    assert!(!a.dynamic_ok);
    assert!(!report.balanced);
}

fn balanced_preset() -> DesignParams {
    DesignParams {
        l1: rat(1, 1),
        l2: rat(1, 1),
        l3: rat(4, 1),
        d: rat(4, 1),
        m1: rat(3, 1),
        m2: rat(1, 1),
        m3: rat(2, 1),
        r1: rat(1, 2),
        r2: rat(1, 2),
        r3: rat(1, 1),
        p1: Gq::from_ints(-1, 0),
        p2: Gq::from_ints(-1, 0),
        p3: Gq::from_ints(1, 0),
        i1: rat(9, 4),
        i2: rat(15, 4),
        i3: rat(3, 2),
    }
}

#[test]
fn balanced_design_certificate_is_exact() {
    let report = check_balance(&balanced_preset(), DirectionFunctional::default()).unwrap();
    assert!(report.balanced);
    let a = report.modes.iter().find(|m| m.label == "II-A").unwrap();
    assert!(a.static_witness.is_zero());
    assert!(a.dynamic_witness.is_zero());
}

#[test]
fn every_single_parameter_perturbation_is_caught() {
    // bumping any one inertia or mass off the balanced design must break it
    let base = balanced_preset();
    let bump = rat(1, 100);
    let perturbations: Vec<DesignParams> = vec![
        DesignParams { i1: &base.i1 + &bump, ..base.clone() },
        DesignParams { i2: &base.i2 + &bump, ..base.clone() },
        DesignParams { i3: &base.i3 + &bump, ..base.clone() },
        DesignParams { m1: &base.m1 + &bump, ..base.clone() },
        DesignParams { m2: &base.m2 + &bump, ..base.clone() },
        DesignParams { m3: &base.m3 + &bump, ..base.clone() },
        DesignParams { r1: &base.r1 + &bump, ..base.clone() },
        DesignParams { r3: &base.r3 + &bump, ..base.clone() },
    ];
    for p in perturbations {
        let report = check_balance(&p, DirectionFunctional::default()).unwrap();
        assert!(!report.balanced, "perturbed design unexpectedly balanced");
    }
}

#[test]
fn synthesized_designs_certify_across_seeds() {
    for seed in 0..20u64 {
        let p = synthesize_case_iia(&rat(1, 1), &rat(2, 1), &SynthesisChoices::default(), seed)
            .unwrap();
        let report = check_balance(&p, DirectionFunctional::default()).unwrap();
        assert!(report.balanced, "IIA seed {seed}");
        assert!(report.balanced_modes().contains(&"II-A"));

        let q = synthesize_case_iva(&rat(2, 3), &rat(3, 2), &SynthesisChoices::default(), seed)
            .unwrap();
        let report = check_balance(&q, DirectionFunctional::default()).unwrap();
        assert!(report.balanced, "IVA seed {seed}");
        assert!(report.balanced_modes().contains(&"IV-A"));
    }
}

#[test]
fn feasibility_bound_is_sharp() {
    // d^2 on either side of 2 l^2, within 1/100 of the bound
    let l = rat(1, 1);
    let below = rat(1411, 1000); // d^2 = 1.990921 < 2
    let above = rat(283, 200); // d^2 = 2.002225 > 2
    assert!((&below * &below - rat(2, 1)).abs() < rat(1, 100));
    assert!((&above * &above - rat(2, 1)).abs() < rat(1, 100));

    for synth in [synthesize_case_iia, synthesize_case_iva] {
        let fail = synth(&l, &below, &SynthesisChoices::default(), 1);
        assert!(matches!(fail, Err(Error::Infeasible(_))));
        let p = synth(&l, &above, &SynthesisChoices::default(), 1).unwrap();
        assert!(check_balance(&p, DirectionFunctional::default()).unwrap().balanced);
    }
}

#[test]
fn momentum_w_identity_random() {
    let mut rng = TestRng::new(99);
    for _ in 0..25 {
        let mut p = base_params((1, 1), (2, 1), (3, 1), (9, 2));
        p.l1 = rng.positive_rational();
        p.l2 = rng.positive_rational();
        p.l3 = rng.positive_rational();
        p.d = rng.positive_rational();
        p.m3 = rng.positive_rational();
        p.r3 = rng.positive_rational();
        p.i2 = rng.positive_rational();
        p.i3 = rng.positive_rational();
        let dp = derive(&p).unwrap();
        let mf = momentum_form(&dp).unwrap();
        let lhs = mf.w.scale(&(&p.l3 * &p.l3));
        let rhs = &p.l2 * &p.l2 * &dp.j3 + &p.l3 * &p.l3 * &dp.j2;
        assert_eq!(lhs, Gq::real(rhs));
    }
}

#[test]
fn dynamic_determinant_vanishes_only_on_balanced_mode() {
    let dp = derive(&balanced_preset()).unwrap();
    let k = dynamic_determinant(&dp).unwrap();
    assert!(!k.is_zero());
    let comps = mode_factors(KinematicCase::CaseII, &dp).unwrap();
    let h = DirectionFunctional::default();
    let a = comps.iter().find(|c| c.label == "II-A").unwrap();
    let b = comps.iter().find(|c| c.label == "II-B").unwrap();
    assert!(toric_divide(&k, &a.factor, h).unwrap().remainder.is_zero());
    assert!(!toric_divide(&k, &b.factor, h).unwrap().remainder.is_zero());
}
