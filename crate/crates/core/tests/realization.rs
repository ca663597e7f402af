use rikitake_core::realization::{
    sample_canonical, standard_realizations, time_of_flight, time_of_flight_ode,
    EffectivePotentialSpec, Realization, RealizationKind,
};

#[test]
fn case_a_reference_point_lies_on_its_leaf() {
    let r = Realization::resolve(RealizationKind::CaseA { k: 1.0 }).unwrap();
    assert_eq!(r.realize(0.0, 0.0).unwrap(), vec![0.0, 2.0, 0.0]);
    assert!(r.casimir_defect(0.0, 0.0).unwrap() < 1e-12);
}

#[test]
fn heisenberg_printed_point_and_resolved_branch() {
    let kind = RealizationKind::HeisenbergWeyl { k: 1.0, eta: 1.0 };
    let printed = Realization::printed(kind).unwrap();
    assert_eq!(printed.realize(0.0, 0.0).unwrap(), vec![0.0, -1.0, 0.0]);
    // both signs are Poisson; only the positive one stays in y > |x|
    assert!(printed.pushforward_residual(0.3, 0.2).unwrap() < 1e-12);
    let resolved = Realization::resolve(kind).unwrap();
    assert_eq!(resolved.sign, 1.0);
    assert!(resolved.casimir_defect(0.0, 0.0).unwrap() < 1e-12);
}

#[test]
fn book_printed_sign_fails_by_the_predicted_amount() {
    for (k, eta) in [(1.0, 1.0), (0.5, -0.7), (2.0, 0.3)] {
        let kind = RealizationKind::Book { k, eta };
        let printed = Realization::printed(kind).unwrap();
        for (q, p) in [(0.2, 0.4), (-0.6, -0.3)] {
            let r = printed.pushforward_residual(q, p).unwrap();
            let predicted = eta.abs() * (-eta * p).exp() * k;
            assert!(
                (r - predicted).abs() < 1e-12 * predicted.max(1.0),
                "{r} vs {predicted}"
            );
        }
        let resolved = Realization::resolve(kind).unwrap();
        assert_eq!(resolved.sign, -1.0);
        assert!(resolved.pushforward_residual(0.2, 0.4).unwrap() < 1e-12);
    }
}

#[test]
fn deformed_lambda_family_picks_the_positive_branch() {
    let r = Realization::resolve(RealizationKind::AbDeformed {
        k: 0.7,
        lambda: 0.25,
        eta: 1.0,
    })
    .unwrap();
    assert_eq!(r.sign, 1.0);
    assert!(
        Realization::printed(r.kind)
            .unwrap()
            .pushforward_residual(0.3, 0.2)
            .unwrap()
            > 1e-3
    );
}

#[test]
fn all_realizations_are_poisson_and_land_on_one_leaf() {
    for r in standard_realizations().unwrap() {
        let pts = sample_canonical(&r, 11, 100);
        assert_eq!(pts.len(), 100, "{}", r.kind.id());
        for (q, p) in pts {
            let res = r.pushforward_residual(q, p).unwrap();
            assert!(res < 1e-9, "{} at ({q},{p}): {res}", r.kind.id());
            let c = r.casimir_defect(q, p).unwrap();
            assert!(c < 1e-10, "{} at ({q},{p}): {c}", r.kind.id());
        }
    }
}

#[test]
fn lambda_family_above_one_half() {
    for kind in [
        RealizationKind::AbPencil {
            k: -1.0,
            lambda: 1.0,
        },
        RealizationKind::AbDeformed {
            k: -1.0,
            lambda: 1.0,
            eta: 0.6,
        },
        RealizationKind::AbDeformed {
            k: -2.0,
            lambda: 0.75,
            eta: -1.2,
        },
    ] {
        let r = Realization::resolve(kind).unwrap();
        for (q, p) in sample_canonical(&r, 12, 50) {
            assert!(r.pushforward_residual(q, p).unwrap() < 1e-9, "{kind:?}");
            assert!(r.casimir_defect(q, p).unwrap() < 1e-10, "{kind:?}");
        }
    }
}

#[test]
fn invalid_parameters_are_rejected() {
    assert!(Realization::resolve(RealizationKind::CaseA { k: -1.0 }).is_err());
    assert!(Realization::resolve(RealizationKind::AbPencil {
        k: 1.0,
        lambda: 0.5
    })
    .is_err());
    assert!(Realization::resolve(RealizationKind::AbDeformed {
        k: 1.0,
        lambda: 0.25,
        eta: 0.0
    })
    .is_err());
    // λ > 1/2 needs R < 0
    let r = Realization::new(
        RealizationKind::AbPencil {
            k: 1.0,
            lambda: 1.0,
        },
        1.0,
    )
    .unwrap();
    assert!(r.realize(0.0, 0.0).is_err());
}

#[test]
fn time_of_flight_matches_the_reduced_flow() {
    let cases = [
        (EffectivePotentialSpec::AbLambda0 { k: 1.0 }, 3.0),
        (EffectivePotentialSpec::CaseA { k: 1.0, alpha: 1.0 }, 1.0),
        (EffectivePotentialSpec::AbLambda1 { k: -1.0 }, 0.2),
    ];
    for (spec, e) in cases {
        let quad = time_of_flight(&spec, e, 0.0, 0.5).unwrap();
        let ode = time_of_flight_ode(&spec, e, 0.0, 0.5).unwrap();
        assert!((quad - ode).abs() < 1e-5, "{spec:?}: {quad} vs {ode}");
        assert!((time_of_flight(&spec, e, 0.5, 0.0).unwrap() + quad).abs() < 1e-12);
    }
}

#[test]
fn time_of_flight_is_monotone_in_the_endpoint() {
    let spec = EffectivePotentialSpec::AbLambda0 { k: 1.0 };
    let ts: Vec<f64> = [0.1, 0.2, 0.3, 0.4, 0.5]
        .iter()
        .map(|&q| time_of_flight(&spec, 3.0, 0.0, q).unwrap())
        .collect();
    assert!(ts.windows(2).all(|w| w[1] > w[0]));
}

#[test]
fn turning_point_is_a_domain_error() {
    // k cosh 2s reaches E = 3 at s ≈ 0.881
    let err =
        time_of_flight(&EffectivePotentialSpec::AbLambda0 { k: 1.0 }, 3.0, 0.0, 1.0).unwrap_err();
    assert!(err.to_string().contains("s ="), "{err}");
}
