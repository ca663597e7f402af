use rikitake_core::poisson::{casimir_residual, jacobi_residual, max_abs_diff};
use rikitake_core::sampling::uniform_points;
use rikitake_core::systems::{
    bihamiltonian_agreement, bracket_catalog, build, catalog, limit_eta_zero, params,
    sample_points, sample_points_for_bracket, structures as st, swapped_agreement, Built, Params,
};
use rikitake_core::PoissonStructure;

const P: [f64; 3] = [0.5, 1.0, 1.0];

fn rhs(id: &str, p: &Params, x: &[f64]) -> Vec<f64> {
    build(id, p).unwrap().dynamics().rhs(x).unwrap()
}

#[test]
fn case_a_field_at_reference_point() {
    assert_eq!(
        rhs("case-a", &params([("alpha", 1.0)]), &P),
        vec![1.0, 0.5, 0.5]
    );
}

#[test]
fn rikitake_general_reduces_to_case_a_without_friction() {
    let g = rhs("rikitake-general", &Params::new(), &P);
    assert_eq!(g, rhs("case-a", &Params::new(), &P));
    let f = rhs(
        "rikitake-general",
        &params([("mu", 1.0), ("beta1", 2.0), ("beta2", 1.0)]),
        &P,
    );
    assert_eq!(f, vec![-0.5 + 3.0, -1.0 + 0.0, 0.5]);
}

#[test]
fn deformed_ab_bracket_at_lambda_zero_is_the_book_bracket() {
    for eta in [1e-3, 0.5, 1.0] {
        let d = st::ab_deformed(0.0, eta);
        let b = st::book(eta);
        for x in uniform_points(3, 20, 3, -2.0, 2.0) {
            assert_eq!(d.matrix(&x).unwrap(), b.matrix(&x).unwrap());
        }
    }
}

#[test]
fn pencil_casimir_at_lambda_one() {
    let Built::Pair { member, .. } = build("case-ab-pencil", &params([("lambda", 1.0)])).unwrap()
    else {
        panic!("pair expected")
    };
    assert_eq!(member.structure().casimirs()[0].value(&P).unwrap(), 0.8125);
}

#[test]
fn limit_forms() {
    let lim = limit_eta_zero("case-a-book", &Params::new()).unwrap();
    let poincare = st::poincare();
    for x in uniform_points(4, 20, 3, -2.0, 2.0) {
        assert_eq!(
            lim.structure().matrix(&x).unwrap(),
            poincare.matrix(&x).unwrap()
        );
    }
    let ab = limit_eta_zero("case-ab-deformed", &params([("lambda", 1.0)])).unwrap();
    assert_eq!(ab.structure().casimirs()[0].value(&P).unwrap(), -0.8125);
    let hw = limit_eta_zero("case-a-heisenberg", &Params::new()).unwrap();
    assert_eq!(
        hw.structure().casimirs()[0]
            .value(&[0.5, 1.0, 7.0])
            .unwrap(),
        0.75
    );
    assert!(limit_eta_zero("case-a", &Params::new()).is_err());
}

#[test]
fn printed_limit_casimirs_match_the_deformed_ones_at_tiny_eta() {
    for lambda in [0.0, 0.25, 1.0] {
        let lim = st::casimir_ab_limit(lambda);
        let def = st::casimir_ab_deformed(lambda, 1e-12);
        for x in uniform_points(5, 20, 3, -2.0, 2.0) {
            assert!((lim.value(&x).unwrap() - def.value(&x).unwrap()).abs() < 1e-10);
        }
    }
    let q = st::casimir_quadratic_limit();
    for x in sample_points("case-a-heisenberg", 6, 20).unwrap() {
        assert!(
            (q.value(&x).unwrap() - st::casimir_heisenberg(1e-12).value(&x).unwrap()).abs() < 1e-10
        );
        assert!((q.value(&x).unwrap() - st::casimir_book(1e-12).value(&x).unwrap()).abs() < 1e-10);
    }
}

#[test]
fn bihamiltonian_agreement_for_deformed_and_undeformed_pairs() {
    for eta in [0.5, 1.0, 2.0] {
        let p = params([("eta", eta)]);
        for x in sample_points("case-ab-deformed", 11, 100).unwrap() {
            assert!(bihamiltonian_agreement("case-ab-deformed", &p, &x).unwrap() < 1e-10);
            assert!(bihamiltonian_agreement("case-ab-primed", &p, &x).unwrap() < 1e-10);
        }
    }
    for x in sample_points("case-ab-pencil", 12, 100).unwrap() {
        assert!(bihamiltonian_agreement("case-ab-pencil", &Params::new(), &x).unwrap() < 1e-12);
    }
    for x in sample_points("case-b-pencil", 13, 100).unwrap() {
        assert!(bihamiltonian_agreement("case-b-pencil", &Params::new(), &x).unwrap() < 1e-12);
    }
    assert!(swapped_agreement("case-ab-deformed", &Params::new(), &P).unwrap() > 1e-3);
    assert!(bihamiltonian_agreement("case-a", &Params::new(), &P).is_err());
}

#[test]
fn every_pencil_member_generates_the_common_flow() {
    for id in [
        "case-ab-pencil",
        "case-ab-deformed",
        "case-ab-primed",
        "case-b-pencil",
    ] {
        for lambda in [0.25, 2.0, -1.0] {
            let Built::Pair { first, member, .. } =
                build(id, &params([("lambda", lambda)])).unwrap()
            else {
                panic!()
            };
            for x in sample_points(id, 14, 20).unwrap() {
                let a = first.vector_field(&x).unwrap();
                let b = member.vector_field(&x).unwrap();
                assert!(max_abs_diff(&a, &b) < 1e-10, "{id} λ={lambda}");
            }
        }
    }
}

#[test]
fn handcoded_fields_match_the_poisson_fields() {
    for spec in catalog() {
        let built = build(spec.id, &Params::new()).unwrap();
        for sys in built.hamiltonian_systems() {
            for x in sample_points(spec.id, 15, 50).unwrap() {
                let m = sys
                    .handcoded_mismatch(&x)
                    .expect("hand-coded field")
                    .unwrap();
                assert!(m < 1e-10, "{} at {x:?}: {m}", sys.structure().name());
            }
        }
    }
}

#[test]
fn catalog_brackets_are_poisson_with_certified_casimirs() {
    let entries = bracket_catalog();
    assert_eq!(entries.len(), 17);
    for (label, s) in entries {
        for x in sample_points_for_bracket(&label, s.dim(), 16, 100) {
            assert!(jacobi_residual(&s, &x).unwrap() < 1e-9, "{label}");
            for c in s.casimirs() {
                assert!(
                    casimir_residual(&s, c, &x).unwrap() < 1e-9,
                    "{label}: {}",
                    c.name()
                );
            }
        }
    }
}

fn bracket_gap(a: &PoissonStructure, b: &PoissonStructure, points: &[Vec<f64>]) -> f64 {
    points
        .iter()
        .map(|x| {
            let d = a.matrix(x).unwrap() - b.matrix(x).unwrap();
            d.amax()
        })
        .fold(0.0, f64::max)
}

fn ratios(gap: impl Fn(f64) -> f64) -> (f64, f64) {
    let g: Vec<f64> = [1e-2, 1e-3, 1e-4].iter().map(|&e| gap(e)).collect();
    (g[0] / g[1], g[1] / g[2])
}

#[test]
fn deformed_brackets_converge_linearly() {
    let pts = uniform_points(17, 50, 3, -2.0, 2.0);
    let mut cases: Vec<(String, Box<dyn Fn(f64) -> f64>)> = vec![
        (
            "book".into(),
            Box::new(|e| bracket_gap(&st::book(e), &st::poincare(), &pts)),
        ),
        (
            "heisenberg".into(),
            Box::new(|e| bracket_gap(&st::heisenberg(e), &st::poincare(), &pts)),
        ),
    ];
    for l in [0.0, 0.25, 1.0] {
        let pts = &pts;
        cases.push((
            format!("ab-deformed λ={l}"),
            Box::new(move |e| bracket_gap(&st::ab_deformed(l, e), &st::ab_pencil(l), pts)),
        ));
    }
    for (name, gap) in cases {
        let (r1, r2) = ratios(gap);
        assert!(
            (r1 - 10.0).abs() < 2.0 && (r2 - 10.0).abs() < 2.0,
            "{name}: {r1} {r2}"
        );
    }
}

#[test]
fn primed_bracket_converges_quadratically() {
    let pts = uniform_points(17, 50, 3, -2.0, 2.0);
    let (r1, r2) = ratios(|e| bracket_gap(&st::ab_primed(1.0, e), &st::ab_pencil(1.0), &pts));
    assert!(
        (r1 - 100.0).abs() < 20.0 && (r2 - 100.0).abs() < 20.0,
        "{r1} {r2}"
    );
}

#[test]
fn parameter_validation() {
    assert!(build("case-ab-pencil", &params([("lambda", 0.5)])).is_err());
    assert!(build("case-ab-primed", &params([("eta", 0.0)])).is_err());
    assert!(build("case-a-book", &params([("eta", 0.0)])).is_ok());
    assert!(build("case-a", &params([("eta", 1.0)])).is_err());
    assert!(build("case-a", &params([("alpha", f64::NAN)])).is_err());
}

#[test]
fn book_at_zero_eta_equals_case_a() {
    let a = build("case-a", &Params::new()).unwrap();
    let b = build("case-a-book", &params([("eta", 0.0)])).unwrap();
    for x in sample_points("case-a", 18, 20).unwrap() {
        assert_eq!(a.dynamics().rhs(&x).unwrap(), b.dynamics().rhs(&x).unwrap());
    }
}
