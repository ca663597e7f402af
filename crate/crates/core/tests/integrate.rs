use rikitake_core::coupling::{coupled_system, one_copy_system};
use rikitake_core::integrate::{integrate, orbit_closure, IntegratorConfig, Termination};
use rikitake_core::poisson::max_abs_diff;
use rikitake_core::systems::{build, catalog, params, Params};
use rikitake_core::{Dynamics, ScalarField, VectorFieldSystem};

const FIGURE_IC: [f64; 3] = [0.5, 1.0, 1.0];

fn figure_ic(dim: usize) -> Vec<f64> {
    let mut x = FIGURE_IC.to_vec();
    // the case-B central coordinate is held at I = 1
    x.resize(dim, 1.0);
    x
}

fn harmonic() -> VectorFieldSystem {
    VectorFieldSystem::new("harmonic", ["x", "y"], |x| vec![x[1], -x[0]])
}

#[test]
fn harmonic_period() {
    let tr = integrate(&harmonic(), &[1.0, 0.0], &IntegratorConfig::adaptive(10.0)).unwrap();
    let c = orbit_closure(&tr, 1e-3).expect("closed orbit");
    assert!(
        (c.period - 2.0 * std::f64::consts::PI).abs() < 1e-4,
        "{c:?}"
    );
    assert!(c.distance < 1e-4, "{c:?}");
}

#[test]
fn equilibrium_stays_put_and_never_closes() {
    let sys = build("case-ab-pencil", &Params::new()).unwrap();
    let tr = integrate(
        sys.dynamics(),
        &[0.0, 0.0, 1.0],
        &IntegratorConfig::adaptive(10.0),
    )
    .unwrap();
    assert!(tr.states.iter().all(|s| s == &vec![0.0, 0.0, 1.0]));
    assert!(orbit_closure(&tr, 1e-3).is_none());
}

#[test]
fn book_figure_run_conserves_and_closes() {
    let sys = build("case-a-book", &params([("alpha", 1.0), ("eta", 1.0)])).unwrap();
    let tr = integrate(
        sys.dynamics(),
        &FIGURE_IC,
        &IntegratorConfig::adaptive(50.0),
    )
    .unwrap();
    assert_eq!(tr.termination, Termination::Completed);
    for (name, d) in tr.drift() {
        assert!(d < 1e-6, "{name}: {d}");
    }
    let c = orbit_closure(&tr, 1e-2).expect("closed orbit");
    assert!(c.distance < 1e-3, "{c:?}");
    // regression value produced by this integrator
    assert!((c.period - BOOK_PERIOD).abs() < 1e-4, "{}", c.period);
}

const BOOK_PERIOD: f64 = 4.860561431577199;

#[test]
fn rk4_is_fourth_order_on_every_catalog_system() {
    for spec in catalog() {
        let built = build(spec.id, &Params::new()).unwrap();
        let sys = built.dynamics();
        let x0 = figure_ic(sys.dim());
        let run = |h: f64| {
            integrate(sys, &x0, &IntegratorConfig::rk4(2.0, h))
                .unwrap()
                .last_state()
                .to_vec()
        };
        let (a, b, c) = (run(0.04), run(0.02), run(0.01));
        let ratio = max_abs_diff(&a, &b) / max_abs_diff(&b, &c);
        assert!((ratio - 16.0).abs() < 4.0, "{}: {ratio}", spec.id);
    }
}

#[test]
fn every_catalog_system_conserves_its_invariants() {
    for spec in catalog() {
        let built = build(spec.id, &Params::new()).unwrap();
        for sys in built.hamiltonian_systems() {
            let x0 = figure_ic(sys.dim());
            let tr = integrate(sys, &x0, &IntegratorConfig::adaptive(50.0)).unwrap();
            assert_eq!(tr.termination, Termination::Completed, "{}", sys.id());
            for (name, d) in tr.drift() {
                assert!(d < 1e-6, "{} {name}: {d}", sys.id());
            }
        }
    }
}

#[test]
fn heisenberg_casimir_and_primed_invariants_over_twenty() {
    let hw = build("case-a-heisenberg", &Params::new()).unwrap();
    let tr = integrate(hw.dynamics(), &FIGURE_IC, &IntegratorConfig::adaptive(20.0)).unwrap();
    assert_eq!(tr.termination, Termination::Completed);
    assert!(tr.max_drift() < 1e-7);
    let primed = one_copy_system(1, 1.0).unwrap();
    let tr = integrate(&primed, &FIGURE_IC, &IntegratorConfig::adaptive(20.0)).unwrap();
    assert!(tr.max_drift() < 1e-7);
}

#[test]
fn coupled_invariants_are_conserved() {
    for lambda in [0, 1] {
        let sys = coupled_system(lambda, 1.0).unwrap();
        let tr = integrate(
            &sys,
            &[0.5, 1.0, 1.0, 0.3, 0.8, -0.2],
            &IntegratorConfig::adaptive(20.0),
        )
        .unwrap();
        assert_eq!(tr.termination, Termination::Completed);
        assert_eq!(tr.invariant_names.len(), 4);
        for (name, d) in tr.drift() {
            assert!(d < 1e-6, "λ={lambda} {name}: {d}");
        }
    }
}

#[test]
fn integration_is_deterministic() {
    let sys = build("case-ab-deformed", &Params::new()).unwrap();
    let a = integrate(
        sys.dynamics(),
        &FIGURE_IC,
        &IntegratorConfig::adaptive(10.0),
    )
    .unwrap();
    let b = integrate(
        sys.dynamics(),
        &FIGURE_IC,
        &IntegratorConfig::adaptive(10.0),
    )
    .unwrap();
    assert_eq!(a.times, b.times);
    assert_eq!(a.states, b.states);
}

#[test]
fn leaving_the_domain_truncates_with_the_last_valid_state() {
    let root = ScalarField::new("sqrt(u)", 1, |x| x[0].sqrt(), |x| vec![0.5 / x[0].sqrt()])
        .with_domain(|x| {
            if x[0] > 0.0 {
                Ok(())
            } else {
                Err("u must be positive".into())
            }
        });
    let sys = VectorFieldSystem::new("drain", ["u"], |_| vec![-1.0]).with_invariant(root);
    let tr = integrate(&sys, &[1.0], &IntegratorConfig::rk4(3.0, 0.01)).unwrap();
    assert!(
        matches!(tr.termination, Termination::Domain(_)),
        "{:?}",
        tr.termination
    );
    assert!(tr.last_state()[0] > 0.0);
}

#[test]
fn config_and_initial_condition_are_validated() {
    let sys = harmonic();
    assert!(integrate(&sys, &[1.0], &IntegratorConfig::adaptive(1.0)).is_err());
    assert!(integrate(&sys, &[1.0, 0.0], &IntegratorConfig::adaptive(0.0)).is_err());
}
