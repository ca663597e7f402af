use rayon::prelude::*;
use rikitake_core::coupling::{
    chart_equation_residual, cluster_dynamics_residual, coproduct_from_group, poisson_map_residual,
    primed_coproduct_from_group, CoproductMap,
};
use rikitake_core::liebialg::{catalog as algebras, MatrixLieGroupRep};
use rikitake_core::poisson::{
    casimir_residual, jacobi_residual, lie_poisson, max_abs_diff, PoissonStructure,
};
use rikitake_core::realization::{
    sample_canonical, standard_realizations, time_of_flight, time_of_flight_ode,
    EffectivePotentialSpec,
};
use rikitake_core::sampling::uniform_points;
use rikitake_core::systems::structures as st;
use rikitake_core::systems::{
    bihamiltonian_agreement, bracket_catalog, build, catalog, params, sample_points,
    sample_points_for_bracket, spec, Params, SpecKind,
};
use rikitake_core::Dynamics;
use serde::Serialize;

use crate::error::{CliError, CliResult};

const SEED: u64 = 20;
const POINTS: usize = 100;

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub property: &'static str,
    pub subject: String,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub scope: String,
    pub pass: bool,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }
}

/// Scopes besides `all` and the catalog ids.
pub const EXTRA_SCOPES: [&str; 4] = ["coproducts", "realizations", "cluster", "broken-fixture"];

/// Largest residual over `items`; an evaluation error counts as `∞`.
fn check<T, F>(
    property: &'static str,
    subject: impl Into<String>,
    tolerance: f64,
    items: &[T],
    f: F,
) -> Check
where
    T: Sync,
    F: Fn(&T) -> rikitake_core::Result<f64> + Sync,
{
    let worst = items
        .par_iter()
        .map(|x| f(x).unwrap_or(f64::INFINITY))
        .reduce(|| 0.0, f64::max);
    Check {
        property,
        subject: subject.into(),
        max_residual: worst,
        tolerance,
        pass: worst < tolerance,
    }
}

fn bracket_checks(label: &str, s: &PoissonStructure, points: &[Vec<f64>]) -> Vec<Check> {
    let mut out = vec![check("jacobi_residual", label, 1e-9, points, |x| {
        jacobi_residual(s, x)
    })];
    for c in s.casimirs() {
        out.push(check(
            "casimir_residual",
            format!("{label}: {}", c.name()),
            1e-9,
            points,
            |x| casimir_residual(s, c, x),
        ));
    }
    out
}

fn system_checks(id: &str) -> CliResult<Vec<Check>> {
    let spec = spec(id).map_err(|e| CliError::invalid("scope", e))?;
    let mut out = Vec::new();
    for (label, s) in bracket_catalog() {
        if label == id || label.starts_with(&format!("{id}(")) {
            let pts = sample_points_for_bracket(&label, s.dim(), SEED, POINTS);
            out.extend(bracket_checks(&label, &s, &pts));
        }
    }
    let pts = sample_points(id, SEED, POINTS).map_err(|e| CliError::Runtime(e.to_string()))?;
    let built = build(id, &Params::new()).map_err(|e| CliError::Runtime(e.to_string()))?;
    for sys in built.hamiltonian_systems() {
        if sys.has_handcoded() {
            out.push(check("vector_field_match", sys.id(), 1e-9, &pts, |x| {
                sys.handcoded_mismatch(x).expect("handcoded field present")
            }));
        }
    }
    if spec.kind == SpecKind::BiHamiltonian {
        let etas: &[f64] = if spec.deformed {
            &[0.5, 1.0, 2.0]
        } else {
            &[f64::NAN]
        };
        for &eta in etas {
            let (p, subject) = if eta.is_nan() {
                (Params::new(), id.to_string())
            } else {
                (params([("eta", eta)]), format!("{id}(eta={eta})"))
            };
            out.push(check(
                "bihamiltonian_agreement",
                subject,
                1e-10,
                &pts,
                |x| bihamiltonian_agreement(id, &p, x),
            ));
        }
    }
    if id == "rikitake-general" {
        let a = build("case-a", &Params::new()).map_err(|e| CliError::Runtime(e.to_string()))?;
        let a_pts =
            sample_points("case-a", SEED, POINTS).map_err(|e| CliError::Runtime(e.to_string()))?;
        out.push(check("reduces_to_case_a", id, 1e-15, &a_pts, |x| {
            Ok(max_abs_diff(
                &built.dynamics().rhs(x)?,
                &a.dynamics().rhs(x)?,
            ))
        }));
    }
    Ok(out)
}

fn coproduct_checks() -> Vec<Check> {
    let pts = uniform_points(SEED, POINTS, 6, -2.0, 2.0);
    let eta = 1.0;
    let mut out = vec![
        check("poisson_map_residual", "book", 1e-9, &pts, |s| {
            poisson_map_residual(&st::book(eta), &CoproductMap::book(eta), s)
        }),
        check("poisson_map_residual", "heisenberg-weyl", 1e-9, &pts, |s| {
            poisson_map_residual(&st::heisenberg(eta), &CoproductMap::heisenberg_weyl(eta), s)
        }),
    ];
    for lambda in [0.0, 0.25, 1.0] {
        out.push(check(
            "poisson_map_residual",
            format!("primed(lambda={lambda})"),
            1e-9,
            &pts,
            |s| poisson_map_residual(&st::ab_primed(lambda, eta), &CoproductMap::primed(eta), s),
        ));
    }
    let book = MatrixLieGroupRep::book(eta).expect("η ≠ 0");
    let hw = MatrixLieGroupRep::heisenberg_weyl(eta).expect("η ≠ 0");
    let halves = |s: &[f64]| ([s[0], s[1], s[2]], [s[3], s[4], s[5]]);
    out.push(check("coproduct_oracle", "book", 1e-12, &pts, |s| {
        let (a, b) = halves(s);
        Ok(max_abs_diff(
            &CoproductMap::book(eta).apply(s),
            &coproduct_from_group(&book, &a, &b),
        ))
    }));
    out.push(check(
        "coproduct_oracle",
        "heisenberg-weyl",
        1e-12,
        &pts,
        |s| {
            let (a, b) = halves(s);
            Ok(max_abs_diff(
                &CoproductMap::heisenberg_weyl(eta).apply(s),
                &coproduct_from_group(&hw, &a, &b),
            ))
        },
    ));
    out.push(check("coproduct_oracle", "primed", 1e-12, &pts, |s| {
        let (a, b) = halves(s);
        Ok(max_abs_diff(
            &CoproductMap::primed(eta).apply(s),
            &primed_coproduct_from_group(eta, &a, &b)?,
        ))
    }));
    out
}

pub fn time_of_flight_cases() -> [(EffectivePotentialSpec, f64); 3] {
    [
        (EffectivePotentialSpec::CaseA { k: 1.0, alpha: 1.0 }, 1.0),
        (EffectivePotentialSpec::AbLambda0 { k: 1.0 }, 3.0),
        (EffectivePotentialSpec::AbLambda1 { k: -1.0 }, 0.2),
    ]
}

fn realization_checks() -> CliResult<Vec<Check>> {
    let mut out = Vec::new();
    for r in standard_realizations().map_err(|e| CliError::Runtime(e.to_string()))? {
        let pts = sample_canonical(&r, SEED, POINTS);
        out.push(check(
            "pushforward_residual",
            r.kind.id(),
            1e-9,
            &pts,
            |&(q, p)| r.pushforward_residual(q, p),
        ));
        out.push(check(
            "casimir_constancy",
            r.kind.id(),
            1e-10,
            &pts,
            |&(q, p)| r.casimir_defect(q, p),
        ));
    }
    for (spec, e) in time_of_flight_cases() {
        out.push(check(
            "time_of_flight",
            format!("{spec:?}"),
            1e-5,
            &[()],
            |_| {
                Ok(
                    (time_of_flight(&spec, e, 0.0, 0.5)? - time_of_flight_ode(&spec, e, 0.0, 0.5)?)
                        .abs(),
                )
            },
        ));
    }
    Ok(out)
}

fn cluster_checks() -> Vec<Check> {
    let pts = uniform_points(SEED, POINTS, 6, -1.5, 1.5);
    let mut out = Vec::new();
    for lambda in [0u8, 1] {
        out.push(check(
            "cluster_residual",
            format!("lambda={lambda}"),
            1e-8,
            &pts,
            |s| cluster_dynamics_residual(lambda, 1.0, s),
        ));
        out.push(check(
            "chart_equation_residual",
            format!("lambda={lambda}"),
            1e-9,
            &pts,
            |s| chart_equation_residual(lambda, 1.0, s),
        ));
    }
    out
}

/// The deliberately broken bracket table as a Lie-Poisson structure.
pub fn broken_fixture() -> PoissonStructure {
    lie_poisson("broken-fixture", &algebras::broken_algebra())
}

pub fn verify(scope: &str) -> CliResult<VerifyReport> {
    let checks = match scope {
        "all" => {
            let mut all = Vec::new();
            for s in catalog() {
                all.extend(system_checks(s.id)?);
            }
            all.extend(coproduct_checks());
            all.extend(realization_checks()?);
            all.extend(cluster_checks());
            all
        }
        "coproducts" => coproduct_checks(),
        "realizations" => realization_checks()?,
        "cluster" => cluster_checks(),
        "broken-fixture" => {
            let s = broken_fixture();
            bracket_checks(
                "broken-fixture",
                &s,
                &uniform_points(SEED, POINTS, 3, -2.0, 2.0),
            )
        }
        id => system_checks(id).map_err(|_| {
            let ids: Vec<&str> = catalog().iter().map(|s| s.id).collect();
            CliError::invalid(
                "scope",
                format!("`{id}` (expected all, a catalog id {ids:?}, or one of {EXTRA_SCOPES:?})"),
            )
        })?,
    };
    Ok(VerifyReport {
        scope: scope.to_string(),
        pass: checks.iter().all(|c| c.pass),
        checks,
    })
}
