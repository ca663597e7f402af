//! Catalog of the concrete Rikitake systems and their deformations.
//!
//! Every entry is identified by a stable string id and built from a
//! name→value parameter map. Unknown parameter names are rejected; missing
//! ones take the documented default. Entries with two Hamiltonian structures
//! build into [`Built::Pair`], which also carries the pencil member at the
//! requested λ with Hamiltonian `H₀ + H₁` (each `H` is a Casimir of the
//! other structure, so the sum generates the common flow for every λ).
//!
//! The central generator of case B is labelled `I` (also written `W`).

pub mod stable;
pub mod structures;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::ScalarField;
use crate::poisson::{
    max_abs_diff, Dynamics, HamiltonianSystem, PoissonStructure, VectorFieldSystem,
};
use crate::sampling::filtered_points;
use stable::{expm1_over, sinh_over};
use structures as st;

pub type Params = BTreeMap<String, f64>;

/// Builds a parameter map from `(name, value)` pairs.
pub fn params<'a>(pairs: impl IntoIterator<Item = (&'a str, f64)>) -> Params {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct ParamSpec {
    pub name: &'static str,
    pub default: f64,
    pub description: &'static str,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpecKind {
    /// A vector field without Hamiltonian structure.
    Plain,
    Hamiltonian,
    BiHamiltonian,
}

#[derive(Debug, Clone, Serialize)]
pub struct SystemSpec {
    pub id: &'static str,
    pub anchor: &'static str,
    pub kind: SpecKind,
    /// Has an η → 0 limit form.
    pub deformed: bool,
    pub params: Vec<ParamSpec>,
}

const ALPHA: ParamSpec = ParamSpec {
    name: "alpha",
    default: 1.0,
    description: "forcing constant α",
};
const ETA: ParamSpec = ParamSpec {
    name: "eta",
    default: 1.0,
    description: "deformation parameter η",
};
const LAMBDA: ParamSpec = ParamSpec {
    name: "lambda",
    default: 0.0,
    description: "pencil parameter λ",
};

/// All entries, in a fixed order.
pub fn catalog() -> Vec<SystemSpec> {
    vec![
        SystemSpec {
            id: "rikitake-general",
            anchor: "generalized Rikitake dynamical system",
            kind: SpecKind::Plain,
            deformed: false,
            params: vec![
                ALPHA,
                ParamSpec {
                    name: "beta1",
                    default: 0.0,
                    description: "β₁",
                },
                ParamSpec {
                    name: "beta2",
                    default: 0.0,
                    description: "β₂",
                },
                ParamSpec {
                    name: "mu",
                    default: 0.0,
                    description: "friction μ",
                },
            ],
        },
        SystemSpec {
            id: "case-a",
            anchor: "case A: Lie-Poisson Hamiltonian structure on (1+1) Poincaré",
            kind: SpecKind::Hamiltonian,
            deformed: false,
            params: vec![ALPHA],
        },
        SystemSpec {
            id: "case-b-pencil",
            anchor: "case B: non-trivial central extension of the Poincaré algebra",
            kind: SpecKind::BiHamiltonian,
            deformed: false,
            params: vec![
                ParamSpec {
                    name: "beta",
                    default: 1.0,
                    description: "central-extension constant β",
                },
                LAMBDA,
            ],
        },
        SystemSpec {
            id: "case-ab-pencil",
            anchor: "case AB: admits the bi-Hamiltonian description",
            kind: SpecKind::BiHamiltonian,
            deformed: false,
            params: vec![LAMBDA],
        },
        SystemSpec {
            id: "case-a-book",
            anchor: "case A: book group deformation",
            kind: SpecKind::Hamiltonian,
            deformed: true,
            params: vec![ALPHA, ETA],
        },
        SystemSpec {
            id: "case-a-heisenberg",
            anchor: "case A: Heisenberg-Weyl deformation",
            kind: SpecKind::Hamiltonian,
            deformed: true,
            params: vec![ALPHA, ETA],
        },
        SystemSpec {
            id: "case-ab-deformed",
            anchor: "case AB: Casimir function for this Poisson-Lie group structure",
            kind: SpecKind::BiHamiltonian,
            deformed: true,
            params: vec![LAMBDA, ETA],
        },
        SystemSpec {
            id: "case-ab-primed",
            anchor: "case AB: primed variables under the transformation x' = e^{-ηz/2} x",
            kind: SpecKind::BiHamiltonian,
            deformed: true,
            params: vec![LAMBDA, ETA],
        },
    ]
}

pub fn spec(id: &str) -> Result<SystemSpec> {
    catalog()
        .into_iter()
        .find(|s| s.id == id)
        .ok_or_else(|| Error::UnknownSystem(id.to_string()))
}

/// Fill defaults and reject unknown or non-finite parameters.
pub fn resolve_params(id: &str, given: &Params) -> Result<Params> {
    let spec = spec(id)?;
    for (k, v) in given {
        if !spec.params.iter().any(|p| p.name == k) {
            let known: Vec<&str> = spec.params.iter().map(|p| p.name).collect();
            return Err(Error::parameter(
                k,
                format!("not a parameter of `{id}` (expected one of {known:?})"),
            ));
        }
        if !v.is_finite() {
            return Err(Error::parameter(k, "must be finite"));
        }
    }
    Ok(spec
        .params
        .iter()
        .map(|p| {
            (
                p.name.to_string(),
                given.get(p.name).copied().unwrap_or(p.default),
            )
        })
        .collect())
}

/// A built catalog entry.
#[derive(Debug, Clone)]
pub enum Built {
    Plain(VectorFieldSystem),
    Single(HamiltonianSystem),
    /// The two Hamiltonian structures (λ = 0 and λ = 1) and the pencil
    /// member at the requested λ.
    Pair {
        first: HamiltonianSystem,
        second: HamiltonianSystem,
        member: HamiltonianSystem,
    },
}

impl Built {
    /// The system to integrate: the λ = 0 structure for pairs.
    pub fn dynamics(&self) -> &dyn Dynamics {
        match self {
            Built::Plain(s) => s,
            Built::Single(s) => s,
            Built::Pair { first, .. } => first,
        }
    }

    /// Every Hamiltonian system contained in the entry.
    pub fn hamiltonian_systems(&self) -> Vec<&HamiltonianSystem> {
        match self {
            Built::Plain(_) => vec![],
            Built::Single(s) => vec![s],
            Built::Pair {
                first,
                second,
                member,
            } => vec![first, second, member],
        }
    }

    pub fn single(&self) -> Option<&HamiltonianSystem> {
        match self {
            Built::Single(s) => Some(s),
            _ => None,
        }
    }

    pub fn pair(&self) -> Option<(&HamiltonianSystem, &HamiltonianSystem)> {
        match self {
            Built::Pair { first, second, .. } => Some((first, second)),
            _ => None,
        }
    }
}

fn get(p: &Params, k: &str) -> f64 {
    p[k]
}

fn check_lambda_casimir(lambda: f64) -> Result<()> {
    if lambda == 0.5 {
        Err(Error::parameter(
            "lambda",
            "λ = 1/2 makes the Casimir denominator 8λ − 4 vanish",
        ))
    } else {
        Ok(())
    }
}

fn check_eta_nonzero(id: &str, eta: f64) -> Result<()> {
    if eta == 0.0 {
        Err(Error::parameter(
            "eta",
            format!("η = 0 divides by zero in `{id}`; use `case-ab-pencil` or limit_eta_zero for the undeformed system"),
        ))
    } else {
        Ok(())
    }
}

fn case_a_field(alpha: f64) -> impl Fn(&[f64]) -> Vec<f64> + Send + Sync + Clone {
    move |x: &[f64]| vec![x[1] * x[2], x[0] * x[2], alpha - x[0] * x[1]]
}

fn ab_field(x: &[f64]) -> Vec<f64> {
    vec![x[1] * x[2], x[0] * x[2], -x[0] * x[1]]
}

/// The common deformed AB flow, written with the stable quotient.
pub fn ab_deformed_field(eta: f64) -> impl Fn(&[f64]) -> Vec<f64> + Send + Sync + Clone {
    move |x: &[f64]| {
        let e = (-eta * x[2]).exp();
        let q = expm1_over(2.0, x[2], eta);
        vec![
            x[1] * e * (q - eta * x[0] * x[0]) / 2.0,
            x[0] * e * (q - eta * x[1] * x[1]) / 2.0,
            -e * x[0] * x[1],
        ]
    }
}

/// The one-copy primed flow `(y' s, x' s, −x'y')`, `s = sinh(ηz')/η`.
pub fn ab_primed_field(eta: f64) -> impl Fn(&[f64]) -> Vec<f64> + Send + Sync + Clone {
    move |x: &[f64]| {
        let s = sinh_over(x[2], eta);
        vec![x[1] * s, x[0] * s, -x[0] * x[1]]
    }
}

fn pair(
    id: &str,
    lambda: f64,
    s0: PoissonStructure,
    h0: ScalarField,
    s1: PoissonStructure,
    h1: ScalarField,
    member: PoissonStructure,
    field: impl Fn(&[f64]) -> Vec<f64> + Send + Sync + Clone + 'static,
) -> Built {
    let sum = h0.linear_combination(1.0, &h1, 1.0, "H_0+H_1");
    Built::Pair {
        first: HamiltonianSystem::new(format!("{id}[lambda=0]"), s0, h0)
            .with_handcoded(field.clone()),
        second: HamiltonianSystem::new(format!("{id}[lambda=1]"), s1, h1)
            .with_handcoded(field.clone()),
        member: HamiltonianSystem::new(format!("{id}[lambda={lambda}]"), member, sum)
            .with_handcoded(field),
    }
}

/// Build a catalog entry.
pub fn build(id: &str, given: &Params) -> Result<Built> {
    let p = resolve_params(id, given)?;
    Ok(match id {
        "rikitake-general" => {
            let (alpha, b1, b2, mu) = (
                get(&p, "alpha"),
                get(&p, "beta1"),
                get(&p, "beta2"),
                get(&p, "mu"),
            );
            Built::Plain(VectorFieldSystem::new(id, st::XYZ, move |x| {
                vec![
                    -mu * x[0] + x[1] * (x[2] + b1),
                    -mu * x[1] + x[0] * (x[2] - b2),
                    alpha - x[0] * x[1],
                ]
            }))
        }
        "case-a" => {
            let alpha = get(&p, "alpha");
            Built::Single(
                HamiltonianSystem::new(
                    id,
                    st::poincare().with_casimir(st::casimir_a()),
                    st::hamiltonian_a(alpha),
                )
                .with_handcoded(case_a_field(alpha)),
            )
        }
        "case-b-pencil" => {
            let (beta, lambda) = (get(&p, "beta"), get(&p, "lambda"));
            let field = move |x: &[f64]| {
                vec![
                    x[1] * (x[2] + beta),
                    x[0] * (x[2] - beta),
                    -x[0] * x[1],
                    0.0,
                ]
            };
            let s0 = st::case_b_pencil(beta, 0.0)
                .with_casimir(st::casimir_b0(beta))
                .with_casimir(st::central_i());
            let s1 = st::case_b_pencil(beta, 1.0)
                .with_casimir(st::casimir_b1())
                .with_casimir(st::central_i());
            let member = st::case_b_pencil(beta, lambda)
                .with_casimir(st::casimir_b_pencil(beta, lambda))
                .with_casimir(st::central_i());
            pair(
                id,
                lambda,
                s0,
                st::h0_b(),
                s1,
                st::h1_b(beta),
                member,
                field,
            )
        }
        "case-ab-pencil" => {
            let lambda = get(&p, "lambda");
            check_lambda_casimir(lambda)?;
            pair(
                id,
                lambda,
                st::ab_pencil(0.0).with_casimir(st::casimir_ab_pencil(0.0)),
                st::h0_ab(),
                st::ab_pencil(1.0).with_casimir(st::casimir_ab_pencil(1.0)),
                st::h1_ab(),
                st::ab_pencil(lambda).with_casimir(st::casimir_ab_pencil(lambda)),
                ab_field,
            )
        }
        "case-a-book" => {
            let (alpha, eta) = (get(&p, "alpha"), get(&p, "eta"));
            Built::Single(
                HamiltonianSystem::new(
                    id,
                    st::book(eta).with_casimir(st::casimir_book(eta)),
                    st::hamiltonian_a(alpha),
                )
                .with_handcoded(move |x| {
                    let d = eta / 2.0 * (x[0] - x[1]);
                    vec![
                        x[1] * x[2] + d * alpha,
                        x[0] * x[2] + d * (x[0] * (x[0] + x[1]) - alpha),
                        alpha - x[0] * x[1],
                    ]
                }),
            )
        }
        "case-a-heisenberg" => {
            let (alpha, eta) = (get(&p, "alpha"), get(&p, "eta"));
            Built::Single(
                HamiltonianSystem::new(
                    id,
                    st::heisenberg(eta).with_casimir(st::casimir_heisenberg(eta)),
                    st::hamiltonian_a(alpha),
                )
                .with_handcoded(move |x| {
                    vec![
                        x[2] * (x[1] + eta * x[0]),
                        x[2] * (x[0] + eta * x[1]),
                        alpha - x[0] * x[1] + eta * (alpha - x[0] * x[0]),
                    ]
                }),
            )
        }
        "case-ab-deformed" => {
            let (lambda, eta) = (get(&p, "lambda"), get(&p, "eta"));
            check_eta_nonzero(id, eta)?;
            pair(
                id,
                lambda,
                st::ab_deformed(0.0, eta).with_casimir(st::casimir_ab_deformed(0.0, eta)),
                st::h0_ab_deformed(eta),
                st::ab_deformed(1.0, eta).with_casimir(st::casimir_ab_deformed(1.0, eta)),
                st::h1_ab_deformed(eta),
                st::ab_deformed(lambda, eta).with_casimir(st::casimir_ab_deformed(lambda, eta)),
                ab_deformed_field(eta),
            )
        }
        "case-ab-primed" => {
            let (lambda, eta) = (get(&p, "lambda"), get(&p, "eta"));
            check_eta_nonzero(id, eta)?;
            pair(
                id,
                lambda,
                st::ab_primed(0.0, eta).with_casimir(st::casimir_ab_primed(0.0, eta)),
                st::h0_ab_primed(eta),
                st::ab_primed(1.0, eta).with_casimir(st::casimir_ab_primed(1.0, eta)),
                st::h1_ab_primed(),
                st::ab_primed(lambda, eta).with_casimir(st::casimir_ab_primed(lambda, eta)),
                ab_primed_field(eta),
            )
        }
        other => return Err(Error::UnknownSystem(other.to_string())),
    })
}

/// The explicitly coded η → 0 form of a deformed entry.
///
/// The bracket is the undeformed one (built by the same constructor as the
/// undeformed entry); the Casimir is the coded limit. For the AB entries the
/// result is the pencil member at the requested λ with Hamiltonian
/// `H₀ + H₁` of the undeformed pair.
pub fn limit_eta_zero(id: &str, given: &Params) -> Result<HamiltonianSystem> {
    let spec = spec(id)?;
    if !spec.deformed {
        return Err(Error::parameter(
            "id",
            format!("`{id}` is not a deformed entry"),
        ));
    }
    let p = resolve_params(id, given)?;
    let limit_id = format!("{id}[eta->0]");
    Ok(match id {
        "case-a-book" | "case-a-heisenberg" => {
            let alpha = get(&p, "alpha");
            HamiltonianSystem::new(
                limit_id,
                st::poincare().with_casimir(st::casimir_quadratic_limit()),
                st::hamiltonian_a(alpha),
            )
            .with_handcoded(case_a_field(alpha))
        }
        _ => {
            let lambda = get(&p, "lambda");
            let h = st::h0_ab().linear_combination(1.0, &st::h1_ab(), 1.0, "H_0+H_1");
            let names = if id == "case-ab-primed" {
                st::PRIMED
            } else {
                st::XYZ
            };
            let s = st::ab_pencil(lambda).with_casimir(st::casimir_ab_limit(lambda));
            let s = if id == "case-ab-primed" {
                rename_coordinates(&s, &names)
            } else {
                s
            };
            HamiltonianSystem::new(limit_id, s, h).with_handcoded(ab_field)
        }
    })
}

fn rename_coordinates(s: &PoissonStructure, names: &[&str; 3]) -> PoissonStructure {
    let entries = vec![s.entry(0, 1), s.entry(0, 2), s.entry(1, 2)];
    let mut out =
        PoissonStructure::from_upper(s.name(), names.iter().copied(), entries).expect("3D");
    for c in s.casimirs() {
        out = out.with_casimir(c.clone());
    }
    out
}

/// `‖Π₀∇H₀ − Π₁∇H₁‖∞` at `x` for a bi-Hamiltonian entry.
pub fn bihamiltonian_agreement(id: &str, given: &Params, x: &[f64]) -> Result<f64> {
    let built = build(id, given)?;
    let (a, b) = built.pair().ok_or_else(|| {
        Error::parameter("id", format!("`{id}` has a single Hamiltonian structure"))
    })?;
    Ok(max_abs_diff(&a.vector_field(x)?, &b.vector_field(x)?))
}

/// The agreement check with `H₀` replaced by `H₁`: `‖Π₀∇H₁ − Π₁∇H₁‖∞`.
///
/// Exchanging both Hamiltonians would compare `0` with `0`, since each is a
/// Casimir of the other structure.
pub fn swapped_agreement(id: &str, given: &Params, x: &[f64]) -> Result<f64> {
    let built = build(id, given)?;
    let (a, b) = built.pair().ok_or_else(|| {
        Error::parameter("id", format!("`{id}` has a single Hamiltonian structure"))
    })?;
    let u = crate::poisson::poisson_vector_field(a.structure(), b.hamiltonian(), x)?;
    let v = b.vector_field(x)?;
    Ok(max_abs_diff(&u, &v))
}

/// The λ values at which pencils are evaluated in the bracket catalog.
pub const CATALOG_LAMBDAS: [f64; 3] = [0.0, 0.25, 1.0];

/// Every bracket of the catalog with its registered Casimirs, pencils
/// evaluated at λ ∈ {0, 1/4, 1} and deformations at η = 1.
///
/// The ten distinct brackets are Poincaré, extended Poincaré, extended
/// so(3), so(3), book, Heisenberg-Weyl, and the deformed and primed AB
/// brackets at λ = 0 and λ = 1; the λ = 1/4 members are checked as well.
pub fn bracket_catalog() -> Vec<(String, PoissonStructure)> {
    let mut out = vec![(
        "case-a".to_string(),
        st::poincare().with_casimir(st::casimir_a()),
    )];
    for l in CATALOG_LAMBDAS {
        out.push((
            format!("case-b-pencil(lambda={l})"),
            st::case_b_pencil(1.0, l)
                .with_casimir(st::casimir_b_pencil(1.0, l))
                .with_casimir(st::central_i()),
        ));
    }
    out.push((
        "case-b-pencil(lambda=0, C_0)".to_string(),
        st::case_b_pencil(1.0, 0.0).with_casimir(st::casimir_b0(1.0)),
    ));
    out.push((
        "case-b-pencil(lambda=1, C_1)".to_string(),
        st::case_b_pencil(1.0, 1.0).with_casimir(st::casimir_b1()),
    ));
    for l in CATALOG_LAMBDAS {
        out.push((
            format!("case-ab-pencil(lambda={l})"),
            st::ab_pencil(l).with_casimir(st::casimir_ab_pencil(l)),
        ));
    }
    out.push((
        "case-a-book(eta=1)".to_string(),
        st::book(1.0).with_casimir(st::casimir_book(1.0)),
    ));
    out.push((
        "case-a-heisenberg(eta=1)".to_string(),
        st::heisenberg(1.0).with_casimir(st::casimir_heisenberg(1.0)),
    ));
    for l in CATALOG_LAMBDAS {
        out.push((
            format!("case-ab-deformed(lambda={l}, eta=1)"),
            st::ab_deformed(l, 1.0).with_casimir(st::casimir_ab_deformed(l, 1.0)),
        ));
    }
    for l in CATALOG_LAMBDAS {
        out.push((
            format!("case-ab-primed(lambda={l}, eta=1)"),
            st::ab_primed(l, 1.0).with_casimir(st::casimir_ab_primed(l, 1.0)),
        ));
    }
    out
}

/// Margin kept from domain boundaries by [`sample_points`].
pub const DOMAIN_MARGIN: f64 = 0.05;

/// `count` seeded points in `[−2, 2]^dim` inside the smooth domain of every
/// field the entry uses: `x + y > 0` for `H^A`, `y > |x|` for the
/// Heisenberg-Weyl Casimir, and `I = 1` for case B (where its printed
/// Hamiltonians assume the central value 1).
pub fn sample_points(id: &str, seed: u64, count: usize) -> Result<Vec<Vec<f64>>> {
    let m = DOMAIN_MARGIN;
    Ok(match id {
        "case-a" | "case-a-book" => {
            filtered_points(seed, count, 3, -2.0, 2.0, |_| {}, |p| p[0] + p[1] > m)
        }
        "case-a-heisenberg" => {
            filtered_points(seed, count, 3, -2.0, 2.0, |_| {}, |p| p[1] - p[0].abs() > m)
        }
        "case-b-pencil" => filtered_points(seed, count, 4, -2.0, 2.0, |p| p[3] = 1.0, |_| true),
        "rikitake-general" | "case-ab-pencil" | "case-ab-deformed" | "case-ab-primed" => {
            filtered_points(seed, count, 3, -2.0, 2.0, |_| {}, |_| true)
        }
        other => return Err(Error::UnknownSystem(other.to_string())),
    })
}

/// Points for a bracket-catalog entry: the domain-restricted sampler of its
/// system for the Heisenberg-Weyl Casimir, `I ≠ 0` for `C_0`, and the plain
/// cube otherwise.
pub fn sample_points_for_bracket(
    label: &str,
    dim: usize,
    seed: u64,
    count: usize,
) -> Vec<Vec<f64>> {
    let m = DOMAIN_MARGIN;
    if label.starts_with("case-a-heisenberg") {
        filtered_points(
            seed,
            count,
            dim,
            -2.0,
            2.0,
            |_| {},
            |p| p[1] - p[0].abs() > m,
        )
    } else if label.contains("C_0") {
        filtered_points(seed, count, dim, -2.0, 2.0, |_| {}, |p| p[3].abs() > m)
    } else {
        filtered_points(seed, count, dim, -2.0, 2.0, |_| {}, |_| true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_has_the_expected_ids() {
        let ids: Vec<&str> = catalog().iter().map(|s| s.id).collect();
        assert!(ids.len() >= 8);
        assert!(ids.contains(&"case-a") && ids.contains(&"case-ab-deformed"));
    }

    #[test]
    fn unknown_parameter_is_rejected() {
        let err = build("case-a", &params([("alhpa", 1.0)])).unwrap_err();
        assert!(matches!(err, Error::Parameter { .. }));
    }

    #[test]
    fn unknown_id_is_rejected() {
        assert!(matches!(
            build("case-z", &Params::new()).unwrap_err(),
            Error::UnknownSystem(_)
        ));
    }

    #[test]
    fn lambda_one_half_is_rejected_for_the_pencil_casimir() {
        assert!(build("case-ab-pencil", &params([("lambda", 0.5)])).is_err());
    }

    #[test]
    fn zero_eta_points_to_the_undeformed_entry() {
        let err = build("case-ab-deformed", &params([("eta", 0.0)])).unwrap_err();
        assert!(err.to_string().contains("case-ab-pencil"));
    }
}
