use rikitake_core::liebialg::{catalog, solve_common_cocycle, standard_lambdas, Survivor, Q};
use serde::Serialize;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Serialize)]
pub struct CocycleReport {
    pub beta: String,
    /// Dimension of the common 1-cocycle space of the pencil.
    pub nullspace_dim: usize,
    /// Co-Jacobi holds on the whole space.
    pub closed: bool,
    /// Largest linear subspace on which co-Jacobi holds.
    pub post_filter_dim: usize,
    pub exact: bool,
    pub survivors: Vec<Vec<String>>,
    /// The book cocommutator (extended by the central element) is a common
    /// cocycle satisfying co-Jacobi.
    pub book_survives: bool,
}

pub fn parse_beta(text: &str) -> CliResult<Q> {
    text.trim().parse::<Q>().map_err(|_| {
        CliError::invalid(
            "--beta",
            format!("`{text}` is not an integer or fraction p/q"),
        )
    })
}

pub fn cocycle(beta: &Q) -> CliResult<CocycleReport> {
    let pencil = catalog::case_b_pencil(beta.clone());
    let space = solve_common_cocycle(&pencil, &standard_lambdas())
        .map_err(|e| CliError::Runtime(e.to_string()))?;
    let analysis = space.analyze_cojacobi();
    let survivors = analysis
        .survivors
        .iter()
        .map(|s| match s {
            Survivor::Rational(d) => d.describe(),
            Survivor::Irrational { c1, c0, plus } => vec![format!(
                "s·b0 + b1 with s = (−({c1}) {} √(({c1})² − 4·({c0})))/2",
                if *plus { "+" } else { "−" }
            )],
        })
        .collect();
    Ok(CocycleReport {
        beta: beta.to_string(),
        nullspace_dim: analysis.nullspace_dim,
        closed: analysis.closed,
        post_filter_dim: analysis.surviving_dim,
        exact: analysis.exact,
        survivors,
        book_survives: space.survives(&catalog::book_cocommutator_extended()),
    })
}

pub fn render(r: &CocycleReport) -> String {
    let yes = |b: bool| if b { "yes" } else { "no" };
    let mut lines = vec![
        format!("case-B pencil, beta = {}", r.beta),
        format!("common cocycle nullspace dimension: {}", r.nullspace_dim),
        format!("co-Jacobi holds on the whole space: {}", yes(r.closed)),
        format!(
            "dimension after co-Jacobi filtering: {}{}",
            r.post_filter_dim,
            if r.exact { "" } else { " (lower bound)" }
        ),
    ];
    for (i, s) in r.survivors.iter().enumerate() {
        lines.push(format!("surviving line {}: {}", i + 1, s.join(", ")));
    }
    lines.push(format!(
        "book cocommutator survives: {}",
        yes(r.book_survives)
    ));
    lines.join("\n")
}
