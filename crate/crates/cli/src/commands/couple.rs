use std::path::{Path, PathBuf};

use rikitake_core::coupling::{
    cluster_dynamics_residual, coupled_system, one_copy_system, to_cluster_chart, CLUSTER_NAMES,
};
use rikitake_core::integrate::{
    integrate, sample_on_grid, IntegratorConfig, Termination, Trajectory,
};
use serde::{Deserialize, Serialize};

use crate::config::hash_json;
use crate::error::{CliError, CliResult};
use crate::table::{self, Column};

pub const COUPLE_IC: [f64; 6] = [0.5, 1.0, 1.0, 0.3, 0.8, -0.2];

/// Two-copy run description; JSON with unknown keys rejected.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoupleConfig {
    pub lambda: u8,
    pub eta: f64,
    pub initial_condition: Vec<f64>,
    pub integrator: IntegratorConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_dir: Option<PathBuf>,
}

impl CoupleConfig {
    pub fn new(lambda: u8, eta: f64) -> Self {
        CoupleConfig {
            lambda,
            eta,
            initial_condition: COUPLE_IC.to_vec(),
            integrator: IntegratorConfig::adaptive(20.0),
            output_dir: None,
        }
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::invalid("--config", format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::invalid("config", e))
    }

    fn validate(&self) -> CliResult<()> {
        if self.lambda > 1 {
            return Err(CliError::invalid(
                "lambda",
                format!("must be 0 or 1, got {}", self.lambda),
            ));
        }
        if !self.eta.is_finite() {
            return Err(CliError::invalid("eta", "must be finite"));
        }
        if self.initial_condition.len() != 6 {
            return Err(CliError::invalid(
                "initial_condition",
                format!("needs 6 coordinates, got {}", self.initial_condition.len()),
            ));
        }
        if let Some(i) = self.initial_condition.iter().position(|v| !v.is_finite()) {
            return Err(CliError::invalid(
                &format!("initial_condition[{i}]"),
                "must be finite",
            ));
        }
        self.integrator
            .validate()
            .map_err(|e| CliError::invalid("integrator", e))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CoupleReport {
    pub config_hash: String,
    pub lambda: u8,
    pub eta: f64,
    pub csv: String,
    pub termination: Termination,
    pub samples: usize,
    pub drift: Vec<(String, f64)>,
    /// Max |(x+, y+, z+) − one-copy run| over the samples.
    pub max_cluster_deviation: f64,
    pub max_cluster_residual: f64,
}

pub struct CoupleRun {
    pub trajectory: Trajectory,
    /// `(x+, y+, z+, x'1, y'1, z'1)` per sample.
    pub chart: Vec<[f64; 6]>,
    /// One-copy run from the initial cluster point, on the same times.
    pub one_copy: Vec<Vec<f64>>,
    pub residuals: Vec<f64>,
}

impl CoupleRun {
    pub fn max_cluster_deviation(&self) -> f64 {
        self.chart
            .iter()
            .zip(&self.one_copy)
            .map(|(c, r)| (0..3).map(|k| (c[k] - r[k]).abs()).fold(0.0, f64::max))
            .fold(0.0, f64::max)
    }
}

fn rt(e: rikitake_core::Error) -> CliError {
    CliError::Runtime(e.to_string())
}

pub fn run(config: &CoupleConfig) -> CliResult<CoupleRun> {
    config.validate()?;
    let (lambda, eta) = (config.lambda, config.eta);
    let sys = coupled_system(lambda, eta).map_err(|e| CliError::invalid("lambda", e))?;
    let tr = integrate(&sys, &config.initial_condition, &config.integrator).map_err(rt)?;
    let chart = tr
        .states
        .iter()
        .map(|s| to_cluster_chart(eta, s))
        .collect::<rikitake_core::Result<Vec<_>>>()
        .map_err(rt)?;
    let residuals = tr
        .states
        .iter()
        .map(|s| cluster_dynamics_residual(lambda, eta, s))
        .collect::<rikitake_core::Result<Vec<_>>>()
        .map_err(rt)?;
    let one = one_copy_system(lambda, eta).map_err(rt)?;
    let one_copy =
        sample_on_grid(&one, &chart[0][..3], &tr.times, &config.integrator).map_err(rt)?;
    Ok(CoupleRun {
        trajectory: tr,
        chart,
        one_copy,
        residuals,
    })
}

/// The other λ's two-copy flow sampled on `run`'s times from the same start.
pub fn other_lambda_on_grid(config: &CoupleConfig, run: &CoupleRun) -> CliResult<Vec<[f64; 6]>> {
    let sys = coupled_system(1 - config.lambda, config.eta).map_err(rt)?;
    sample_on_grid(
        &sys,
        &config.initial_condition,
        &run.trajectory.times,
        &config.integrator,
    )
    .map_err(rt)?
    .iter()
    .map(|s| to_cluster_chart(config.eta, s).map_err(rt))
    .collect()
}

pub fn couple(config: &CoupleConfig, out: &Path) -> CliResult<CoupleReport> {
    let run = run(config)?;
    std::fs::create_dir_all(out)?;
    // the chart's internal block is copy 1 itself, already in the state columns
    let mut extra: Vec<Column> = CLUSTER_NAMES[..3]
        .iter()
        .enumerate()
        .map(|(k, name)| Column {
            name: name.to_string(),
            values: run.chart.iter().map(|c| c[k]).collect(),
        })
        .collect();
    extra.push(Column {
        name: "cluster_residual".into(),
        values: run.residuals.clone(),
    });
    let stem = format!("couple-lambda{}", config.lambda);
    let csv = format!("{stem}.csv");
    table::write_trajectory(&out.join(&csv), &run.trajectory, &extra)?;
    let report = CoupleReport {
        config_hash: hash_json(config),
        lambda: config.lambda,
        eta: config.eta,
        csv: csv.clone(),
        termination: run.trajectory.termination.clone(),
        samples: run.trajectory.len(),
        drift: run.trajectory.drift(),
        max_cluster_deviation: run.max_cluster_deviation(),
        max_cluster_residual: run.residuals.iter().copied().fold(0.0, f64::max),
    };
    std::fs::write(
        out.join(format!("{stem}-report.json")),
        serde_json::to_string_pretty(&report)? + "\n",
    )?;
    if report.termination != Termination::Completed {
        return Err(CliError::Runtime(format!(
            "coupled run truncated ({:?}); {csv} holds the valid prefix",
            report.termination
        )));
    }
    Ok(report)
}
