use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use rikitake_core::integrate::{
    integrate, orbit_closure, Closure, Metadata, Termination, Trajectory,
};
use serde::Serialize;

use crate::config::{hash_json, RunConfig};
use crate::error::{CliError, CliResult};
use crate::presets::Figure;
use crate::svg::{self, Series};
use crate::table;

/// Closure detection radius; the closest return is refined inside it.
pub const CLOSURE_EPS: f64 = 1e-2;

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub label: String,
    pub system: String,
    pub params: BTreeMap<String, f64>,
    pub initial_condition: Vec<f64>,
    pub csv: Option<String>,
    pub termination: Termination,
    pub samples: usize,
    pub accepted_steps: usize,
    pub rejected_steps: usize,
    pub final_time: f64,
    pub drift: BTreeMap<String, f64>,
    pub max_drift: f64,
    pub closure: Option<Closure>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SimulationReport {
    pub config_hash: String,
    pub source: String,
    pub runs: Vec<RunReport>,
    pub svgs: Vec<String>,
}

impl SimulationReport {
    pub fn truncated(&self) -> Vec<&RunReport> {
        self.runs
            .iter()
            .filter(|r| r.termination != Termination::Completed)
            .collect()
    }
}

pub struct RunOutput {
    pub report: RunReport,
    pub trajectory: Trajectory,
}

/// Integrate one validated configuration and write its CSV.
fn run_one(label: &str, config: &RunConfig, out: &Path) -> CliResult<RunOutput> {
    let prepared = config.prepare()?;
    let tr = integrate(
        prepared.built.dynamics(),
        &config.initial_condition,
        &config.integrator,
    )
    .map_err(|e| CliError::Runtime(format!("{label}: {e}")))?
    .with_metadata(Metadata {
        system: config.system.clone(),
        params: prepared.params.clone(),
        seed: None,
    });
    let csv = if config.emit.csv {
        let name = format!("{label}.csv");
        table::write_trajectory(&out.join(&name), &tr, &[])?;
        Some(name)
    } else {
        None
    };
    let note = match &tr.termination {
        Termination::Completed => None,
        other => Some(format!(
            "output truncated at t = {} ({other:?}); the last stored state is the last valid one",
            tr.times.last().copied().unwrap_or(0.0)
        )),
    };
    let drift: BTreeMap<String, f64> = tr.drift().into_iter().collect();
    let report = RunReport {
        label: label.to_string(),
        system: config.system.clone(),
        params: prepared.params,
        initial_condition: config.initial_condition.clone(),
        csv,
        termination: tr.termination.clone(),
        samples: tr.len(),
        accepted_steps: tr.accepted_steps,
        rejected_steps: tr.rejected_steps,
        final_time: tr.times.last().copied().unwrap_or(0.0),
        max_drift: tr.max_drift(),
        drift,
        closure: orbit_closure(&tr, CLOSURE_EPS),
        note,
    };
    Ok(RunOutput {
        report,
        trajectory: tr,
    })
}

fn projection_series(label: &str, color: &str, tr: &Trajectory, (i, j): (usize, usize)) -> Series {
    Series {
        label: label.to_string(),
        color: color.to_string(),
        points: tr.states.iter().map(|s| (s[i], s[j])).collect(),
    }
}

fn write_report(out: &Path, name: &str, report: &SimulationReport) -> CliResult<()> {
    std::fs::write(out.join(name), serde_json::to_string_pretty(report)? + "\n")?;
    Ok(())
}

fn finish(report: SimulationReport) -> CliResult<SimulationReport> {
    let truncated = report.truncated();
    if truncated.is_empty() {
        Ok(report)
    } else {
        let names: Vec<String> = truncated
            .iter()
            .map(|r| format!("{} ({})", r.label, r.note.clone().unwrap_or_default()))
            .collect();
        Err(CliError::Runtime(names.join("; ")))
    }
}

/// Run one configuration file: CSV, xz/yz/yx projections, JSON report.
pub fn simulate_config(
    config: &RunConfig,
    source: &str,
    out: &Path,
) -> CliResult<SimulationReport> {
    config.prepare()?;
    std::fs::create_dir_all(out)?;
    let label = config.system.clone();
    let run = run_one(&label, config, out)?;
    let mut svgs = Vec::new();
    if config.emit.svg && run.trajectory.coordinate_names.len() >= 3 {
        let names = &run.trajectory.coordinate_names;
        for (i, j) in [(0, 2), (1, 2), (1, 0)] {
            let file = format!("{label}-{}{}.svg", names[i], names[j]);
            let s = projection_series(&label, svg::COLORS[0], &run.trajectory, (i, j));
            std::fs::write(
                out.join(&file),
                svg::render(&label, &names[i], &names[j], &[s]),
            )?;
            svgs.push(file);
        }
    }
    let report = SimulationReport {
        config_hash: config.hash(),
        source: source.to_string(),
        runs: vec![run.report],
        svgs,
    };
    if config.emit.report {
        write_report(out, &format!("{label}-report.json"), &report)?;
    }
    finish(report)
}

/// Run the five η values of a figure in parallel, one CSV each, and draw
/// the figure's two projections.
pub fn simulate_preset(figure: Figure, out: &Path) -> CliResult<SimulationReport> {
    std::fs::create_dir_all(out)?;
    let runs = figure.runs();
    let configs: Vec<&RunConfig> = runs.iter().map(|r| &r.config).collect();
    let hash = hash_json(&configs);
    let outputs = runs
        .par_iter()
        .map(|r| run_one(&r.label, &r.config, out))
        .collect::<CliResult<Vec<RunOutput>>>()?;
    let mut svgs = Vec::new();
    let names = outputs[0].trajectory.coordinate_names.clone();
    for (i, j) in figure.projections() {
        let series: Vec<Series> = runs
            .iter()
            .zip(&outputs)
            .map(|(r, o)| {
                projection_series(&format!("η = {}", r.eta), r.color, &o.trajectory, (i, j))
            })
            .collect();
        let file = format!("{}-{}{}.svg", figure.name(), names[i], names[j]);
        let title = format!("{}: {}{} projection", figure.name(), names[i], names[j]);
        std::fs::write(
            out.join(&file),
            svg::render(&title, &names[i], &names[j], &series),
        )?;
        svgs.push(file);
    }
    let report = SimulationReport {
        config_hash: hash,
        source: format!("preset {}", figure.name()),
        runs: outputs.into_iter().map(|o| o.report).collect(),
        svgs,
    };
    write_report(out, &format!("{}-report.json", figure.name()), &report)?;
    finish(report)
}

pub fn summary(report: &SimulationReport) -> String {
    let mut lines = vec![format!("config hash {}", report.config_hash)];
    for r in &report.runs {
        let closure = r
            .closure
            .map(|c| format!("period {:.6}, closest return {:.2e}", c.period, c.distance))
            .unwrap_or_else(|| "no closure".into());
        lines.push(format!(
            "{:<24} {:>6} samples  max drift {:.2e}  {closure}",
            r.label, r.samples, r.max_drift
        ));
    }
    for s in &report.svgs {
        lines.push(format!("wrote {s}"));
    }
    lines.join("\n")
}

pub fn output_files(out: &Path, report: &SimulationReport) -> Vec<PathBuf> {
    report
        .runs
        .iter()
        .filter_map(|r| r.csv.as_ref().map(|c| out.join(c)))
        .chain(report.svgs.iter().map(|s| out.join(s)))
        .collect()
}
