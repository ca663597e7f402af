//! The three orbit figures: five η values each, shared initial condition
//! (0.5, 1, 1), α = 1 for the case-A entries.

use rikitake_core::integrate::IntegratorConfig;
use rikitake_core::systems::params;

use crate::config::{Emit, RunConfig};
use crate::error::{CliError, CliResult};

pub const FIGURE_IC: [f64; 3] = [0.5, 1.0, 1.0];
pub const FIGURE_T_END: f64 = 50.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    Book,
    Heisenberg,
    AbDeformed,
}

pub struct PresetRun {
    pub label: String,
    pub eta: f64,
    pub color: &'static str,
    pub config: RunConfig,
}

impl Figure {
    pub fn parse(name: &str) -> CliResult<Self> {
        match name {
            "figure1" => Ok(Figure::Book),
            "figure2" => Ok(Figure::Heisenberg),
            "figure3" => Ok(Figure::AbDeformed),
            other => Err(CliError::invalid(
                "--preset",
                format!("`{other}` (expected figure1, figure2 or figure3)"),
            )),
        }
    }

    pub fn all() -> [Figure; 3] {
        [Figure::Book, Figure::Heisenberg, Figure::AbDeformed]
    }

    pub fn name(&self) -> &'static str {
        match self {
            Figure::Book => "figure1",
            Figure::Heisenberg => "figure2",
            Figure::AbDeformed => "figure3",
        }
    }

    pub fn etas(&self) -> [f64; 5] {
        match self {
            Figure::Book | Figure::Heisenberg => [-0.5, -0.25, 0.0, 1.0, 2.0],
            Figure::AbDeformed => [-2.0, -1.0, 0.0, 1.0, 2.0],
        }
    }

    /// Coordinate pairs `(horizontal, vertical)` of the two panels.
    pub fn projections(&self) -> [(usize, usize); 2] {
        match self {
            Figure::Book => [(0, 2), (1, 2)],
            Figure::Heisenberg => [(0, 2), (1, 0)],
            Figure::AbDeformed => [(1, 2), (0, 2)],
        }
    }

    fn config_for(&self, eta: f64) -> RunConfig {
        let (system, p) = match self {
            Figure::Book => ("case-a-book", params([("alpha", 1.0), ("eta", eta)])),
            Figure::Heisenberg => ("case-a-heisenberg", params([("alpha", 1.0), ("eta", eta)])),
            // the deformed entry rejects η = 0; its limit is the undeformed pencil
            Figure::AbDeformed if eta == 0.0 => ("case-ab-pencil", params([("lambda", 0.0)])),
            Figure::AbDeformed => ("case-ab-deformed", params([("lambda", 0.0), ("eta", eta)])),
        };
        RunConfig {
            system: system.to_string(),
            params: p,
            initial_condition: FIGURE_IC.to_vec(),
            integrator: IntegratorConfig::adaptive(FIGURE_T_END),
            output_dir: None,
            emit: Emit::default(),
        }
    }

    pub fn runs(&self) -> Vec<PresetRun> {
        self.etas()
            .iter()
            .zip(crate::svg::COLORS)
            .map(|(&eta, color)| PresetRun {
                label: format!("{}_eta{eta}", self.name()),
                eta,
                color,
                config: self.config_for(eta),
            })
            .collect()
    }
}
