//! JSON run configuration.
//!
//! ```json
//! {
//!   "system": "case-a-book",
//!   "params": { "alpha": 1.0, "eta": 1.0 },
//!   "initial_condition": [0.5, 1.0, 1.0],
//!   "integrator": { "method": "adaptive-45", "t_end": 50.0 },
//!   "output_dir": "out",
//!   "emit": { "csv": true, "svg": true, "report": true }
//! }
//! ```
//!
//! Unknown keys are rejected at every level. `params` may omit entries that
//! have defaults; `output_dir` and `emit` are optional.

use std::path::{Path, PathBuf};

use rikitake_core::integrate::IntegratorConfig;
use rikitake_core::systems::{build, resolve_params, Built, Params};
use rikitake_core::Error;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};

/// Output directory override, read when `--out` is absent.
pub const OUT_ENV: &str = "RIKITAKE_OUT";
pub const DEFAULT_OUT: &str = "rikitake-out";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Emit {
    #[serde(default = "yes")]
    pub csv: bool,
    #[serde(default = "yes")]
    pub svg: bool,
    #[serde(default = "yes")]
    pub report: bool,
}

fn yes() -> bool {
    true
}

impl Default for Emit {
    fn default() -> Self {
        Emit {
            csv: true,
            svg: true,
            report: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub system: String,
    #[serde(default)]
    pub params: Params,
    pub initial_condition: Vec<f64>,
    pub integrator: IntegratorConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_dir: Option<PathBuf>,
    #[serde(default)]
    pub emit: Emit,
}

/// A validated configuration with its system built.
pub struct Prepared {
    pub config: RunConfig,
    pub params: Params,
    pub built: Built,
}

impl RunConfig {
    pub fn from_json(text: &str) -> CliResult<Self> {
        serde_json::from_str(text).map_err(|e| CliError::invalid("config", e))
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::invalid("--config", format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Check everything against the catalog before any integration.
    pub fn prepare(&self) -> CliResult<Prepared> {
        let params = resolve_params(&self.system, &self.params).map_err(|e| match e {
            Error::UnknownSystem(id) => CliError::invalid("system", format!("unknown id `{id}`")),
            Error::Parameter { name, detail } => {
                CliError::invalid(&format!("params.{name}"), detail)
            }
            other => CliError::invalid("params", other),
        })?;
        let built = build(&self.system, &params).map_err(|e| match e {
            Error::Parameter { name, detail } => {
                CliError::invalid(&format!("params.{name}"), detail)
            }
            other => CliError::invalid("system", other),
        })?;
        let dim = built.dynamics().dim();
        if self.initial_condition.len() != dim {
            return Err(CliError::invalid(
                "initial_condition",
                format!(
                    "`{}` needs {dim} coordinates, got {}",
                    self.system,
                    self.initial_condition.len()
                ),
            ));
        }
        if let Some(i) = self.initial_condition.iter().position(|v| !v.is_finite()) {
            return Err(CliError::invalid(
                &format!("initial_condition[{i}]"),
                "must be finite",
            ));
        }
        let dynamics = built.dynamics();
        let at_start = dynamics.rhs(&self.initial_condition).and_then(|_| {
            dynamics
                .invariants()
                .iter()
                .try_for_each(|f| f.value(&self.initial_condition).map(|_| ()))
        });
        if let Err(e) = at_start {
            return Err(CliError::invalid("initial_condition", e));
        }
        self.integrator
            .validate()
            .map_err(|e| CliError::invalid("integrator", e))?;
        Ok(Prepared {
            config: self.clone(),
            params,
            built,
        })
    }

    /// SHA-256 of the canonical JSON form.
    pub fn hash(&self) -> String {
        hash_json(self)
    }
}

pub fn hash_json<T: Serialize>(value: &T) -> String {
    let bytes = serde_json::to_vec(value).expect("configs serialize");
    Sha256::digest(bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// `--out`, then the environment override, then the config, then the default.
pub fn output_dir(flag: Option<&Path>, config: Option<&Path>) -> PathBuf {
    if let Some(p) = flag {
        return p.to_path_buf();
    }
    if let Some(p) = std::env::var_os(OUT_ENV).filter(|v| !v.is_empty()) {
        return PathBuf::from(p);
    }
    config
        .map(Path::to_path_buf)
        .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT))
}
