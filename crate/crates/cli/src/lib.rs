//! Command-line front end for the Rikitake library.
//!
//! Exit codes: 0 success, 1 a verification property failed, 2 invalid
//! arguments or configuration, 3 runtime domain or I/O failure.

pub mod commands;
pub mod config;
pub mod error;
pub mod presets;
pub mod svg;
pub mod table;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use commands::{cocycle, couple, simulate, verify};
use config::{output_dir, RunConfig};
use error::{CliError, CliResult};
use presets::Figure;

#[derive(Debug, Parser)]
#[command(
    name = "rikitake",
    version,
    about = "Lie-Poisson Rikitake systems and their deformations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print catalog ids, parameters and anchors.
    List,
    /// Integrate a configuration file or a figure preset.
    Simulate {
        #[arg(long, conflicts_with = "preset", required_unless_present = "preset")]
        config: Option<PathBuf>,
        /// figure1, figure2 or figure3.
        #[arg(long)]
        preset: Option<String>,
        /// Output directory (overrides RIKITAKE_OUT and the config).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the property checks; exit 1 if any fails.
    Verify {
        /// all, a catalog id, coproducts, realizations, cluster or broken-fixture.
        #[arg(default_value = "all")]
        scope: String,
        /// Also write verify-<scope>.json here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Common cocycles of the case-B pencil and their co-Jacobi filtering.
    Cocycle {
        /// Central-extension constant, an integer or fraction p/q.
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
        #[arg(long)]
        json: bool,
    },
    /// Integrate the two-copy system and its cluster variables.
    Couple {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        lambda: Option<u8>,
        #[arg(long, allow_hyphen_values = true)]
        eta: Option<f64>,
        #[arg(long)]
        t_end: Option<f64>,
        #[arg(long)]
        tol: Option<f64>,
        /// Six comma-separated coordinates.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        ic: Option<Vec<f64>>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn execute(command: Command, stdout: &mut dyn Write) -> CliResult<()> {
    match command {
        Command::List => writeln!(stdout, "{}", commands::list())?,
        Command::Simulate {
            config,
            preset,
            out,
        } => {
            let report = match (config, preset) {
                (Some(path), _) => {
                    let cfg = RunConfig::load(&path)?;
                    let dir = output_dir(out.as_deref(), cfg.output_dir.as_deref());
                    simulate::simulate_config(&cfg, &path.display().to_string(), &dir)
                }
                (None, Some(name)) => {
                    let dir = output_dir(out.as_deref(), None);
                    simulate::simulate_preset(Figure::parse(&name)?, &dir)
                }
                (None, None) => Err(CliError::invalid("simulate", "give --config or --preset")),
            }?;
            writeln!(stdout, "{}", simulate::summary(&report))?;
        }
        Command::Verify { scope, out } => {
            let report = verify::verify(&scope)?;
            let json = serde_json::to_string_pretty(&report)?;
            if let Some(dir) = out {
                std::fs::create_dir_all(&dir)?;
                std::fs::write(
                    dir.join(format!("verify-{scope}.json")),
                    json.clone() + "\n",
                )?;
            }
            writeln!(stdout, "{json}")?;
            let failed: Vec<String> = report
                .failures()
                .iter()
                .map(|c| {
                    format!(
                        "{} on {} ({:e} ≥ {:e})",
                        c.property, c.subject, c.max_residual, c.tolerance
                    )
                })
                .collect();
            if !failed.is_empty() {
                return Err(CliError::Verify(failed.join("; ")));
            }
        }
        Command::Cocycle { beta, json } => {
            let report = cocycle::cocycle(&cocycle::parse_beta(&beta)?)?;
            if json {
                writeln!(stdout, "{}", serde_json::to_string_pretty(&report)?)?;
            } else {
                writeln!(stdout, "{}", cocycle::render(&report))?;
            }
        }
        Command::Couple {
            config,
            lambda,
            eta,
            t_end,
            tol,
            ic,
            out,
        } => {
            let mut cfg = match config {
                Some(path) => couple::CoupleConfig::load(&path)?,
                None => couple::CoupleConfig::new(lambda.unwrap_or(1), eta.unwrap_or(1.0)),
            };
            if let Some(l) = lambda {
                cfg.lambda = l;
            }
            if let Some(e) = eta {
                cfg.eta = e;
            }
            if let Some(t) = t_end {
                cfg.integrator.t_end = t;
            }
            if let Some(t) = tol {
                cfg.integrator = cfg.integrator.with_tolerance(t);
            }
            if let Some(x) = ic {
                cfg.initial_condition = x;
            }
            let dir = output_dir(out.as_deref(), cfg.output_dir.as_deref());
            let report = couple::couple(&cfg, &dir)?;
            writeln!(stdout, "{}", serde_json::to_string_pretty(&report)?)?;
        }
    }
    Ok(())
}

/// Parse `args` (including the program name), run, and return the exit code.
pub fn run<I, S>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = if code == 0 {
                write!(stdout, "{e}")
            } else {
                write!(stderr, "{e}")
            };
            return code;
        }
    };
    match execute(cli.command, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "{e}");
            e.exit_code()
        }
    }
}
