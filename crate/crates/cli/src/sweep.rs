//! (α, τ-) sweeps of the evolved Werner state.

use std::io::Write;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;
use xcorr_core::correlations::werner_report;
use xcorr_core::dynamics::Scenario;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = CliError;
    fn from_str(s: &str) -> CliResult<Self> {
        match s {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            other => Err(CliError::config("--format", format!("expected csv or json, got {other:?}"))),
        }
    }
}

/// Which measure columns to emit. `tau_minus` and `alpha` are always present.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Outputs {
    pub concurrence: bool,
    pub discord: bool,
    pub fidelity: bool,
    pub fields: bool,
}

impl Default for Outputs {
    fn default() -> Self {
        Self { concurrence: true, discord: true, fidelity: true, fields: false }
    }
}

impl FromStr for Outputs {
    type Err = CliError;
    fn from_str(s: &str) -> CliResult<Self> {
        let mut out = Self { concurrence: false, discord: false, fidelity: false, fields: false };
        for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            match item {
                "concurrence" => out.concurrence = true,
                "discord" => out.discord = true,
                "fidelity" => out.fidelity = true,
                "fields" => out.fields = true,
                other => {
                    return Err(CliError::config(
                        "--outputs",
                        format!("unknown output {other:?} (expected concurrence, discord, fidelity, fields)"),
                    ))
                }
            }
        }
        if out == (Self { concurrence: false, discord: false, fidelity: false, fields: false }) {
            return Err(CliError::config("--outputs", "select at least one output"));
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub scenario: Scenario,
    pub alpha_values: Vec<f64>,
    pub tau_max: f64,
    pub tau_steps: usize,
    pub outputs: Outputs,
    pub format: Format,
}

impl SweepConfig {
    pub fn validate(&self) -> CliResult<()> {
        if self.alpha_values.is_empty() {
            return Err(CliError::config("--alpha", "at least one value is required"));
        }
        if let Some(a) = self.alpha_values.iter().find(|a| !(-1.0 / 3.0..=1.0).contains(*a)) {
            return Err(CliError::config("--alpha", format!("{a} is outside [-1/3, 1]")));
        }
        if !(self.tau_max.is_finite() && self.tau_max > 0.0) {
            return Err(CliError::config("--tau-max", format!("must be finite and positive, got {}", self.tau_max)));
        }
        if self.tau_steps < 2 {
            return Err(CliError::config("--steps", format!("need at least 2 points, got {}", self.tau_steps)));
        }
        Ok(())
    }

    /// Uniform grid on `[0, tau_max]` with `tau_steps` points.
    pub fn tau_grid(&self) -> Vec<f64> {
        let n = self.tau_steps - 1;
        (0..=n).map(|k| self.tau_max * k as f64 / n as f64).collect()
    }
}

/// Comma-separated reals, as given to `--alpha`.
pub fn parse_alpha_list(s: &str) -> CliResult<Vec<f64>> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| x.parse::<f64>().map_err(|_| CliError::config("--alpha", format!("{x:?} is not a number"))))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub tau_minus: f64,
    pub alpha: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub concurrence: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub discord: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fidelity: Option<f64>,
    #[serde(rename = "omega_A", skip_serializing_if = "Option::is_none")]
    pub omega_a: Option<f64>,
    #[serde(rename = "omega_B", skip_serializing_if = "Option::is_none")]
    pub omega_b: Option<f64>,
}

/// One row per (α, τ-), ordered by α ascending then τ-.
pub fn run_sweep(config: &SweepConfig) -> CliResult<Vec<SweepRow>> {
    config.validate()?;
    let mut alphas = config.alpha_values.clone();
    alphas.sort_by(f64::total_cmp);
    let taus = config.tau_grid();
    let points: Vec<(f64, f64)> = alphas.iter().flat_map(|&a| taus.iter().map(move |&t| (a, t))).collect();
    let o = config.outputs;
    points
        .par_iter()
        .map(|&(alpha, tau)| {
            let r = werner_report(alpha, &config.scenario, tau)?;
            let (wa, wb) = config.scenario.fields_at(tau);
            Ok(SweepRow {
                tau_minus: tau,
                alpha,
                concurrence: o.concurrence.then_some(r.concurrence),
                discord: o.discord.then_some(r.discord),
                fidelity: o.fidelity.then_some(r.fidelity),
                omega_a: o.fields.then_some(wa),
                omega_b: o.fields.then_some(wb),
            })
        })
        .collect()
}

pub fn csv_header(outputs: &Outputs) -> String {
    let mut cols = vec!["tau_minus", "alpha"];
    if outputs.concurrence {
        cols.push("concurrence");
    }
    if outputs.discord {
        cols.push("discord");
    }
    if outputs.fidelity {
        cols.push("fidelity");
    }
    if outputs.fields {
        cols.extend(["omega_A", "omega_B"]);
    }
    cols.join(",")
}

/// 17 significant digits, enough to round-trip any f64.
fn fmt(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_csv(rows: &[SweepRow], outputs: &Outputs, mut w: impl Write) -> std::io::Result<()> {
    writeln!(w, "{}", csv_header(outputs))?;
    for r in rows {
        let cells: Vec<String> =
            [Some(r.tau_minus), Some(r.alpha), r.concurrence, r.discord, r.fidelity, r.omega_a, r.omega_b]
                .into_iter()
                .flatten()
                .map(fmt)
                .collect();
        writeln!(w, "{}", cells.join(","))?;
    }
    Ok(())
}

pub fn write_json(rows: &[SweepRow], mut w: impl Write) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut w, rows)?;
    writeln!(w)
}
