//! One-shot report for a single X state given as JSON.

use serde::Serialize;
use xcorr_core::correlations::{concurrence_x, discord_x, DiscordIntermediates};
use xcorr_core::oracles::{concurrence_wootters, discord_bruteforce, MeasurementGrid};
use xcorr_core::states::{canonicalize, fano_decompose, FanoParams, XState};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StateReport {
    pub state: XState,
    pub fano: FanoParams,
    /// Local phases removed by canonicalization.
    pub phase_a: f64,
    pub phase_b: f64,
    pub concurrence: f64,
    pub concurrence_wootters: f64,
    pub discord: DiscordIntermediates,
    pub discord_bruteforce: f64,
}

pub fn parse_state(json: &str) -> CliResult<XState> {
    serde_json::from_str(json).map_err(|e| CliError::config("state", e.to_string()))
}

pub fn run_state(state: &XState) -> CliResult<StateReport> {
    let dense = state.to_dense();
    let canonical = canonicalize(state);
    Ok(StateReport {
        state: *state,
        fano: fano_decompose(state),
        phase_a: canonical.phase_a,
        phase_b: canonical.phase_b,
        concurrence: concurrence_x(state),
        concurrence_wootters: concurrence_wootters(&dense)?,
        discord: discord_x(state)?,
        discord_bruteforce: discord_bruteforce(&dense, &MeasurementGrid::acceptance())?.discord,
    })
}
