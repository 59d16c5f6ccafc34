//! Library side of the `xcorr` binary: sweeps, the separability boundary,
//! the oracle cross-check suite and one-shot state reports.

pub mod boundary;
pub mod error;
pub mod state;
pub mod sweep;
pub mod verify;

pub use error::{CliError, CliResult};
