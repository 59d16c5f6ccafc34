use serde::Serialize;
use xcorr_core::correlations::separability_boundary;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundaryRow {
    pub mu_abs: f64,
    pub alpha: f64,
}

/// `n_points` samples of the separability boundary at `|μ| = k/(n+1)`,
/// `k = 1..=n`, so both endpoints of (0, 1) are excluded.
pub fn run_boundary(n_points: usize) -> CliResult<Vec<BoundaryRow>> {
    if n_points < 2 {
        return Err(CliError::config("--steps", format!("need at least 2 points, got {n_points}")));
    }
    let step = 1.0 / (n_points + 1) as f64;
    Ok((1..=n_points)
        .map(|k| {
            let mu_abs = k as f64 * step;
            BoundaryRow { mu_abs, alpha: separability_boundary(mu_abs) }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_short_grids() {
        assert!(matches!(run_boundary(1), Err(CliError::ConfigInvalid { .. })));
    }

    #[test]
    fn grid_is_open_and_uniform() {
        let rows = run_boundary(9).unwrap();
        assert_eq!(rows.len(), 9);
        assert!((rows[0].mu_abs - 0.1).abs() < 1e-15 && (rows[8].mu_abs - 0.9).abs() < 1e-15);
        assert!(rows.iter().all(|r| r.alpha >= 1.0 / 3.0 - 1e-15 && r.alpha <= 1.0));
    }
}
