//! Seeded random inputs for fuzzing and the `verify` cross-checks.

use std::f64::consts::{FRAC_PI_2, PI};

use rand::Rng;

use crate::dynamics::{Amplitude, EvolutionParams};
use crate::smallmat::C64;
use crate::states::XState;

/// Random valid X state: populations from normalized exponentials, coherences
/// uniformly inside the positivity disc with uniform phases.
pub fn random_xstate<R: Rng + ?Sized>(rng: &mut R) -> XState {
    let w: [f64; 4] = std::array::from_fn(|_| -rng.gen::<f64>().max(1e-300).ln());
    let total: f64 = w.iter().sum();
    let mut d = w.map(|x| x / total);
    d[3] = 1.0 - d[0] - d[1] - d[2];
    if d[3] < 0.0 {
        d[3] = 0.0;
    }
    let m14 = rng.gen::<f64>() * (d[0] * d[3]).sqrt();
    let m23 = rng.gen::<f64>() * (d[1] * d[2]).sqrt();
    let rho14 = C64::from_polar(m14, rng.gen_range(-PI..PI));
    let rho23 = C64::from_polar(m23, rng.gen_range(-PI..PI));
    XState::new(d, rho14, rho23).expect("sampled state is valid by construction")
}

/// Random propagator amplitudes: `|a| = cos θ`, `|b| = sin θ`, uniform phases.
pub fn random_params<R: Rng + ?Sized>(rng: &mut R) -> EvolutionParams {
    let mut branch = || {
        let theta = rng.gen_range(0.0..FRAC_PI_2);
        (Amplitude::new(theta.cos(), rng.gen_range(-PI..PI)), Amplitude::new(theta.sin(), rng.gen_range(-PI..PI)))
    };
    let (a_plus, b_plus) = branch();
    let (a_minus, b_minus) = branch();
    EvolutionParams { a_plus, a_minus, b_plus, b_minus, tau_plus: 0.0, tau_minus: 0.0 }
}

/// Random normalized pair `(μ, ν)`.
pub fn random_unit_pair<R: Rng + ?Sized>(rng: &mut R) -> (C64, C64) {
    let theta = rng.gen_range(0.0..FRAC_PI_2);
    let mu = C64::from_polar(theta.cos(), rng.gen_range(-PI..PI));
    let nu = C64::from_polar(theta.sin(), rng.gen_range(-PI..PI));
    let norm = (mu.norm_sqr() + nu.norm_sqr()).sqrt();
    (mu / norm, nu / norm)
}
