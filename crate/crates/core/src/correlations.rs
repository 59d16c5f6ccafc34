//! Closed-form correlation measures for X states.
//!
//! All entropies are in bits and `0·log 0 = 0` throughout.

use serde::Serialize;

use crate::dynamics::{evolve_xstate, evolved_singlet, EvolutionParams, Scenario};
use crate::error::{Error, Result};
use crate::smallmat::{C64, PSD_CLAMP};
use crate::states::{canonicalize, fano_canonical, make_werner, GeneralizedWernerSpec, XState};

const NORM_TOL: f64 = 1e-10;

/// `C = 2|ad - bc|` for `a|00⟩ + b|01⟩ + c|10⟩ + d|11⟩`.
pub fn concurrence_pure(a: C64, b: C64, c: C64, d: C64) -> Result<f64> {
    let norm = a.norm_sqr() + b.norm_sqr() + c.norm_sqr() + d.norm_sqr();
    if norm.is_nan() || (norm - 1.0).abs() > NORM_TOL {
        return Err(Error::NotNormalized(norm));
    }
    Ok((2.0 * (a * d - b * c).norm()).min(1.0))
}

/// `C = 2 max{0, |ρ23| - √(ρ11ρ44), |ρ14| - √(ρ22ρ33)}`.
pub fn concurrence_x(state: &XState) -> f64 {
    let outer = state.rho23().norm() - (state.rho11() * state.rho44()).max(0.0).sqrt();
    let inner = state.rho14().norm() - (state.rho22() * state.rho33()).max(0.0).sqrt();
    2.0 * outer.max(inner).max(0.0)
}

fn check_eta_args(alpha: f64, mu_abs: f64) -> Result<()> {
    if !(-1.0 / 3.0..=1.0).contains(&alpha) {
        return Err(Error::ParamOutOfRange(format!("alpha = {alpha} is outside [-1/3, 1]")));
    }
    if !(0.0..=1.0).contains(&mu_abs) {
        return Err(Error::ParamOutOfRange(format!("|mu| = {mu_abs} is outside [0, 1]")));
    }
    Ok(())
}

/// `g(α, |μ|) = 2|α||μ|√(1-|μ|²) - (1-α)/2`; the generalized Werner state is
/// entangled exactly where this is positive.
pub fn eta_margin(alpha: f64, mu_abs: f64) -> f64 {
    2.0 * alpha.abs() * mu_abs * (1.0 - mu_abs * mu_abs).max(0.0).sqrt() - (1.0 - alpha) / 2.0
}

/// Concurrence of `(1-α)/4·I + α|ξ⟩⟨ξ|`, which depends on `|μ|` only.
pub fn concurrence_eta(alpha: f64, mu_abs: f64) -> Result<f64> {
    check_eta_args(alpha, mu_abs)?;
    Ok(eta_margin(alpha, mu_abs).max(0.0))
}

/// Open interval of `|μ|` with nonzero concurrence. The endpoints square to
/// `1/2 ∓ √(3α²+2α-1)/(4α)`; empty for `α ≤ 1/3`.
pub fn entangled_band(alpha: f64) -> Option<(f64, f64)> {
    if alpha <= 1.0 / 3.0 {
        return None;
    }
    let half = (3.0 * alpha * alpha + 2.0 * alpha - 1.0).sqrt() / (4.0 * alpha);
    Some(((0.5 - half).sqrt(), (0.5 + half).sqrt()))
}

/// Three-branch form of [`concurrence_eta`] built from [`entangled_band`].
pub fn concurrence_eta_piecewise(alpha: f64, mu_abs: f64) -> Result<f64> {
    check_eta_args(alpha, mu_abs)?;
    match entangled_band(alpha) {
        Some((lo, hi)) if mu_abs > lo && mu_abs < hi => {
            Ok(2.0 * alpha * mu_abs * (1.0 - mu_abs * mu_abs).sqrt() - (1.0 - alpha) / 2.0)
        }
        _ => Ok(0.0),
    }
}

/// The α at which concurrence vanishes for a given `|μ|`: `1/(1 + 4|μ|√(1-|μ|²))`.
pub fn separability_boundary(mu_abs: f64) -> f64 {
    1.0 / (1.0 + 4.0 * mu_abs * (1.0 - mu_abs * mu_abs).sqrt())
}

fn werner_concurrence_from_purity(alpha: f64, pure_concurrence: f64) -> f64 {
    (alpha.abs() * pure_concurrence - (1.0 - alpha) / 2.0).max(0.0)
}

/// Evolved Werner state under the Case 1 profile (φ_Γ- = 0).
pub fn concurrence_case1(alpha: f64, tau_minus: f64) -> f64 {
    let x = (2.0 * tau_minus).tanh() * (2.0 * tau_minus).sin();
    werner_concurrence_from_purity(alpha, (1.0 - x * x).sqrt())
}

/// Evolved Werner state under the Case 2 profile (φ_Γ- = 0).
pub fn concurrence_case2(alpha: f64, tau_minus: f64) -> f64 {
    let x = 2.0 * tau_minus.tanh() / tau_minus.cosh() * tau_minus.sinh().sin();
    werner_concurrence_from_purity(alpha, (1.0 - x * x).max(0.0).sqrt())
}

/// Evolved Werner state under constant fields with detuning ratio `β = Ω-/c`:
/// `max{0, |α|√(1 - 16β² sin⁴τ / (β²+4)²) - (1-α)/2}`.
pub fn concurrence_constant(alpha: f64, beta: f64, tau_minus: f64) -> f64 {
    let b2 = beta * beta;
    let x = 16.0 * b2 * tau_minus.sin().powi(4) / (b2 + 4.0).powi(2);
    werner_concurrence_from_purity(alpha, (1.0 - x).max(0.0).sqrt())
}

/// The constant-field expression with `sin⁴τ` in the denominator, as it is
/// sometimes quoted. It disagrees with the exact propagation and is undefined
/// wherever the square root argument goes negative; kept only for comparison.
pub fn concurrence_constant_inverted_sine(alpha: f64, beta: f64, tau_minus: f64) -> Option<f64> {
    let b2 = beta * beta;
    let arg = 1.0 - 16.0 * b2 / ((b2 + 4.0).powi(2) * tau_minus.sin().powi(4));
    (arg >= 0.0).then(|| (alpha * arg.sqrt() - (1.0 - alpha) / 2.0).max(0.0))
}

/// `u(x) = -(1-x)/2 log2(1-x) - (1+x)/2 log2(1+x)`, so that a qubit with Bloch
/// length `x` has entropy `1 + u(x)`. Even in `x`; arguments are clamped to `|x| ≤ 1`.
pub fn entropy_u(x: f64) -> f64 {
    let x = x.abs().min(1.0);
    -half_xlog2(1.0 - x) - half_xlog2(1.0 + x)
}

fn half_xlog2(y: f64) -> f64 {
    if y <= 0.0 {
        0.0
    } else {
        y / 2.0 * y.log2()
    }
}

fn xlog2(p: f64) -> f64 {
    if p <= 0.0 {
        0.0
    } else {
        p * p.log2()
    }
}

/// Everything computed on the way to the discord of an X state (bits).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiscordIntermediates {
    pub r: f64,
    pub s: f64,
    pub c: [f64; 3],
    /// Eigenvalues of the canonical state, negatives above `-1e-10` clamped to 0.
    pub lambda: [f64; 4],
    pub u_r: f64,
    pub u_s: f64,
    /// Conditional entropies for measurements of B along z, x and y.
    pub f: [f64; 3],
    pub mutual_info: f64,
    pub classical_corr: f64,
    pub discord: f64,
}

/// Quantum discord (measurement on qubit B) of any X state.
pub fn discord_x(state: &XState) -> Result<DiscordIntermediates> {
    let canonical = canonicalize(state).state;
    let fano = fano_canonical(&canonical);
    let (r, s) = (fano.r, fano.s);
    let [c1, c2, c3] = fano.c();

    let root12 = ((r - s).powi(2) + (c1 + c2).powi(2)).sqrt();
    let root34 = ((r + s).powi(2) + (c1 - c2).powi(2)).sqrt();
    let mut lambda =
        [(1.0 - c3 + root12) / 4.0, (1.0 - c3 - root12) / 4.0, (1.0 + c3 + root34) / 4.0, (1.0 + c3 - root34) / 4.0];
    for l in lambda.iter_mut() {
        if *l < -PSD_CLAMP {
            return Err(Error::StateInvalid(format!("canonical eigenvalue {l} is negative")));
        }
        *l = l.max(0.0);
    }

    let u_r = entropy_u(r);
    let u_s = entropy_u(s);
    let mutual_info = 2.0 + u_r + u_s + lambda.iter().map(|&l| xlog2(l)).sum::<f64>();

    let term = |n: f64, d: f64| if n <= 0.0 { 0.0 } else { -n / 4.0 * (n / (2.0 * d)).log2() };
    let f1 = term(1.0 + r + s + c3, 1.0 + s)
        + term(1.0 - r + s - c3, 1.0 + s)
        + term(1.0 + r - s - c3, 1.0 - s)
        + term(1.0 - r - s + c3, 1.0 - s);
    let f2 = 1.0 + entropy_u(r.hypot(c1));
    let f3 = 1.0 + entropy_u(r.hypot(c2));
    let classical_corr = 1.0 + u_r - f1.min(f2).min(f3);

    Ok(DiscordIntermediates {
        r,
        s,
        c: [c1, c2, c3],
        lambda,
        u_r,
        u_s,
        f: [f1, f2, f3],
        mutual_info,
        classical_corr,
        discord: mutual_info - classical_corr,
    })
}

/// `|⟨ψ(t)|Ψ-⟩|² = |a-|² cos²φa- + |b-|² sin²φb-` for the evolved singlet.
pub fn fidelity_pure_evolved(p: &EvolutionParams) -> f64 {
    let a = p.a_minus;
    let b = p.b_minus;
    a.modulus.powi(2) * a.phase.cos().powi(2) + b.modulus.powi(2) * b.phase.sin().powi(2)
}

/// Terms of the Werner / generalized-Werner fidelity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FidelityIntermediates {
    pub p: f64,
    pub q: f64,
    /// Eigenvalues of `√ρW η √ρW`; the first two coincide.
    pub zeta: [f64; 4],
    pub fidelity: f64,
}

/// Uhlmann fidelity between the Werner state of parameter α and the
/// generalized Werner state with the same α and `|ξ⟩ = μ|01⟩ + ν|10⟩`.
pub fn fidelity_werner_eta(alpha: f64, mu: C64, nu: C64) -> Result<FidelityIntermediates> {
    GeneralizedWernerSpec::new(alpha, mu, nu)?;
    let sum = (mu + nu).norm_sqr();
    let diff = (mu - nu).norm_sqr();
    let p = (1.0 - alpha * alpha) / 8.0 + alpha * (1.0 - alpha) * sum / 8.0 + alpha * (1.0 + 3.0 * alpha) * diff / 8.0;
    let q = (1.0 - alpha).powi(3) * (1.0 + 3.0 * alpha) / 256.0
        + alpha * (1.0 + 3.0 * alpha) * (1.0 - alpha).powi(2) * (sum + diff) / 128.0;
    let disc = p * p - 4.0 * q;
    if disc < -PSD_CLAMP {
        return Err(Error::StateInvalid(format!("P^2 - 4Q = {disc} is negative")));
    }
    let disc = disc.max(0.0).sqrt();
    let edge = (1.0 - alpha).powi(2) / 16.0;
    let zeta = [edge, edge, (p + disc) / 2.0, (p - disc) / 2.0];
    if let Some(z) = zeta.iter().find(|&&z| z < -PSD_CLAMP) {
        return Err(Error::StateInvalid(format!("zeta = {z} is negative")));
    }
    let fidelity = ((1.0 - alpha) / 2.0 + zeta[2].max(0.0).sqrt() + zeta[3].max(0.0).sqrt()).powi(2);
    Ok(FidelityIntermediates { p, q, zeta, fidelity: fidelity.min(1.0) })
}

/// Correlations of the evolved Werner state at one `τ-`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CorrelationReport {
    pub tau_minus: f64,
    pub concurrence: f64,
    pub discord: f64,
    /// Fidelity between the initial and the evolved Werner state.
    pub fidelity: f64,
}

pub fn werner_report(alpha: f64, scenario: &Scenario, tau_minus: f64) -> Result<CorrelationReport> {
    let ev = scenario.evolution_at(tau_minus);
    let state = evolve_xstate(&make_werner(alpha)?, &ev.params)?;
    let (c01, c10) = evolved_singlet(&ev.params, ev.gamma33_t);
    Ok(CorrelationReport {
        tau_minus,
        concurrence: concurrence_x(&state),
        discord: discord_x(&state)?.discord,
        fidelity: fidelity_werner_eta(alpha, c01, c10)?.fidelity,
    })
}
