//! Brute-force references for the closed forms.
//!
//! Nothing here uses the X structure: every routine works on dense 4×4 matrices
//! so it can check the closed forms independently.

use std::f64::consts::PI;

use crate::dynamics::EvolutionParams;
use crate::error::{Error, Result};
use crate::smallmat::{hermitian_eigen, pauli, psd_eigen, psd_sqrt, CMat2, CMat4, C64, I, ONE, ZERO};

/// Tolerance for accepting a dense matrix as a density matrix.
pub const DENSITY_TOL: f64 = 1e-9;
/// Tolerance for accepting a propagator as unitary.
pub const UNITARY_TOL: f64 = 1e-10;

/// Hermitian, unit trace and positive semidefinite, each within [`DENSITY_TOL`].
pub fn check_density_matrix(rho: &CMat4) -> Result<()> {
    if !rho.is_finite() {
        return Err(Error::NotDensityMatrix("non-finite entry".into()));
    }
    let dev = rho.hermitian_deviation();
    if dev > DENSITY_TOL {
        return Err(Error::NotDensityMatrix(format!("not Hermitian (deviation {dev:e})")));
    }
    let tr = rho.trace();
    if (tr - ONE).norm() > DENSITY_TOL {
        return Err(Error::NotDensityMatrix(format!("trace {tr}")));
    }
    let eig = hermitian_eigen(&rho.hermitian_part()).map_err(|e| Error::NotDensityMatrix(e.to_string()))?;
    if eig.values[0] < -DENSITY_TOL {
        return Err(Error::NotDensityMatrix(format!("negative eigenvalue {}", eig.values[0])));
    }
    Ok(())
}

fn von_neumann_entropy(rho: &CMat4) -> Result<f64> {
    let eig = psd_eigen(&rho.hermitian_part()).map_err(|e| Error::NotDensityMatrix(e.to_string()))?;
    Ok(eig.values.iter().filter(|&&l| l > 0.0).map(|&l| -l * l.log2()).sum())
}

/// `p · S(m/p)` for an unnormalized qubit state `m` with `p = Tr m`.
fn weighted_qubit_entropy(m: &CMat2) -> f64 {
    let p = m.trace().re;
    if p <= 0.0 {
        return 0.0;
    }
    let dz = (m.0[0][0] - m.0[1][1]).re;
    let len = (dz * dz + 4.0 * m.0[0][1].norm_sqr()).sqrt() / p;
    let len = len.min(1.0);
    let mut h = 0.0;
    for q in [(1.0 + len) / 2.0, (1.0 - len) / 2.0] {
        if q > 0.0 {
            h -= q * q.log2();
        }
    }
    p * h
}

/// Wootters concurrence: `max{0, λ1 - λ2 - λ3 - λ4}` where `λk` are the
/// eigenvalues (descending) of `√(√ρ ρ' √ρ)`, `ρ' = (σ2⊗σ2) ρ* (σ2⊗σ2)`.
pub fn concurrence_wootters(rho: &CMat4) -> Result<f64> {
    check_density_matrix(rho)?;
    let yy = pauli(2).kron(&pauli(2));
    let flipped = yy * rho.conj() * yy;
    let root = psd_sqrt(&rho.hermitian_part()).map_err(|e| Error::NotDensityMatrix(e.to_string()))?;
    let r = (root * flipped * root).hermitian_part();
    let eig = psd_eigen(&r).map_err(|e| Error::NotDensityMatrix(e.to_string()))?;
    let l = eig.values.map(f64::sqrt);
    Ok((l[3] - l[2] - l[1] - l[0]).max(0.0))
}

/// Search grid for projective measurements `Π± = (I ± n̂·σ)/2` on qubit B.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementGrid {
    /// Polar samples on `[0, π]`, endpoints included.
    pub n_theta: usize,
    /// Azimuthal samples on `[0, 2π)`.
    pub n_phi: usize,
    /// Local refinements around the incumbent; each one shrinks the window by 4.
    pub refinement_rounds: usize,
    /// Stop refining once a round improves the minimum by less than this.
    pub tolerance: f64,
}

impl MeasurementGrid {
    /// 64×128 with three refinement rounds.
    pub fn acceptance() -> Self {
        Self { n_theta: 64, n_phi: 128, refinement_rounds: 3, tolerance: 0.0 }
    }
}

impl Default for MeasurementGrid {
    fn default() -> Self {
        Self::acceptance()
    }
}

/// Points per side of a refinement window, `2 * REFINE_HALF + 1`.
const REFINE_HALF: usize = 8;

/// Result of [`discord_bruteforce`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BruteForceDiscord {
    pub discord: f64,
    pub mutual_info: f64,
    /// Smallest conditional entropy `Σ p± S(ρ_A|±)` found.
    pub min_conditional_entropy: f64,
    pub theta: f64,
    pub phi: f64,
}

/// Post-measurement conditional entropy of A after measuring B along `(θ, φ)`.
pub fn conditional_entropy(rho: &CMat4, theta: f64, phi: f64) -> f64 {
    let (st, ct) = theta.sin_cos();
    let n = [st * phi.cos(), st * phi.sin(), ct];
    let half = C64::new(0.5, 0.0);
    let off = C64::new(n[0], -n[1]) * half;
    let mut total = 0.0;
    for sign in [1.0, -1.0] {
        // Π = (I + sign n·σ)/2
        let proj = CMat2::new(
            C64::new((1.0 + sign * n[2]) / 2.0, 0.0),
            off * sign,
            off.conj() * sign,
            C64::new((1.0 - sign * n[2]) / 2.0, 0.0),
        );
        let mut reduced = CMat2::zeros();
        for a in 0..2 {
            for b in 0..2 {
                let mut acc = ZERO;
                for k in 0..2 {
                    for l in 0..2 {
                        acc += rho.0[2 * a + k][2 * b + l] * proj.0[l][k];
                    }
                }
                reduced.0[a][b] = acc;
            }
        }
        total += weighted_qubit_entropy(&reduced);
    }
    total
}

/// Discord by direct minimization of the conditional entropy over projective
/// measurements on B. An upper bound on the true value by construction.
pub fn discord_bruteforce(rho: &CMat4, grid: &MeasurementGrid) -> Result<BruteForceDiscord> {
    check_density_matrix(rho)?;
    if grid.n_theta < 2 || grid.n_phi < 1 {
        return Err(Error::ParamOutOfRange("measurement grid needs n_theta >= 2 and n_phi >= 1".into()));
    }
    let s_ab = von_neumann_entropy(rho)?;
    let s_a = weighted_qubit_entropy(&rho.partial_trace_b());
    let s_b = weighted_qubit_entropy(&rho.partial_trace_a());
    let mutual_info = s_a + s_b - s_ab;

    let d_theta = PI / (grid.n_theta - 1) as f64;
    let d_phi = 2.0 * PI / grid.n_phi as f64;
    let mut best = (f64::INFINITY, 0.0, 0.0);
    for i in 0..grid.n_theta {
        for j in 0..grid.n_phi {
            let (theta, phi) = (i as f64 * d_theta, j as f64 * d_phi);
            let h = conditional_entropy(rho, theta, phi);
            if h < best.0 {
                best = (h, theta, phi);
            }
        }
    }

    let (mut half_theta, mut half_phi) = (2.0 * d_theta, 2.0 * d_phi);
    for _ in 0..grid.refinement_rounds {
        let before = best.0;
        let (center_theta, center_phi) = (best.1, best.2);
        let m = REFINE_HALF as f64;
        for i in 0..=2 * REFINE_HALF {
            for j in 0..=2 * REFINE_HALF {
                let theta = center_theta + half_theta * (i as f64 - m) / m;
                let phi = center_phi + half_phi * (j as f64 - m) / m;
                let h = conditional_entropy(rho, theta, phi);
                if h < best.0 {
                    best = (h, theta, phi);
                }
            }
        }
        half_theta /= 4.0;
        half_phi /= 4.0;
        if before - best.0 < grid.tolerance {
            break;
        }
    }

    Ok(BruteForceDiscord {
        discord: mutual_info - (s_a - best.0),
        mutual_info,
        min_conditional_entropy: best.0,
        theta: best.1,
        phi: best.2,
    })
}

/// `[Tr √(√ρ1 ρ2 √ρ1)]²`.
pub fn fidelity_uhlmann(rho1: &CMat4, rho2: &CMat4) -> Result<f64> {
    check_density_matrix(rho1)?;
    check_density_matrix(rho2)?;
    let root = psd_sqrt(&rho1.hermitian_part()).map_err(|e| Error::NotDensityMatrix(e.to_string()))?;
    let inner = (root * *rho2 * root).hermitian_part();
    let eig = psd_eigen(&inner).map_err(|e| Error::NotDensityMatrix(e.to_string()))?;
    let tr: f64 = eig.values.iter().map(|l| l.sqrt()).sum();
    Ok(tr * tr)
}

/// The full 4×4 propagator, including the block phases `exp(∓iγ33 t)`.
pub fn propagator(p: &EvolutionParams, gamma33_t: f64) -> CMat4 {
    let plus = p.plus_block().scale(C64::from_polar(1.0, -gamma33_t));
    let minus = p.minus_block().scale(C64::from_polar(1.0, gamma33_t));
    let mut u = CMat4::zeros();
    for (r, gr) in [0usize, 3].into_iter().enumerate() {
        for (c, gc) in [0usize, 3].into_iter().enumerate() {
            u.0[gr][gc] = plus.0[r][c];
        }
    }
    for (r, gr) in [1usize, 2].into_iter().enumerate() {
        for (c, gc) in [1usize, 2].into_iter().enumerate() {
            u.0[gr][gc] = minus.0[r][c];
        }
    }
    u
}

/// `U ρ U†` with the dense propagator.
pub fn dense_propagate(rho: &CMat4, p: &EvolutionParams, gamma33_t: f64) -> Result<CMat4> {
    let u = propagator(p, gamma33_t);
    let dev = u.unitary_deviation();
    if dev > UNITARY_TOL {
        return Err(Error::NotUnitary(dev));
    }
    Ok(u * *rho * u.adjoint())
}

/// Integrates `i dU/dτ = [[Ω(τ), e^{iφ}], [e^{-iφ}, -Ω(τ)]] U`, `U(0) = I`, with
/// classical RK4. This is one branch Hamiltonian in units of `|Γ|`, without the
/// `±γ33` shift.
pub fn integrate_branch(detuning: impl Fn(f64) -> f64, phi_gamma: f64, tau_end: f64, steps: usize) -> CMat2 {
    let coupling = C64::from_polar(1.0, phi_gamma);
    let rhs = |tau: f64, u: &CMat2| -> CMat2 {
        let om = C64::new(detuning(tau), 0.0);
        let h = CMat2::new(om, coupling, coupling.conj(), -om);
        (h * *u).scale(-I)
    };
    let h = tau_end / steps as f64;
    let half = C64::new(h / 2.0, 0.0);
    let full = C64::new(h, 0.0);
    let mut u = CMat2::identity();
    for k in 0..steps {
        let tau = k as f64 * h;
        let k1 = rhs(tau, &u);
        let k2 = rhs(tau + h / 2.0, &(u + k1.scale(half)));
        let k3 = rhs(tau + h / 2.0, &(u + k2.scale(half)));
        let k4 = rhs(tau + h, &(u + k3.scale(full)));
        let incr =
            (k1 + k2.scale(C64::new(2.0, 0.0)) + k3.scale(C64::new(2.0, 0.0)) + k4).scale(C64::new(h / 6.0, 0.0));
        u = u + incr;
    }
    u
}
