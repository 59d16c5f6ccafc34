//! Exact propagation for the driven coupled-spin Hamiltonian
//!
//! ```text
//! H = ħω_A σ3⊗I + ħω_B I⊗σ3 + γ11 σ1⊗σ1 + γ22 σ2⊗σ2 + γ33 σ3⊗σ3 + γ12 σ1⊗σ2 + γ21 σ2⊗σ1
//! ```
//!
//! The propagator splits into two 2×2 blocks acting on {|00⟩, |11⟩} (the "+"
//! branch) and {|01⟩, |10⟩} (the "−" branch):
//!
//! ```text
//! U = | a+   0    0    b+  |
//!     | 0    a-   b-   0   |
//!     | 0   -b-*  a-*  0   |
//!     |-b+*  0    0    a+* |
//! ```
//!
//! up to the block phases `exp(∓iγ33 t/ħ)`, which are carried separately as
//! `gamma33_t` (γ33·t/ħ). Time is measured with ħ = 1.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::smallmat::{CMat2, C64, I, ZERO};
use crate::states::XState;

/// Positivity drift tolerated on an evolved state before it is treated as a bug.
pub const EVOLVE_TOL: f64 = 1e-9;

/// Time-independent spin-spin couplings (energies, ħ = 1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Couplings {
    pub gamma11: f64,
    pub gamma22: f64,
    pub gamma33: f64,
    pub gamma12: f64,
    pub gamma21: f64,
}

impl Default for Couplings {
    /// `γ11 = γ22 = 1/2`, everything else zero: `Γ- = 1`, `Γ+ = 0`.
    fn default() -> Self {
        Self { gamma11: 0.5, gamma22: 0.5, gamma33: 0.0, gamma12: 0.0, gamma21: 0.0 }
    }
}

impl Couplings {
    /// `Γ+ = (γ11 - γ22) - i(γ12 + γ21)`.
    pub fn gamma_plus(&self) -> C64 {
        C64::new(self.gamma11 - self.gamma22, -(self.gamma12 + self.gamma21))
    }

    /// `Γ- = (γ11 + γ22) - i(-γ12 + γ21)`.
    pub fn gamma_minus(&self) -> C64 {
        C64::new(self.gamma11 + self.gamma22, -(-self.gamma12 + self.gamma21))
    }

    pub fn phi_gamma_plus(&self) -> f64 {
        let g = self.gamma_plus();
        g.im.atan2(g.re)
    }

    pub fn phi_gamma_minus(&self) -> f64 {
        let g = self.gamma_minus();
        g.im.atan2(g.re)
    }
}

/// Complex amplitude stored as modulus and phase.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Amplitude {
    pub modulus: f64,
    pub phase: f64,
}

impl Amplitude {
    pub const ONE: Amplitude = Amplitude { modulus: 1.0, phase: 0.0 };
    pub const ZERO: Amplitude = Amplitude { modulus: 0.0, phase: 0.0 };

    pub fn new(modulus: f64, phase: f64) -> Self {
        // the phase of a vanishing amplitude is gauge
        let phase = if modulus == 0.0 { 0.0 } else { phase };
        Self { modulus, phase }
    }

    pub fn from_complex(z: C64) -> Self {
        Self::new(z.norm(), z.im.atan2(z.re))
    }

    pub fn value(&self) -> C64 {
        C64::from_polar(self.modulus, self.phase)
    }
}

/// Propagator amplitudes at one instant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvolutionParams {
    pub a_plus: Amplitude,
    pub a_minus: Amplitude,
    pub b_plus: Amplitude,
    pub b_minus: Amplitude,
    pub tau_plus: f64,
    pub tau_minus: f64,
}

impl EvolutionParams {
    pub fn identity() -> Self {
        Self {
            a_plus: Amplitude::ONE,
            a_minus: Amplitude::ONE,
            b_plus: Amplitude::ZERO,
            b_minus: Amplitude::ZERO,
            tau_plus: 0.0,
            tau_minus: 0.0,
        }
    }

    /// `max(| |a±|² + |b±|² - 1 |)`.
    pub fn unitarity_deviation(&self) -> f64 {
        let plus = self.a_plus.modulus.powi(2) + self.b_plus.modulus.powi(2) - 1.0;
        let minus = self.a_minus.modulus.powi(2) + self.b_minus.modulus.powi(2) - 1.0;
        plus.abs().max(minus.abs())
    }

    /// `[[a+, b+], [-b+*, a+*]]` on {|00⟩, |11⟩}, without the γ33 phase.
    pub fn plus_block(&self) -> CMat2 {
        su2_block(self.a_plus.value(), self.b_plus.value())
    }

    /// `[[a-, b-], [-b-*, a-*]]` on {|01⟩, |10⟩}, without the γ33 phase.
    pub fn minus_block(&self) -> CMat2 {
        su2_block(self.a_minus.value(), self.b_minus.value())
    }
}

fn su2_block(a: C64, b: C64) -> CMat2 {
    CMat2::new(a, b, -b.conj(), a.conj())
}

/// The two sech-driven field profiles with closed-form propagators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldCase {
    /// `ħω_{A,B} = |Γ+| sech(2τ+) ± |Γ-| sech(2τ-)`.
    Case1,
    /// `ħω_{A,B} = |Γ+| sech(2τ+) ± |Γ-|/4 · (3 sech τ- - cosh τ-)`.
    Case2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ScenarioKind {
    #[serde(rename = "case1")]
    Case1,
    #[serde(rename = "case2")]
    Case2,
    #[serde(rename = "constant")]
    ConstantField,
}

impl ScenarioKind {
    pub fn field_case(self) -> Option<FieldCase> {
        match self {
            ScenarioKind::Case1 => Some(FieldCase::Case1),
            ScenarioKind::Case2 => Some(FieldCase::Case2),
            ScenarioKind::ConstantField => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ScenarioKind::Case1 => "case1",
            ScenarioKind::Case2 => "case2",
            ScenarioKind::ConstantField => "constant",
        }
    }
}

/// Field profile plus couplings.
///
/// Constant fields need `γ11 = γ22 = c` and `γ12 = γ21`; then `Γ- = 2c` and the
/// detuning is `Ω- = β c`. `Ω+` defaults to zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ScenarioJson", into = "ScenarioJson")]
pub struct Scenario {
    kind: ScenarioKind,
    couplings: Couplings,
    beta: f64,
    omega_plus: f64,
}

/// One sweep point: the propagator, `γ33 t` and the physical time `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evolution {
    pub params: EvolutionParams,
    pub gamma33_t: f64,
    pub time: f64,
}

impl Scenario {
    pub fn case1(couplings: Couplings) -> Result<Self> {
        Self::new(ScenarioKind::Case1, couplings, None, None)
    }

    pub fn case2(couplings: Couplings) -> Result<Self> {
        Self::new(ScenarioKind::Case2, couplings, None, None)
    }

    pub fn constant(couplings: Couplings, beta: f64) -> Result<Self> {
        Self::new(ScenarioKind::ConstantField, couplings, Some(beta), None)
    }

    pub fn new(kind: ScenarioKind, couplings: Couplings, beta: Option<f64>, omega_plus: Option<f64>) -> Result<Self> {
        let Couplings { gamma11, gamma22, gamma33, gamma12, gamma21 } = couplings;
        if ![gamma11, gamma22, gamma33, gamma12, gamma21].iter().all(|x| x.is_finite()) {
            return Err(Error::ScenarioInvalid("couplings must be finite".into()));
        }
        if couplings.gamma_minus().norm() == 0.0 {
            return Err(Error::ScenarioInvalid("|Gamma-| must be nonzero: it sets the time unit".into()));
        }
        let beta = match (kind, beta) {
            (ScenarioKind::ConstantField, None) => {
                return Err(Error::ScenarioInvalid("beta is required for constant fields".into()))
            }
            (ScenarioKind::ConstantField, Some(b)) => {
                if gamma11 != gamma22 || gamma12 != gamma21 {
                    return Err(Error::ScenarioInvalid(
                        "constant fields require gamma11 = gamma22 and gamma12 = gamma21".into(),
                    ));
                }
                b
            }
            (_, Some(_)) => return Err(Error::ScenarioInvalid("beta only applies to constant fields".into())),
            (_, None) => 0.0,
        };
        let omega_plus = omega_plus.unwrap_or(0.0);
        if !beta.is_finite() || !omega_plus.is_finite() {
            return Err(Error::ScenarioInvalid("beta and omega_plus must be finite".into()));
        }
        Ok(Self { kind, couplings, beta, omega_plus })
    }

    pub fn kind(&self) -> ScenarioKind {
        self.kind
    }
    pub fn couplings(&self) -> &Couplings {
        &self.couplings
    }
    pub fn beta(&self) -> f64 {
        self.beta
    }
    pub fn omega_plus(&self) -> f64 {
        self.omega_plus
    }

    /// `Ω- = β c` for constant fields.
    pub fn omega_minus(&self) -> f64 {
        self.beta * self.couplings.gamma11
    }

    /// Rate converting physical time into `τ-`: `|Γ-|` for the sech cases,
    /// `ν- = sqrt(Ω-² + |Γ-|²)` for constant fields.
    pub fn minus_rate(&self) -> f64 {
        match self.kind {
            ScenarioKind::ConstantField => self.omega_minus().hypot(self.couplings.gamma_minus().norm()),
            _ => self.couplings.gamma_minus().norm(),
        }
    }

    fn plus_rate(&self) -> f64 {
        match self.kind {
            ScenarioKind::ConstantField => self.omega_plus.hypot(self.couplings.gamma_plus().norm()),
            _ => self.couplings.gamma_plus().norm(),
        }
    }

    pub fn evolution_at(&self, tau_minus: f64) -> Evolution {
        let time = tau_minus / self.minus_rate();
        let tau_plus = self.plus_rate() * time;
        let params = match self.kind {
            ScenarioKind::Case1 => params_case1(tau_plus, tau_minus, &self.couplings),
            ScenarioKind::Case2 => params_case2(tau_plus, tau_minus, &self.couplings),
            ScenarioKind::ConstantField => constant_params(time, self),
        };
        Evolution { params, gamma33_t: self.couplings.gamma33 * time, time }
    }

    /// `(ħω_A, ħω_B)` at the given `τ-`.
    pub fn fields_at(&self, tau_minus: f64) -> (f64, f64) {
        match self.kind.field_case() {
            Some(case) => {
                let tau_plus = self.plus_rate() * tau_minus / self.minus_rate();
                field_profiles(case, tau_plus, tau_minus, &self.couplings)
            }
            None => {
                let om = self.omega_minus();
                ((self.omega_plus + om) / 2.0, (self.omega_plus - om) / 2.0)
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioJson {
    kind: ScenarioKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    gamma11: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    gamma22: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    gamma33: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    gamma12: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    gamma21: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    beta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    omega_plus: Option<f64>,
}

impl TryFrom<ScenarioJson> for Scenario {
    type Error = Error;
    fn try_from(j: ScenarioJson) -> Result<Self> {
        let d = Couplings::default();
        // a missing gamma12/gamma21 mirrors the other one
        let (gamma12, gamma21) = match (j.gamma12, j.gamma21) {
            (Some(a), Some(b)) => (a, b),
            (Some(a), None) | (None, Some(a)) => (a, a),
            (None, None) => (d.gamma12, d.gamma21),
        };
        let couplings = Couplings {
            gamma11: j.gamma11.unwrap_or(d.gamma11),
            gamma22: j.gamma22.unwrap_or(d.gamma22),
            gamma33: j.gamma33.unwrap_or(d.gamma33),
            gamma12,
            gamma21,
        };
        Scenario::new(j.kind, couplings, j.beta, j.omega_plus)
    }
}

impl From<Scenario> for ScenarioJson {
    fn from(s: Scenario) -> Self {
        let constant = s.kind == ScenarioKind::ConstantField;
        Self {
            kind: s.kind,
            gamma11: Some(s.couplings.gamma11),
            gamma22: Some(s.couplings.gamma22),
            gamma33: Some(s.couplings.gamma33),
            gamma12: Some(s.couplings.gamma12),
            gamma21: Some(s.couplings.gamma21),
            beta: constant.then_some(s.beta),
            omega_plus: constant.then_some(s.omega_plus),
        }
    }
}

/// Rosen–Zener type branch shared by both sech cases (and the "+" branch of both).
fn sech2_branch(tau: f64, phi_gamma: f64) -> (Amplitude, Amplitude) {
    let ch = (2.0 * tau).cosh();
    let a_mod = ((ch + 1.0) / (2.0 * ch)).sqrt();
    let b_mod = ((ch - 1.0) / (2.0 * ch)).sqrt();
    let common = -tau.tanh().atan();
    (Amplitude::new(a_mod, common - tau), Amplitude::new(b_mod, phi_gamma + common + tau - FRAC_PI_2))
}

pub fn params_case1(tau_plus: f64, tau_minus: f64, couplings: &Couplings) -> EvolutionParams {
    let (a_plus, b_plus) = sech2_branch(tau_plus, couplings.phi_gamma_plus());
    let (a_minus, b_minus) = sech2_branch(tau_minus, couplings.phi_gamma_minus());
    EvolutionParams { a_plus, a_minus, b_plus, b_minus, tau_plus, tau_minus }
}

pub fn params_case2(tau_plus: f64, tau_minus: f64, couplings: &Couplings) -> EvolutionParams {
    let (a_plus, b_plus) = sech2_branch(tau_plus, couplings.phi_gamma_plus());
    let common = -(tau_minus / 2.0).tanh().atan();
    let half_sinh = tau_minus.sinh() / 2.0;
    let a_minus = Amplitude::new(1.0 / tau_minus.cosh(), common - half_sinh);
    let b_minus = Amplitude::new(tau_minus.tanh(), couplings.phi_gamma_minus() + common + half_sinh - FRAC_PI_2);
    EvolutionParams { a_plus, a_minus, b_plus, b_minus, tau_plus, tau_minus }
}

/// Constant fields at physical time `t`: a Rabi rotation in each branch.
///
/// The returned amplitudes exclude the block phases `exp(∓iγ33 t)`.
pub fn params_constant(t: f64, scenario: &Scenario) -> Result<EvolutionParams> {
    if scenario.kind != ScenarioKind::ConstantField {
        return Err(Error::WrongScenarioKind(scenario.kind.name()));
    }
    Ok(constant_params(t, scenario))
}

fn constant_params(t: f64, scenario: &Scenario) -> EvolutionParams {
    let c = &scenario.couplings;
    let (a_plus, b_plus, tau_plus) = rabi(scenario.omega_plus, c.gamma_plus(), t);
    let (a_minus, b_minus, tau_minus) = rabi(scenario.omega_minus(), c.gamma_minus(), t);
    EvolutionParams { a_plus, a_minus, b_plus, b_minus, tau_plus, tau_minus }
}

/// `exp(-i [[Ω, Γ], [Γ*, -Ω]] t)` written as `[[a, b], [-b*, a*]]`.
fn rabi(omega: f64, gamma: C64, t: f64) -> (Amplitude, Amplitude, f64) {
    let nu = omega.hypot(gamma.norm());
    if nu == 0.0 {
        return (Amplitude::ONE, Amplitude::ZERO, 0.0);
    }
    let tau = nu * t;
    let (sin, cos) = tau.sin_cos();
    let a = C64::new(cos, -omega / nu * sin);
    let b = -I * gamma / nu * sin;
    (Amplitude::from_complex(a), Amplitude::from_complex(b), tau)
}

/// `(ħω_A, ħω_B)` for the two sech profiles.
pub fn field_profiles(case: FieldCase, tau_plus: f64, tau_minus: f64, couplings: &Couplings) -> (f64, f64) {
    let common = couplings.gamma_plus().norm() / (2.0 * tau_plus).cosh();
    let gm = couplings.gamma_minus().norm();
    let split = match case {
        FieldCase::Case1 => gm / (2.0 * tau_minus).cosh(),
        FieldCase::Case2 => gm / 4.0 * (3.0 / tau_minus.cosh() - tau_minus.cosh()),
    };
    (common + split, common - split)
}

/// `U ρ U†` restricted to the X entries.
pub fn evolve_xstate(state: &XState, p: &EvolutionParams) -> Result<XState> {
    let (ap, bp) = (p.a_plus.value(), p.b_plus.value());
    let (am, bm) = (p.a_minus.value(), p.b_minus.value());
    let [r11, r22, r33, r44] = state.diagonal();
    let r14 = state.rho14();
    let r23 = state.rho23();

    let mix_plus = 2.0 * (ap * bp.conj() * r14).re;
    let mix_minus = 2.0 * (am * bm.conj() * r23).re;
    let n11 = ap.norm_sqr() * r11 + bp.norm_sqr() * r44 + mix_plus;
    let n44 = bp.norm_sqr() * r11 + ap.norm_sqr() * r44 - mix_plus;
    let n22 = am.norm_sqr() * r22 + bm.norm_sqr() * r33 + mix_minus;
    let n33 = bm.norm_sqr() * r22 + am.norm_sqr() * r33 - mix_minus;
    let n14 = ap * ap * r14 - bp * bp * r14.conj() - ap * bp * (r11 - r44);
    let n23 = am * am * r23 - bm * bm * r23.conj() - am * bm * (r22 - r33);

    XState::with_tolerance([n11, n22, n33, n44], n14, n23, EVOLVE_TOL)
}

/// Coefficients of `U|Ψ-⟩ = c01|01⟩ + c10|10⟩`.
pub fn evolved_singlet(p: &EvolutionParams, gamma33_t: f64) -> (C64, C64) {
    let phase = C64::from_polar(FRAC_1_SQRT_2, gamma33_t);
    let a = p.a_minus.value();
    let b = p.b_minus.value();
    (phase * (a - b), -phase * (a.conj() + b.conj()))
}

/// Pure state written in the {|Ψ+⟩, |Ψ-⟩} basis, `|Ψ±⟩ = (|01⟩ ± |10⟩)/√2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BellAmplitudes {
    pub psi_plus: C64,
    pub psi_minus: C64,
}

impl BellAmplitudes {
    /// Amplitudes on |00⟩, |01⟩, |10⟩, |11⟩.
    pub fn computational(&self) -> [C64; 4] {
        let s = FRAC_1_SQRT_2;
        [ZERO, (self.psi_plus + self.psi_minus) * s, (self.psi_plus - self.psi_minus) * s, ZERO]
    }

    pub fn from_singlet_coefficients(c01: C64, c10: C64) -> Self {
        let s = FRAC_1_SQRT_2;
        Self { psi_plus: (c01 + c10) * s, psi_minus: (c01 - c10) * s }
    }
}

/// Large-τ- form of the evolved singlet.
///
/// Case 1 settles into `(-i e^{-2iτ}|Ψ+⟩ + |Ψ-⟩)/√2`; Case 2 keeps oscillating
/// as `-cos x |Ψ+⟩ - i sin x |Ψ-⟩` with `x = sinh(τ)/2 - 3π/4`.
pub fn asymptotic_state(case: FieldCase, tau_minus: f64) -> BellAmplitudes {
    match case {
        FieldCase::Case1 => BellAmplitudes {
            psi_plus: -I * C64::from_polar(FRAC_1_SQRT_2, -2.0 * tau_minus),
            psi_minus: C64::new(FRAC_1_SQRT_2, 0.0),
        },
        FieldCase::Case2 => {
            let x = tau_minus.sinh() / 2.0 - 3.0 * std::f64::consts::FRAC_PI_4;
            BellAmplitudes { psi_plus: C64::new(-x.cos(), 0.0), psi_minus: C64::new(0.0, -x.sin()) }
        }
    }
}
