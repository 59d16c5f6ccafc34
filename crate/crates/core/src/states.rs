//! X-state data model, Fano parametrization and local-unitary canonical form.

use std::f64::consts::FRAC_1_SQRT_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::smallmat::{CMat2, CMat4, C64, ZERO};

/// Tolerance used when validating user-supplied states.
pub const STATE_TOL: f64 = 1e-12;

/// Two-qubit density matrix supported on the diagonal and anti-diagonal.
///
/// ```text
/// ρ11  0    0    ρ14
/// 0    ρ22  ρ23  0
/// 0    ρ23* ρ33  0
/// ρ14* 0    0    ρ44
/// ```
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "XStateJson", into = "XStateJson")]
pub struct XState {
    rho11: f64,
    rho22: f64,
    rho33: f64,
    rho44: f64,
    rho14: C64,
    rho23: C64,
}

impl XState {
    /// Builds a state, rejecting anything that is not a unit-trace positive X matrix.
    pub fn new(diag: [f64; 4], rho14: C64, rho23: C64) -> Result<Self> {
        Self::with_tolerance(diag, rho14, rho23, STATE_TOL)
    }

    pub(crate) fn with_tolerance(diag: [f64; 4], rho14: C64, rho23: C64, tol: f64) -> Result<Self> {
        let [rho11, rho22, rho33, rho44] = diag;
        let state = Self { rho11, rho22, rho33, rho44, rho14, rho23 };
        state.check(tol)?;
        Ok(state)
    }

    fn check(&self, tol: f64) -> Result<()> {
        let finite = [
            self.rho11,
            self.rho22,
            self.rho33,
            self.rho44,
            self.rho14.re,
            self.rho14.im,
            self.rho23.re,
            self.rho23.im,
        ]
        .iter()
        .all(|x| x.is_finite());
        if !finite {
            return Err(Error::StateInvalid("non-finite entry".into()));
        }
        if let Some(d) = self.diagonal().iter().find(|&&d| d < -tol) {
            return Err(Error::StateInvalid(format!("negative diagonal entry {d}")));
        }
        let trace: f64 = self.diagonal().iter().sum();
        if (trace - 1.0).abs() > tol {
            return Err(Error::StateInvalid(format!("trace {trace} differs from 1")));
        }
        let outer = self.rho11 * self.rho44 - self.rho14.norm_sqr();
        let inner = self.rho22 * self.rho33 - self.rho23.norm_sqr();
        if outer < -tol || inner < -tol {
            return Err(Error::StateInvalid(format!(
                "positivity violated: rho11*rho44 - |rho14|^2 = {outer}, rho22*rho33 - |rho23|^2 = {inner}"
            )));
        }
        Ok(())
    }

    pub fn rho11(&self) -> f64 {
        self.rho11
    }
    pub fn rho22(&self) -> f64 {
        self.rho22
    }
    pub fn rho33(&self) -> f64 {
        self.rho33
    }
    pub fn rho44(&self) -> f64 {
        self.rho44
    }
    pub fn rho14(&self) -> C64 {
        self.rho14
    }
    pub fn rho23(&self) -> C64 {
        self.rho23
    }

    pub fn diagonal(&self) -> [f64; 4] {
        [self.rho11, self.rho22, self.rho33, self.rho44]
    }

    pub fn trace(&self) -> f64 {
        self.diagonal().iter().sum()
    }

    pub fn maximally_mixed() -> Self {
        Self { rho11: 0.25, rho22: 0.25, rho33: 0.25, rho44: 0.25, rho14: ZERO, rho23: ZERO }
    }

    /// Dense 4×4 form.
    pub fn to_dense(&self) -> CMat4 {
        let mut m = CMat4::from_real_diag(self.diagonal());
        m.0[0][3] = self.rho14;
        m.0[3][0] = self.rho14.conj();
        m.0[1][2] = self.rho23;
        m.0[2][1] = self.rho23.conj();
        m
    }

    /// Reads an X state back from a dense matrix. Entries outside the X pattern
    /// must vanish within `tol`.
    pub fn from_dense(m: &CMat4, tol: f64) -> Result<Self> {
        for r in 0..4 {
            for c in 0..4 {
                let on_x = r == c || r + c == 3;
                if !on_x && m.0[r][c].norm() > tol {
                    return Err(Error::StateInvalid(format!(
                        "entry ({r},{c}) = {} is outside the X pattern",
                        m.0[r][c]
                    )));
                }
            }
        }
        if m.hermitian_deviation() > tol {
            return Err(Error::StateInvalid("matrix is not Hermitian".into()));
        }
        Self::with_tolerance([m.0[0][0].re, m.0[1][1].re, m.0[2][2].re, m.0[3][3].re], m.0[0][3], m.0[1][2], tol)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct XStateJson {
    rho11: f64,
    rho22: f64,
    rho33: f64,
    rho44: f64,
    rho14_re: f64,
    rho14_im: f64,
    rho23_re: f64,
    rho23_im: f64,
}

impl TryFrom<XStateJson> for XState {
    type Error = Error;
    fn try_from(j: XStateJson) -> Result<Self> {
        XState::new(
            [j.rho11, j.rho22, j.rho33, j.rho44],
            C64::new(j.rho14_re, j.rho14_im),
            C64::new(j.rho23_re, j.rho23_im),
        )
    }
}

impl From<XState> for XStateJson {
    fn from(s: XState) -> Self {
        Self {
            rho11: s.rho11,
            rho22: s.rho22,
            rho33: s.rho33,
            rho44: s.rho44,
            rho14_re: s.rho14.re,
            rho14_im: s.rho14.im,
            rho23_re: s.rho23.re,
            rho23_im: s.rho23.im,
        }
    }
}

/// Fano parameters of an X state: z-components `r`, `s` of the local Bloch
/// vectors and the correlation matrix `t[m][n] = Tr(ρ σm⊗σn)` (indices 0..3 ↔ x, y, z).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FanoParams {
    pub r: f64,
    pub s: f64,
    pub t: [[f64; 3]; 3],
    /// `t` is diagonal, `t = diag(c1, c2, c3)`.
    pub canonical: bool,
}

impl FanoParams {
    /// Diagonal of `t`; these are `(c1, c2, c3)` when `canonical` is set.
    pub fn c(&self) -> [f64; 3] {
        [self.t[0][0], self.t[1][1], self.t[2][2]]
    }
}

pub fn fano_decompose(state: &XState) -> FanoParams {
    let XState { rho11, rho22, rho33, rho44, rho14, rho23 } = *state;
    let plus = rho23 + rho14;
    let minus = rho23 - rho14;
    let mut t = [[0.0; 3]; 3];
    t[0][0] = 2.0 * plus.re;
    t[1][1] = 2.0 * minus.re;
    t[2][2] = rho11 - rho22 - rho33 + rho44;
    t[0][1] = 2.0 * minus.im;
    t[1][0] = -2.0 * plus.im;
    FanoParams { r: rho11 + rho22 - rho33 - rho44, s: rho11 - rho22 + rho33 - rho44, t, canonical: false }
}

/// Fano parameters of the canonical form, computed directly from the moduli
/// of the coherences.
pub fn fano_canonical(state: &XState) -> FanoParams {
    let base = fano_decompose(state);
    let a14 = state.rho14.norm();
    let a23 = state.rho23.norm();
    let mut t = [[0.0; 3]; 3];
    t[0][0] = 2.0 * (a23 + a14);
    t[1][1] = 2.0 * (a23 - a14);
    t[2][2] = base.t[2][2];
    FanoParams { r: base.r, s: base.s, t, canonical: true }
}

/// Result of [`canonicalize`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Canonicalized {
    pub state: XState,
    /// `(φ14 + φ23) / 2`: qubit A is rotated by `exp(-i phase_a σ3 / 2)`.
    pub phase_a: f64,
    /// `(φ14 - φ23) / 2`: qubit B is rotated by `exp(-i phase_b σ3 / 2)`.
    pub phase_b: f64,
}

impl Canonicalized {
    /// The local unitary `U_A ⊗ U_B` mapping the input onto the canonical state.
    pub fn local_unitary(&self) -> CMat4 {
        z_rotation(self.phase_a).kron(&z_rotation(self.phase_b))
    }
}

fn z_rotation(angle: f64) -> CMat2 {
    CMat2::from_diag([C64::from_polar(1.0, -angle / 2.0), C64::from_polar(1.0, angle / 2.0)])
}

fn phase_of(z: C64) -> f64 {
    if z.norm() == 0.0 {
        0.0
    } else {
        z.im.atan2(z.re)
    }
}

/// Brings an X state to the form with real nonnegative coherences using local
/// z rotations; the diagonal is untouched.
pub fn canonicalize(state: &XState) -> Canonicalized {
    let phi14 = phase_of(state.rho14);
    let phi23 = phase_of(state.rho23);
    let canonical =
        XState { rho14: C64::new(state.rho14.norm(), 0.0), rho23: C64::new(state.rho23.norm(), 0.0), ..*state };
    Canonicalized { state: canonical, phase_a: (phi14 + phi23) / 2.0, phase_b: (phi14 - phi23) / 2.0 }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(-1.0 / 3.0..=1.0).contains(&alpha) {
        return Err(Error::AlphaOutOfRange(alpha));
    }
    Ok(())
}

/// `(1-α)/4 · I + α |Ψ-⟩⟨Ψ-|`.
pub fn make_werner(alpha: f64) -> Result<XState> {
    check_alpha(alpha)?;
    Ok(make_generalized_werner(&GeneralizedWernerSpec::werner(alpha)?))
}

/// Parameters of `(1-α)/4 · I + α |ξ⟩⟨ξ|` with `|ξ⟩ = μ|01⟩ + ν|10⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneralizedWernerSpec {
    alpha: f64,
    mu: C64,
    nu: C64,
}

impl GeneralizedWernerSpec {
    pub fn new(alpha: f64, mu: C64, nu: C64) -> Result<Self> {
        if !(-1.0 / 3.0..=1.0).contains(&alpha) {
            return Err(Error::SpecInvalid(format!("alpha = {alpha} is outside [-1/3, 1]")));
        }
        let norm = mu.norm_sqr() + nu.norm_sqr();
        if norm.is_nan() || (norm - 1.0).abs() > STATE_TOL {
            return Err(Error::SpecInvalid(format!("|mu|^2 + |nu|^2 = {norm}")));
        }
        Ok(Self { alpha, mu, nu })
    }

    /// The parameters that reproduce the Werner state.
    pub fn werner(alpha: f64) -> Result<Self> {
        Self::new(alpha, C64::new(FRAC_1_SQRT_2, 0.0), C64::new(-FRAC_1_SQRT_2, 0.0))
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
    pub fn mu(&self) -> C64 {
        self.mu
    }
    pub fn nu(&self) -> C64 {
        self.nu
    }
}

pub fn make_generalized_werner(spec: &GeneralizedWernerSpec) -> XState {
    let GeneralizedWernerSpec { alpha, mu, nu } = *spec;
    let mixed = (1.0 - alpha) / 4.0;
    XState {
        rho11: mixed,
        rho22: mixed + alpha * mu.norm_sqr(),
        rho33: mixed + alpha * nu.norm_sqr(),
        rho44: mixed,
        rho14: ZERO,
        rho23: mu * nu.conj() * alpha,
    }
}
