//! Fixed-size complex matrices for two-qubit work.
//!
//! Only what the correlation measures need: 2×2 and 4×4 products, adjoints,
//! Kronecker products, a cyclic Jacobi eigensolver for Hermitian 4×4 input and
//! the principal square root of positive semidefinite matrices.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Tolerance on `max |m - m†|` accepted as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Eigenvalues in `[-PSD_CLAMP, 0)` are rounding noise and get clamped to zero.
pub const PSD_CLAMP: f64 = 1e-10;

const JACOBI_MAX_SWEEPS: usize = 64;

/// Row-major 2×2 complex matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CMat2(pub [[C64; 2]; 2]);

/// Row-major 4×4 complex matrix in the basis |00⟩, |01⟩, |10⟩, |11⟩.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CMat4(pub [[C64; 4]; 4]);

macro_rules! square_matrix {
    ($name:ident, $n:expr) => {
        impl $name {
            pub const DIM: usize = $n;

            pub fn zeros() -> Self {
                Self([[ZERO; $n]; $n])
            }

            pub fn identity() -> Self {
                let mut m = Self::zeros();
                for k in 0..$n {
                    m.0[k][k] = ONE;
                }
                m
            }

            pub fn from_diag(d: [C64; $n]) -> Self {
                let mut m = Self::zeros();
                for k in 0..$n {
                    m.0[k][k] = d[k];
                }
                m
            }

            pub fn from_real_diag(d: [f64; $n]) -> Self {
                Self::from_diag(d.map(|x| C64::new(x, 0.0)))
            }

            #[inline]
            pub fn get(&self, row: usize, col: usize) -> C64 {
                self.0[row][col]
            }

            pub fn adjoint(&self) -> Self {
                let mut out = Self::zeros();
                for r in 0..$n {
                    for c in 0..$n {
                        out.0[c][r] = self.0[r][c].conj();
                    }
                }
                out
            }

            pub fn conj(&self) -> Self {
                Self(self.0.map(|row| row.map(|z| z.conj())))
            }

            pub fn transpose(&self) -> Self {
                let mut out = Self::zeros();
                for r in 0..$n {
                    for c in 0..$n {
                        out.0[c][r] = self.0[r][c];
                    }
                }
                out
            }

            pub fn trace(&self) -> C64 {
                (0..$n).map(|k| self.0[k][k]).sum()
            }

            pub fn scale(&self, s: C64) -> Self {
                Self(self.0.map(|row| row.map(|z| z * s)))
            }

            /// Largest entrywise modulus of `self - other`.
            pub fn max_abs_diff(&self, other: &Self) -> f64 {
                let mut worst = 0.0_f64;
                for r in 0..$n {
                    for c in 0..$n {
                        worst = worst.max((self.0[r][c] - other.0[r][c]).norm());
                    }
                }
                worst
            }

            /// `max |m - m†|` entrywise.
            pub fn hermitian_deviation(&self) -> f64 {
                self.max_abs_diff(&self.adjoint())
            }

            /// `(m + m†) / 2`.
            pub fn hermitian_part(&self) -> Self {
                (*self + self.adjoint()).scale(C64::new(0.5, 0.0))
            }

            /// `max |u u† - I|` entrywise.
            pub fn unitary_deviation(&self) -> f64 {
                (*self * self.adjoint()).max_abs_diff(&Self::identity())
            }

            pub fn is_finite(&self) -> bool {
                self.0.iter().flatten().all(|z| z.re.is_finite() && z.im.is_finite())
            }
        }

        impl Add for $name {
            type Output = Self;
            fn add(self, rhs: Self) -> Self {
                let mut out = self;
                for r in 0..$n {
                    for c in 0..$n {
                        out.0[r][c] += rhs.0[r][c];
                    }
                }
                out
            }
        }

        impl Sub for $name {
            type Output = Self;
            fn sub(self, rhs: Self) -> Self {
                let mut out = self;
                for r in 0..$n {
                    for c in 0..$n {
                        out.0[r][c] -= rhs.0[r][c];
                    }
                }
                out
            }
        }

        impl Mul for $name {
            type Output = Self;
            fn mul(self, rhs: Self) -> Self {
                let mut out = Self::zeros();
                for r in 0..$n {
                    for c in 0..$n {
                        let mut acc = ZERO;
                        for k in 0..$n {
                            acc += self.0[r][k] * rhs.0[k][c];
                        }
                        out.0[r][c] = acc;
                    }
                }
                out
            }
        }

        impl UnitaryCheck for $name {
            fn unitary_deviation(&self) -> f64 {
                $name::unitary_deviation(self)
            }
        }
    };
}

/// Anything that can report how far it is from being unitary.
pub trait UnitaryCheck {
    fn unitary_deviation(&self) -> f64;
}

square_matrix!(CMat2, 2);
square_matrix!(CMat4, 4);

/// Max entrywise `|u u† - I|` for a 2×2 or 4×4 matrix.
pub fn unitary_check<M: UnitaryCheck>(u: &M) -> f64 {
    u.unitary_deviation()
}

impl CMat2 {
    pub fn new(a: C64, b: C64, c: C64, d: C64) -> Self {
        Self([[a, b], [c, d]])
    }

    /// Kronecker product `self ⊗ rhs`.
    pub fn kron(&self, rhs: &CMat2) -> CMat4 {
        let mut out = CMat4::zeros();
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        out.0[2 * i + k][2 * j + l] = self.0[i][j] * rhs.0[k][l];
                    }
                }
            }
        }
        out
    }
}

/// Pauli matrices σ0 = I, σ1, σ2, σ3.
pub fn pauli(k: usize) -> CMat2 {
    match k {
        0 => CMat2::identity(),
        1 => CMat2::new(ZERO, ONE, ONE, ZERO),
        2 => CMat2::new(ZERO, -I, I, ZERO),
        3 => CMat2::new(ONE, ZERO, ZERO, -ONE),
        _ => panic!("pauli index {k} out of range"),
    }
}

impl CMat4 {
    /// `|ψ⟩⟨ψ|` for a 4-component amplitude vector.
    pub fn outer(psi: &[C64; 4]) -> Self {
        let mut out = Self::zeros();
        for r in 0..4 {
            for c in 0..4 {
                out.0[r][c] = psi[r] * psi[c].conj();
            }
        }
        out
    }

    pub fn apply(&self, v: &[C64; 4]) -> [C64; 4] {
        let mut out = [ZERO; 4];
        for (r, slot) in out.iter_mut().enumerate() {
            *slot = (0..4).map(|k| self.0[r][k] * v[k]).sum();
        }
        out
    }

    /// Reduced state of the first qubit.
    pub fn partial_trace_b(&self) -> CMat2 {
        let mut out = CMat2::zeros();
        for a in 0..2 {
            for b in 0..2 {
                out.0[a][b] = self.0[2 * a][2 * b] + self.0[2 * a + 1][2 * b + 1];
            }
        }
        out
    }

    /// Reduced state of the second qubit.
    pub fn partial_trace_a(&self) -> CMat2 {
        let mut out = CMat2::zeros();
        for a in 0..2 {
            for b in 0..2 {
                out.0[a][b] = self.0[a][b] + self.0[2 + a][2 + b];
            }
        }
        out
    }
}

/// Eigen-decomposition of a Hermitian 4×4 matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HermitianEigen {
    /// Ascending.
    pub values: [f64; 4],
    /// Column `k` is the eigenvector for `values[k]`.
    pub vectors: CMat4,
}

impl HermitianEigen {
    pub fn reconstruct(&self) -> CMat4 {
        self.map_values(|x| x)
    }

    /// `V f(Λ) V†`.
    pub fn map_values(&self, f: impl Fn(f64) -> f64) -> CMat4 {
        let v = &self.vectors;
        let fl = self.values.map(f);
        let mut out = CMat4::zeros();
        for r in 0..4 {
            for c in 0..4 {
                out.0[r][c] = (0..4).map(|k| v.0[r][k] * fl[k] * v.0[c][k].conj()).sum();
            }
        }
        out
    }
}

/// Eigenvalues (ascending) and eigenvectors of a Hermitian matrix by cyclic
/// complex Jacobi rotations.
pub fn hermitian_eigen(m: &CMat4) -> Result<HermitianEigen> {
    let deviation = m.hermitian_deviation();
    if deviation.is_nan() || deviation > HERMITIAN_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    let mut a = m.hermitian_part();
    let mut v = CMat4::identity();
    let scale = a.0.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max);

    for _ in 0..JACOBI_MAX_SWEEPS {
        let off: f64 = (0..4)
            .flat_map(|r| (0..4).filter(move |&c| c != r).map(move |c| (r, c)))
            .map(|(r, c)| a.0[r][c].norm_sqr())
            .sum();
        if off <= (f64::EPSILON * scale).powi(2) * 1e-4 || off == 0.0 {
            break;
        }
        for p in 0..3 {
            for q in (p + 1)..4 {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order = [0usize, 1, 2, 3];
    order.sort_by(|&i, &j| a.0[i][i].re.total_cmp(&a.0[j][j].re));
    let mut values = [0.0; 4];
    let mut vectors = CMat4::zeros();
    for (dst, &src) in order.iter().enumerate() {
        values[dst] = a.0[src][src].re;
        for r in 0..4 {
            vectors.0[r][dst] = v.0[r][src];
        }
    }
    Ok(HermitianEigen { values, vectors })
}

/// One Jacobi rotation annihilating `a[p][q]`: `a ← G† a G`, `v ← v G`.
fn rotate(a: &mut CMat4, v: &mut CMat4, p: usize, q: usize) {
    let apq = a.0[p][q];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    // Phase so that the (p, q) element becomes real and positive.
    let phase = apq / mag;
    let app = a.0[p][p].re;
    let aqq = a.0[q][q].re;
    let theta = (aqq - app) / (2.0 * mag);
    let t = if theta.is_infinite() { 0.0 } else { theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt()) };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    // G = diag(1, conj(phase)) · [[c, s], [-s, c]] on the (p, q) plane.
    let g_pp = C64::new(c, 0.0);
    let g_pq = C64::new(s, 0.0);
    let g_qp = -phase.conj() * s;
    let g_qq = phase.conj() * c;

    for k in 0..4 {
        let akp = a.0[k][p];
        let akq = a.0[k][q];
        a.0[k][p] = akp * g_pp + akq * g_qp;
        a.0[k][q] = akp * g_pq + akq * g_qq;
    }
    for k in 0..4 {
        let apk = a.0[p][k];
        let aqk = a.0[q][k];
        a.0[p][k] = g_pp.conj() * apk + g_qp.conj() * aqk;
        a.0[q][k] = g_pq.conj() * apk + g_qq.conj() * aqk;
    }
    a.0[p][q] = ZERO;
    a.0[q][p] = ZERO;
    a.0[p][p] = C64::new(a.0[p][p].re, 0.0);
    a.0[q][q] = C64::new(a.0[q][q].re, 0.0);

    for k in 0..4 {
        let vkp = v.0[k][p];
        let vkq = v.0[k][q];
        v.0[k][p] = vkp * g_pp + vkq * g_qp;
        v.0[k][q] = vkp * g_pq + vkq * g_qq;
    }
}

/// Eigenvalues of a PSD matrix with round-off negatives clamped to zero.
pub fn psd_eigen(m: &CMat4) -> Result<HermitianEigen> {
    let mut eig = hermitian_eigen(m)?;
    if eig.values[0] < -PSD_CLAMP {
        return Err(Error::NotPsd { min_eigenvalue: eig.values[0] });
    }
    for x in eig.values.iter_mut() {
        *x = x.max(0.0);
    }
    Ok(eig)
}

/// Principal square root of a Hermitian positive semidefinite matrix.
pub fn psd_sqrt(m: &CMat4) -> Result<CMat4> {
    Ok(psd_eigen(m)?.map_values(f64::sqrt))
}

/// Singular values (descending) of a general 4×4 matrix via the eigenvalues of `a† a`.
pub fn singular_values(a: &CMat4) -> [f64; 4] {
    let gram = (a.adjoint() * *a).hermitian_part();
    let eig = hermitian_eigen(&gram).expect("a† a is Hermitian by construction");
    let mut out = eig.values.map(|x| x.max(0.0).sqrt());
    out.reverse();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn werner_dense(alpha: f64) -> CMat4 {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let singlet = [ZERO, c(s, 0.0), c(-s, 0.0), ZERO];
        CMat4::identity().scale(c((1.0 - alpha) / 4.0, 0.0)) + CMat4::outer(&singlet).scale(c(alpha, 0.0))
    }

    fn arb_mat4() -> impl Strategy<Value = CMat4> {
        proptest::collection::vec(-1.0f64..1.0, 32).prop_map(|xs| {
            let mut m = CMat4::zeros();
            for r in 0..4 {
                for col in 0..4 {
                    let k = 2 * (4 * r + col);
                    m.0[r][col] = c(xs[k], xs[k + 1]);
                }
            }
            m
        })
    }

    #[test]
    fn identity_eigenvalues() {
        let eig = hermitian_eigen(&CMat4::identity()).unwrap();
        assert_eq!(eig.values, [1.0; 4]);
    }

    #[test]
    fn diagonal_eigenvalues_sorted() {
        let eig = hermitian_eigen(&CMat4::from_real_diag([0.3, 0.1, 0.4, 0.2])).unwrap();
        assert_eq!(eig.values, [0.1, 0.2, 0.3, 0.4]);
        assert!(eig.reconstruct().max_abs_diff(&CMat4::from_real_diag([0.3, 0.1, 0.4, 0.2])) < 1e-15);
    }

    #[test]
    fn rejects_non_hermitian() {
        let mut m = CMat4::identity();
        m.0[0][1] = c(1e-6, 0.0);
        assert!(matches!(hermitian_eigen(&m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn sqrt_of_diagonal() {
        let s = psd_sqrt(&CMat4::from_real_diag([4.0, 1.0, 0.0, 9.0])).unwrap();
        assert!(s.max_abs_diff(&CMat4::from_real_diag([2.0, 1.0, 0.0, 3.0])) < 1e-14);
        assert!(psd_sqrt(&CMat4::identity()).unwrap().max_abs_diff(&CMat4::identity()) < 1e-15);
    }

    #[test]
    fn sqrt_of_werner_round_trips() {
        let w = werner_dense(0.5);
        let s = psd_sqrt(&w).unwrap();
        assert!((s * s).max_abs_diff(&w) < 1e-9);
    }

    #[test]
    fn sqrt_clamps_tiny_negative_and_rejects_large() {
        let ok = psd_sqrt(&CMat4::from_real_diag([-5e-11, 0.5, 0.25, 0.25])).unwrap();
        assert_eq!(ok.0[0][0], ZERO);
        let err = psd_sqrt(&CMat4::from_real_diag([-1e-6, 0.5, 0.25, 0.25]));
        assert!(matches!(err, Err(Error::NotPsd { .. })));
    }

    #[test]
    fn unitary_check_on_phases() {
        assert_eq!(unitary_check(&CMat4::identity()), 0.0);
        let ph = CMat4::from_diag([
            C64::from_polar(1.0, 0.3),
            C64::from_polar(1.0, -1.1),
            C64::from_polar(1.0, 2.0),
            C64::from_polar(1.0, 5.5),
        ]);
        assert!(unitary_check(&ph) < 1e-12);
        let ph2 = CMat2::from_diag([C64::from_polar(1.0, 0.7), C64::from_polar(1.0, 0.1)]);
        assert!(unitary_check(&ph2) < 1e-12);
    }

    #[test]
    fn partial_traces_of_product() {
        let a = CMat2::new(c(0.7, 0.0), c(0.1, 0.2), c(0.1, -0.2), c(0.3, 0.0));
        let b = CMat2::new(c(0.4, 0.0), c(0.0, 0.1), c(0.0, -0.1), c(0.6, 0.0));
        let ab = a.kron(&b);
        assert!(ab.partial_trace_b().max_abs_diff(&a) < 1e-15);
        assert!(ab.partial_trace_a().max_abs_diff(&b) < 1e-15);
    }

    #[test]
    fn singular_values_of_unitary_are_one() {
        let u = pauli(1).kron(&pauli(2));
        for s in singular_values(&u) {
            assert!((s - 1.0).abs() < 1e-12);
        }
    }

    proptest! {
        #[test]
        fn eigen_reconstructs_random_hermitian(a in arb_mat4()) {
            let h = a + a.adjoint();
            let eig = hermitian_eigen(&h).unwrap();
            prop_assert!(eig.reconstruct().max_abs_diff(&h) <= 1e-9);
            prop_assert!(eig.values.windows(2).all(|w| w[0] <= w[1]));
            let sum: f64 = eig.values.iter().sum();
            prop_assert!((sum - h.trace().re).abs() <= 1e-9);
            prop_assert!(eig.vectors.unitary_deviation() <= 1e-12);
        }

        #[test]
        fn sqrt_squares_back_for_unit_spectrum(a in arb_mat4(), w in proptest::array::uniform4(0.0f64..1.0)) {
            // Random unitary from the eigenvectors of a Hermitian matrix, random spectrum in [0, 1].
            let u = hermitian_eigen(&(a + a.adjoint())).unwrap().vectors;
            let m = u * CMat4::from_real_diag(w) * u.adjoint();
            let m = m.hermitian_part();
            let s = psd_sqrt(&m).unwrap();
            prop_assert!((s * s).max_abs_diff(&m) <= 1e-8);
            prop_assert!(s.hermitian_deviation() <= 1e-12);
        }

        #[test]
        fn eigen_is_deterministic(a in arb_mat4()) {
            let h = a + a.adjoint();
            prop_assert_eq!(hermitian_eigen(&h).unwrap(), hermitian_eigen(&h).unwrap());
        }
    }
}
