//! Solution containers shared by the frequency-domain and time-domain solvers.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Basis order used for 4x4 density matrices: e, M=+1, M=0, M=−1.
pub const IDX_E: usize = 0;
pub const IDX_P1: usize = 1;
pub const IDX_0: usize = 2;
pub const IDX_M1: usize = 3;

pub type Matrix4 = [[Complex64; 4]; 4];

/// Number of real unknowns in the steady-state system.
pub const N_UNKNOWNS: usize = 15;

/// Labels of the real unknowns, in solver order.
pub const UNKNOWN_LAYOUT: [&str; N_UNKNOWNS] = [
    "rho_ee_dc",
    "rho_m1m1_dc",
    "rho_11_dc",
    "re rho_m11_dc",
    "im rho_m11_dc",
    "re a_e0",
    "im a_e0",
    "re a_em1",
    "im a_em1",
    "re a_e1",
    "im a_e1",
    "re a_10",
    "im a_10",
    "re a_m10",
    "im a_m10",
];

/// Steady-state Fourier amplitudes.
///
/// Conjugate amplitudes such as `ρ_−1e(−ω_p)` are never stored; they are
/// `conj` of the retained ones.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct FourierSolution {
    pub rho_ee: f64,
    pub rho_11: f64,
    pub rho_m1m1: f64,
    /// ρ_−1,1 (dc)
    pub rho_m11: Complex64,
    /// ρ_e0(ω_c)
    pub a_e0: Complex64,
    /// ρ_e,−1(ω_p)
    pub a_em1: Complex64,
    /// ρ_e,+1(ω_p)
    pub a_e1: Complex64,
    /// ρ_10(ω_c − ω_p)
    pub a_10: Complex64,
    /// ρ_−1,0(ω_c − ω_p)
    pub a_m10: Complex64,
}

impl FourierSolution {
    pub fn rho_00(&self) -> f64 {
        1.0 - self.rho_ee - self.rho_11 - self.rho_m1m1
    }

    pub fn from_unknowns(x: &[f64; N_UNKNOWNS]) -> Self {
        let c = |i: usize| Complex64::new(x[i], x[i + 1]);
        FourierSolution {
            rho_ee: x[0],
            rho_m1m1: x[1],
            rho_11: x[2],
            rho_m11: c(3),
            a_e0: c(5),
            a_em1: c(7),
            a_e1: c(9),
            a_10: c(11),
            a_m10: c(13),
        }
    }

    pub fn to_unknowns(&self) -> [f64; N_UNKNOWNS] {
        let mut x = [0.0; N_UNKNOWNS];
        x[0] = self.rho_ee;
        x[1] = self.rho_m1m1;
        x[2] = self.rho_11;
        for (slot, z) in [
            (3, self.rho_m11),
            (5, self.a_e0),
            (7, self.a_em1),
            (9, self.a_e1),
            (11, self.a_10),
            (13, self.a_m10),
        ] {
            x[slot] = z.re;
            x[slot + 1] = z.im;
        }
        x
    }

    /// Every real component plus the derived ρ₀₀, labelled.
    pub fn components(&self) -> Vec<(&'static str, f64)> {
        let mut out: Vec<_> = UNKNOWN_LAYOUT
            .iter()
            .copied()
            .zip(self.to_unknowns())
            .collect();
        out.push(("rho_00_dc", self.rho_00()));
        out
    }
}

/// Density-matrix envelopes in the frame co-rotating with the fields.
///
/// `sigma_e0` carries `ρ_e0 e^{iω_c t}`, `sigma_e±1` carry `ρ_e±1 e^{iω_p t}`,
/// `sigma_±10` carry `ρ_±10 e^{i(ω_c−ω_p)t}`; `sigma_1m1` is ρ_1,−1 itself.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct RotatingState {
    pub rho_ee: f64,
    pub rho_11: f64,
    pub rho_00: f64,
    pub rho_m1m1: f64,
    pub sigma_e0: Complex64,
    pub sigma_e1: Complex64,
    pub sigma_em1: Complex64,
    pub sigma_10: Complex64,
    pub sigma_m10: Complex64,
    pub sigma_1m1: Complex64,
}

pub const STATE_LEN: usize = 16;

impl RotatingState {
    /// Ground populations shared equally, no coherence.
    pub fn unpolarized() -> Self {
        let third = 1.0 / 3.0;
        RotatingState {
            rho_11: third,
            rho_00: third,
            rho_m1m1: third,
            ..Default::default()
        }
    }

    pub fn trace(&self) -> f64 {
        self.rho_ee + self.rho_11 + self.rho_00 + self.rho_m1m1
    }

    pub fn to_array(&self) -> [f64; STATE_LEN] {
        [
            self.rho_ee,
            self.rho_11,
            self.rho_00,
            self.rho_m1m1,
            self.sigma_e0.re,
            self.sigma_e0.im,
            self.sigma_e1.re,
            self.sigma_e1.im,
            self.sigma_em1.re,
            self.sigma_em1.im,
            self.sigma_10.re,
            self.sigma_10.im,
            self.sigma_m10.re,
            self.sigma_m10.im,
            self.sigma_1m1.re,
            self.sigma_1m1.im,
        ]
    }

    pub fn from_array(a: &[f64; STATE_LEN]) -> Self {
        let c = |i: usize| Complex64::new(a[i], a[i + 1]);
        RotatingState {
            rho_ee: a[0],
            rho_11: a[1],
            rho_00: a[2],
            rho_m1m1: a[3],
            sigma_e0: c(4),
            sigma_e1: c(6),
            sigma_em1: c(8),
            sigma_10: c(10),
            sigma_m10: c(12),
            sigma_1m1: c(14),
        }
    }

    /// Full Hermitian matrix in the basis (e, +1, 0, −1).
    pub fn to_matrix(&self) -> Matrix4 {
        let r = |x: f64| Complex64::new(x, 0.0);
        let mut m = [[Complex64::new(0.0, 0.0); 4]; 4];
        m[IDX_E][IDX_E] = r(self.rho_ee);
        m[IDX_P1][IDX_P1] = r(self.rho_11);
        m[IDX_0][IDX_0] = r(self.rho_00);
        m[IDX_M1][IDX_M1] = r(self.rho_m1m1);
        for (i, j, z) in [
            (IDX_E, IDX_0, self.sigma_e0),
            (IDX_E, IDX_P1, self.sigma_e1),
            (IDX_E, IDX_M1, self.sigma_em1),
            (IDX_P1, IDX_0, self.sigma_10),
            (IDX_M1, IDX_0, self.sigma_m10),
            (IDX_P1, IDX_M1, self.sigma_1m1),
        ] {
            m[i][j] = z;
            m[j][i] = z.conj();
        }
        m
    }

    /// Reads the upper-triangle entries listed in [`to_matrix`](Self::to_matrix);
    /// populations take the real part.
    pub fn from_matrix(m: &Matrix4) -> Self {
        RotatingState {
            rho_ee: m[IDX_E][IDX_E].re,
            rho_11: m[IDX_P1][IDX_P1].re,
            rho_00: m[IDX_0][IDX_0].re,
            rho_m1m1: m[IDX_M1][IDX_M1].re,
            sigma_e0: m[IDX_E][IDX_0],
            sigma_e1: m[IDX_E][IDX_P1],
            sigma_em1: m[IDX_E][IDX_M1],
            sigma_10: m[IDX_P1][IDX_0],
            sigma_m10: m[IDX_M1][IDX_0],
            sigma_1m1: m[IDX_P1][IDX_M1],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn unknown_vector_roundtrip(v in proptest::array::uniform15(-1.0..1.0f64)) {
            prop_assert_eq!(FourierSolution::from_unknowns(&v).to_unknowns(), v);
        }

        #[test]
        fn state_matrix_roundtrip(v in proptest::array::uniform16(-1.0..1.0f64)) {
            let s = RotatingState::from_array(&v);
            prop_assert_eq!(RotatingState::from_matrix(&s.to_matrix()), s);
            prop_assert_eq!(s.to_array(), v);
        }
    }

    #[test]
    fn unpolarized_has_unit_trace() {
        assert!((RotatingState::unpolarized().trace() - 1.0).abs() < 1e-15);
        assert_eq!(FourierSolution::default().rho_00(), 1.0);
    }
}
