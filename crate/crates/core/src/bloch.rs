//! Time-domain optical Bloch equations in the co-rotating frame.
//!
//! This path does not touch [`crate::steady`]: it builds the 4x4 density
//! matrix, applies the coherent part `−i[H₀,ρ] + i[V,ρ]` and the
//! phenomenological relaxation, and steps it forward with classical RK4.
//! The interaction enters with `+i[V,ρ]`, matching the sign convention in
//! which the drive and probe amplitudes are defined.
//!
//! With `ρ̃_jk = ρ_jk e^{i(φ_j − φ_k)t}` and phases `φ_e = ω_c`,
//! `φ_0 = 0`, `φ_±1 = ω_c − ω_p`, every coupling becomes time independent
//! because σ₊ and σ₋ share ω_p and each field drives its own transition.
//! The frame energies are `h_k = ω_k − φ_k`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use num_complex::Complex64;

use crate::params::SystemParams;
use crate::state::{
    FourierSolution, Matrix4, RotatingState, IDX_0, IDX_E, IDX_M1, IDX_P1, STATE_LEN,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum IntegratorError {
    #[error("integrator option `{0}` must be positive and finite")]
    InvalidOption(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegratorOptions {
    /// Fixed RK4 step in units of 1/γ.
    pub dt: f64,
    pub t_max: f64,
    /// Stop once the sup-norm of the state derivative falls below this.
    pub convergence_tol: f64,
}

impl Default for IntegratorOptions {
    fn default() -> Self {
        IntegratorOptions {
            dt: 0.01,
            t_max: 5e4,
            convergence_tol: 1e-10,
        }
    }
}

impl IntegratorOptions {
    pub fn validate(&self) -> Result<(), IntegratorError> {
        for (name, v) in [
            ("dt", self.dt),
            ("t_max", self.t_max),
            ("convergence_tol", self.convergence_tol),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(IntegratorError::InvalidOption(name));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SteadyRun {
    pub state: RotatingState,
    /// Sup-norm of the derivative at `state`.
    pub derivative_norm: f64,
    pub converged: bool,
    pub time: f64,
    pub steps: u64,
    /// Largest |trace − 1| seen at any step.
    pub max_trace_drift: f64,
}

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Time-independent pieces of the envelope equations at one (params, δ).
#[derive(Debug, Clone, Copy)]
struct Generator {
    /// Frame energies h_k, basis (e, +1, 0, −1).
    energy: [f64; 4],
    coupling: Matrix4,
    decay_e: [f64; 4],
    big_gamma0: f64,
    gamma: f64,
    gamma0: f64,
}

impl Generator {
    fn new(params: &SystemParams, delta: f64) -> Self {
        let half = 0.5 * params.omega_1m1;
        // ω_e − ω_c = −Δc; ω_±1 − (ω_c − ω_p) = ±ω₁₋₁/2 + δ
        let mut energy = [0.0; 4];
        energy[IDX_E] = -params.delta_c;
        energy[IDX_P1] = half + delta;
        energy[IDX_0] = 0.0;
        energy[IDX_M1] = -half + delta;

        let mut coupling = [[ZERO; 4]; 4];
        for (g, v) in [(IDX_0, params.vc), (IDX_P1, params.vp), (IDX_M1, params.vp)] {
            coupling[IDX_E][g] = v;
            coupling[g][IDX_E] = v.conj();
        }

        let mut decay_e = [0.0; 4];
        for g in [IDX_P1, IDX_0, IDX_M1] {
            decay_e[g] = params.big_gamma;
        }

        Generator {
            energy,
            coupling,
            decay_e,
            big_gamma0: params.big_gamma0,
            gamma: params.gamma,
            gamma0: params.gamma0,
        }
    }

    fn derivative(&self, rho: &Matrix4) -> Matrix4 {
        let v = &self.coupling;
        let mut out = [[ZERO; 4]; 4];
        for j in 0..4 {
            for k in 0..4 {
                let mut comm = ZERO;
                for m in 0..4 {
                    comm += v[j][m] * rho[m][k] - rho[j][m] * v[m][k];
                }
                out[j][k] = I * comm - I * (self.energy[j] - self.energy[k]) * rho[j][k];
            }
        }

        let grounds = [IDX_P1, IDX_0, IDX_M1];
        let rho_ee = rho[IDX_E][IDX_E];
        let total_e: f64 = self.decay_e.iter().sum();
        out[IDX_E][IDX_E] -= total_e * rho_ee;
        for &g in &grounds {
            out[g][g] += self.decay_e[g] * rho_ee;
            for &h in &grounds {
                if h != g {
                    out[g][g] += self.big_gamma0 * (rho[h][h] - rho[g][g]);
                }
            }
        }
        for j in 0..4 {
            for k in 0..4 {
                if j == k {
                    continue;
                }
                let rate = if j == IDX_E || k == IDX_E {
                    self.gamma
                } else {
                    self.gamma0
                };
                out[j][k] -= rate * rho[j][k];
            }
        }
        out
    }

    fn rhs(&self, state: &RotatingState) -> RotatingState {
        RotatingState::from_matrix(&self.derivative(&state.to_matrix()))
    }
}

/// Derivative of the envelope state. Has no explicit time dependence.
pub fn rotating_frame_rhs(
    state: &RotatingState,
    params: &SystemParams,
    delta: f64,
) -> RotatingState {
    Generator::new(params, delta).rhs(state)
}

/// Full 4x4 derivative matrix, including the (identically zero) imaginary
/// parts of the population rates.
pub fn rotating_frame_rhs_matrix(
    state: &RotatingState,
    params: &SystemParams,
    delta: f64,
) -> Matrix4 {
    Generator::new(params, delta).derivative(&state.to_matrix())
}

fn sup_norm(a: &[f64; STATE_LEN]) -> f64 {
    a.iter().fold(0.0, |m, x| m.max(x.abs()))
}

fn axpy(y: &[f64; STATE_LEN], h: f64, k: &[f64; STATE_LEN]) -> [f64; STATE_LEN] {
    let mut out = *y;
    for (o, ki) in out.iter_mut().zip(k) {
        *o += h * ki;
    }
    out
}

/// Integrates from the unpolarized ground state until the derivative norm
/// drops below `opts.convergence_tol` or `t_max` is reached.
pub fn integrate_to_steady(
    params: &SystemParams,
    delta: f64,
    opts: &IntegratorOptions,
) -> Result<SteadyRun, IntegratorError> {
    integrate_from(RotatingState::unpolarized(), params, delta, opts)
}

pub fn integrate_from(
    initial: RotatingState,
    params: &SystemParams,
    delta: f64,
    opts: &IntegratorOptions,
) -> Result<SteadyRun, IntegratorError> {
    opts.validate()?;
    let gen = Generator::new(params, delta);
    let f = |y: &[f64; STATE_LEN]| gen.rhs(&RotatingState::from_array(y)).to_array();

    let h = opts.dt;
    let max_steps = (opts.t_max / h).ceil() as u64;
    let trace0 = initial.trace();
    let mut y = initial.to_array();
    let mut steps = 0u64;
    let mut max_drift: f64 = 0.0;

    loop {
        let k1 = f(&y);
        let norm = sup_norm(&k1);
        if norm < opts.convergence_tol || steps >= max_steps {
            let state = RotatingState::from_array(&y);
            return Ok(SteadyRun {
                state,
                derivative_norm: norm,
                converged: norm < opts.convergence_tol,
                time: steps as f64 * h,
                steps,
                max_trace_drift: max_drift,
            });
        }
        let k2 = f(&axpy(&y, 0.5 * h, &k1));
        let k3 = f(&axpy(&y, 0.5 * h, &k2));
        let k4 = f(&axpy(&y, h, &k3));
        for i in 0..STATE_LEN {
            y[i] += h / 6.0 * (k1[i] + 2.0 * (k2[i] + k3[i]) + k4[i]);
        }
        steps += 1;
        let drift = (y[0] + y[1] + y[2] + y[3] - trace0).abs();
        max_drift = max_drift.max(drift);
    }
}

/// Reads the Fourier amplitudes off a fixed-point envelope state.
pub fn extract_amplitudes(state: &RotatingState) -> FourierSolution {
    FourierSolution {
        rho_ee: state.rho_ee,
        rho_11: state.rho_11,
        rho_m1m1: state.rho_m1m1,
        rho_m11: state.sigma_1m1.conj(),
        a_e0: state.sigma_e0,
        a_em1: state.sigma_em1,
        a_e1: state.sigma_e1,
        a_10: state.sigma_10,
        a_m10: state.sigma_m10,
    }
}

/// Inverse of [`extract_amplitudes`], with ρ₀₀ from normalization.
pub fn embed_amplitudes(sol: &FourierSolution) -> RotatingState {
    RotatingState {
        rho_ee: sol.rho_ee,
        rho_11: sol.rho_11,
        rho_00: sol.rho_00(),
        rho_m1m1: sol.rho_m1m1,
        sigma_e0: sol.a_e0,
        sigma_e1: sol.a_e1,
        sigma_em1: sol.a_em1,
        sigma_10: sol.a_10,
        sigma_m10: sol.a_m10,
        sigma_1m1: sol.rho_m11.conj(),
    }
}
