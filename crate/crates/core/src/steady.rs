//! Steady-state Fourier amplitudes as a closed real linear system.
//!
//! The nine complex balance equations mix unknowns with their conjugates
//! (`V_p* ρ_e−1(ω_p) − V_p ρ_−1e(−ω_p)`), so they are linear over the reals
//! only. Each unknown is split into real and imaginary parts and each
//! complex equation into two real rows, except the three population
//! balances whose real parts vanish identically. ρ₀₀ is eliminated through
//! `ρ_ee + ρ_11 + ρ_00 + ρ_−1−1 = 1`; this produces the constant sources.
//!
//! In the frame where both σ fields share ω_p no component at 2ω_c − ω_p
//! is generated, so the nine equations close on the fifteen unknowns.

use num_complex::Complex64;
use thiserror::Error;

use crate::linsolve::{self, DenseMatrix, LinSolveError};
use crate::params::SystemParams;
use crate::state::{FourierSolution, N_UNKNOWNS, UNKNOWN_LAYOUT};

/// Largest accepted back-substituted residual of any balance equation.
pub const RESIDUAL_GATE: f64 = 1e-10;

/// Number of complex balance equations.
pub const N_EQUATIONS: usize = 9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SteadyError {
    #[error("steady-state system singular at delta = {delta}, |Vc| = {vc}: {source}")]
    Singular {
        delta: f64,
        vc: f64,
        #[source]
        source: LinSolveError,
    },
    #[error("steady-state residual {residual:e} exceeds gate at delta = {delta}, |Vc| = {vc}")]
    Residual { delta: f64, vc: f64, residual: f64 },
}

#[derive(Debug, Clone)]
pub struct AssembledSystem {
    pub matrix: DenseMatrix,
    pub rhs: Vec<Complex64>,
    pub unknown_layout: [&'static str; N_UNKNOWNS],
}

// Index of the real part of each complex unknown.
const EE: usize = 0;
const M1M1: usize = 1;
const P1P1: usize = 2;
const M11: usize = 3;
const E0: usize = 5;
const EM1: usize = 7;
const E1: usize = 9;
const P10: usize = 11;
const M10: usize = 13;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// One complex equation `Σ coef_j x_j + constant = 0` over the real unknowns.
struct ComplexRow {
    coef: [Complex64; N_UNKNOWNS],
    constant: Complex64,
}

impl ComplexRow {
    fn new() -> Self {
        ComplexRow {
            coef: [Complex64::new(0.0, 0.0); N_UNKNOWNS],
            constant: Complex64::new(0.0, 0.0),
        }
    }

    /// `c · x` for a real unknown.
    fn real(&mut self, idx: usize, c: Complex64) -> &mut Self {
        self.coef[idx] += c;
        self
    }

    /// `c · z` for the complex unknown `z = x[idx] + i x[idx+1]`.
    fn cplx(&mut self, idx: usize, c: Complex64) -> &mut Self {
        self.coef[idx] += c;
        self.coef[idx + 1] += c * I;
        self
    }

    /// `c · conj(z)`.
    fn conj(&mut self, idx: usize, c: Complex64) -> &mut Self {
        self.coef[idx] += c;
        self.coef[idx + 1] -= c * I;
        self
    }

    fn constant(&mut self, c: Complex64) -> &mut Self {
        self.constant += c;
        self
    }

    /// `c·z − c*·conj(z)`-style bracket `[V* a − V conj(a)]` scaled by `sign`.
    fn bracket(&mut self, idx: usize, v: Complex64, sign: f64) -> &mut Self {
        self.cplx(idx, sign * v.conj()).conj(idx, -sign * v)
    }
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Builds the 15x15 real system for the amplitudes at pump–probe detuning
/// `delta`. Rows follow the order of the balance equations: excited
/// population, the two outer ground populations, the ρ_−1,1 coherence,
/// then the drive, two probe, and two Raman amplitudes.
pub fn assemble_system(params: &SystemParams, delta: f64) -> AssembledSystem {
    let d = params.detunings(delta);
    let (vc, vp) = (params.vc, params.vp);
    let (g, g_ex, g0, gamma, gamma0) = (
        params.big_gamma,
        params.excited_decay(),
        params.big_gamma0,
        params.gamma,
        params.gamma0,
    );

    let mut rows: Vec<(ComplexRow, bool)> = Vec::with_capacity(N_EQUATIONS);

    // 3iΓ ρ_ee = [Vp* a_em1 − Vp c.c.] + [Vp* a_e1 − Vp c.c.] + [Vc* a_e0 − Vc c.c.]
    let mut r = ComplexRow::new();
    r.real(EE, I * g_ex)
        .bracket(EM1, vp, -1.0)
        .bracket(E1, vp, -1.0)
        .bracket(E0, vc, -1.0);
    rows.push((r, false));

    // 3iΓ₀ ρ_∓1∓1 = −[Vp* a_e∓1 − Vp c.c.] + i(Γ − Γ₀) ρ_ee + iΓ₀
    for (pop, amp) in [(M1M1, EM1), (P1P1, E1)] {
        let mut r = ComplexRow::new();
        r.real(pop, I * (3.0 * g0))
            .bracket(amp, vp, 1.0)
            .real(EE, -I * (g - g0))
            .constant(-I * g0);
        rows.push((r, false));
    }

    // (ω_−11 − iγ₀) ρ_−11 = Vp* a_e1 − Vp conj(a_em1)
    let mut r = ComplexRow::new();
    r.cplx(M11, Complex64::new(d.w_m11, -gamma0))
        .cplx(E1, -vp.conj())
        .conj(EM1, vp);
    rows.push((r, true));

    // (Δc + iγ) a_e0 = Vc (2ρ_ee + ρ_−1−1 + ρ_11 − 1) − Vp (a_m10 + a_10)
    let mut r = ComplexRow::new();
    r.cplx(E0, Complex64::new(d.d_e0, gamma))
        .real(EE, -2.0 * vc)
        .real(M1M1, -vc)
        .real(P1P1, -vc)
        .constant(vc)
        .cplx(M10, vp)
        .cplx(P10, vp);
    rows.push((r, true));

    // (d_e∓1 + iγ) a_e∓1 = −Vp (ρ_∓1∓1 − ρ_ee + ρ_±1∓1) − Vc ρ_0∓1
    // with ρ_1,−1 = conj(ρ_−1,1) and ρ_0∓1(ω_p − ω_c) = conj(a_∓10).
    let mut r = ComplexRow::new();
    r.cplx(EM1, Complex64::new(d.d_em1, gamma))
        .real(M1M1, vp)
        .real(EE, -vp)
        .conj(M11, vp)
        .conj(M10, vc);
    rows.push((r, true));

    let mut r = ComplexRow::new();
    r.cplx(E1, Complex64::new(d.d_e1, gamma))
        .real(P1P1, vp)
        .real(EE, -vp)
        .cplx(M11, vp)
        .conj(P10, vc);
    rows.push((r, true));

    // (d_±10 + iγ₀) a_±10 = −[Vp* a_e0 − Vc conj(a_e±1)]
    for (raman, det, probe) in [(P10, d.d_10, E1), (M10, d.d_m10, EM1)] {
        let mut r = ComplexRow::new();
        r.cplx(raman, Complex64::new(det, gamma0))
            .cplx(E0, vp.conj())
            .conj(probe, -vc);
        rows.push((r, true));
    }

    let mut matrix = DenseMatrix::zeros(N_UNKNOWNS);
    let mut rhs = Vec::with_capacity(N_UNKNOWNS);
    let mut row_idx = 0;
    for (row, keep_real) in &rows {
        let mut emit = |part: fn(&Complex64) -> f64| {
            for (j, c) in row.coef.iter().enumerate() {
                matrix[(row_idx, j)] = real(part(c));
            }
            rhs.push(real(-part(&row.constant)));
            row_idx += 1;
        };
        if *keep_real {
            emit(|z| z.re);
        }
        emit(|z| z.im);
    }
    debug_assert_eq!(row_idx, N_UNKNOWNS);

    AssembledSystem {
        matrix,
        rhs,
        unknown_layout: UNKNOWN_LAYOUT,
    }
}

/// Solves for the steady-state amplitudes at detuning `delta`.
pub fn solve_steady_state(
    params: &SystemParams,
    delta: f64,
) -> Result<FourierSolution, SteadyError> {
    let sys = assemble_system(params, delta);
    let x = linsolve::lu_solve(&sys.matrix, &sys.rhs).map_err(|source| SteadyError::Singular {
        delta,
        vc: params.vc.norm(),
        source,
    })?;
    let mut unknowns = [0.0; N_UNKNOWNS];
    for (u, z) in unknowns.iter_mut().zip(&x) {
        *u = z.re;
    }
    let sol = FourierSolution::from_unknowns(&unknowns);

    let residual = max_residual(params, delta, &sol);
    // NaN fails the gate too
    if residual.is_nan() || residual > RESIDUAL_GATE {
        return Err(SteadyError::Residual {
            delta,
            vc: params.vc.norm(),
            residual,
        });
    }
    Ok(sol)
}

/// Left minus right side of every balance equation, evaluated directly in
/// complex form with conjugate amplitudes reconstructed on the fly.
pub fn equation_residuals(
    params: &SystemParams,
    delta: f64,
    s: &FourierSolution,
) -> [Complex64; N_EQUATIONS] {
    let d = params.detunings(delta);
    let (vc, vp) = (params.vc, params.vp);
    let (g, g0, gamma, gamma0) = (
        params.big_gamma,
        params.big_gamma0,
        params.gamma,
        params.gamma0,
    );

    // ρ_ij(ω) = conj(ρ_ji(−ω))
    let rho_m1e = s.a_em1.conj();
    let rho_1e = s.a_e1.conj();
    let rho_0e = s.a_e0.conj();
    let rho_1m1 = s.rho_m11.conj();
    let rho_0m1 = s.a_m10.conj();
    let rho_01 = s.a_10.conj();

    let br_m1 = vp.conj() * s.a_em1 - vp * rho_m1e;
    let br_1 = vp.conj() * s.a_e1 - vp * rho_1e;
    let br_0 = vc.conj() * s.a_e0 - vc * rho_0e;
    let ee = real(s.rho_ee);

    [
        3.0 * I * g * ee - (br_m1 + br_1 + br_0),
        3.0 * I * g0 * s.rho_m1m1 - (-br_m1 + I * (g - g0) * ee + I * g0),
        3.0 * I * g0 * s.rho_11 - (-br_1 + I * (g - g0) * ee + I * g0),
        Complex64::new(d.w_m11, -gamma0) * s.rho_m11 - (vp.conj() * s.a_e1 - vp * rho_m1e),
        Complex64::new(d.d_e0, gamma) * s.a_e0
            - (vc * (2.0 * s.rho_ee + s.rho_m1m1 + s.rho_11 - 1.0) - vp * (s.a_m10 + s.a_10)),
        Complex64::new(d.d_em1, gamma) * s.a_em1
            - (-vp * (s.rho_m1m1 - s.rho_ee + rho_1m1) - vc * rho_0m1),
        Complex64::new(d.d_e1, gamma) * s.a_e1
            - (-vp * (s.rho_11 - s.rho_ee + s.rho_m11) - vc * rho_01),
        Complex64::new(d.d_10, gamma0) * s.a_10 + (vp.conj() * s.a_e0 - vc * rho_1e),
        Complex64::new(d.d_m10, gamma0) * s.a_m10 + (vp.conj() * s.a_e0 - vc * rho_m1e),
    ]
}

pub fn max_residual(params: &SystemParams, delta: f64, sol: &FourierSolution) -> f64 {
    equation_residuals(params, delta, sol)
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn with(vc: f64, split: f64) -> SystemParams {
        SystemParams {
            omega_1m1: split,
            ..SystemParams::default()
        }
        .with_drive(vc)
    }

    #[test]
    fn dimension_and_sources() {
        let sys = assemble_system(&with(2.5, 5.0), 0.3);
        assert_eq!(sys.matrix.dim(), 15);
        let nonzero = sys.rhs.iter().filter(|z| z.norm() != 0.0).count();
        assert_eq!(nonzero, 3);
        assert_eq!(sys.unknown_layout[0], "rho_ee_dc");
    }

    #[test]
    fn assembled_matrix_is_real() {
        let p = SystemParams {
            vc: Complex64::new(1.0, 0.7),
            vp: Complex64::new(0.004, -0.009),
            delta_c: 0.4,
            ..SystemParams::default()
        };
        let sys = assemble_system(&p, -1.3);
        for i in 0..15 {
            assert!(sys.matrix.row(i).iter().all(|z| z.im == 0.0));
        }
        let sol = solve_steady_state(&p, -1.3).unwrap();
        assert!(max_residual(&p, -1.3, &sol) <= RESIDUAL_GATE);
    }

    #[test]
    fn probe_free_symmetry() {
        for split in [0.0, 5.0] {
            let p = SystemParams {
                vp: Complex64::new(0.0, 0.0),
                ..with(2.5, split)
            };
            for delta in [-3.0, 0.0, 1.7] {
                let s = solve_steady_state(&p, delta).unwrap();
                assert_eq!(s.a_e1, Complex64::new(0.0, 0.0));
                assert_eq!(s.a_em1, Complex64::new(0.0, 0.0));
                assert!((s.rho_11 - s.rho_m1m1).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn degenerate_sublevels_respond_identically() {
        let p = with(1.0, 0.0);
        for delta in [-7.0, -0.5, 0.0, 0.25, 3.0] {
            let s = solve_steady_state(&p, delta).unwrap();
            assert!(
                (s.a_e1 - s.a_em1).norm() <= 1e-14 * s.a_e1.norm().max(1e-300),
                "{delta}"
            );
        }
    }

    #[test]
    fn residual_detects_wrong_solution() {
        let p = with(2.5, 5.0);
        let mut s = solve_steady_state(&p, 0.0).unwrap();
        s.a_10 += Complex64::new(1e-6, 0.0);
        assert!(max_residual(&p, 0.0, &s) > 1e-9);
    }

    #[test]
    fn zero_field_limit_is_unpolarized() {
        let p = SystemParams {
            vc: Complex64::new(0.0, 0.0),
            vp: Complex64::new(0.0, 0.0),
            ..SystemParams::default()
        };
        let s = solve_steady_state(&p, 0.0).unwrap();
        for pop in [s.rho_11, s.rho_m1m1, s.rho_00()] {
            assert!((pop - 1.0 / 3.0).abs() < 1e-12);
        }
        assert_eq!(s.rho_ee, 0.0);
    }
}
