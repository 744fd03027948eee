//! Probe response, dispersion, group velocity and population-trapping
//! figures of merit derived from steady-state amplitudes.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::params::SystemParams;
use crate::state::FourierSolution;
use crate::steady::{self, SteadyError};
use crate::sweep::SpectralSeries;

/// Default half-width of the central-difference stencil.
pub const DEFAULT_STEP: f64 = 1e-3;
/// Relative agreement required between step `h` and `h/2`.
pub const RICHARDSON_TOL: f64 = 1e-4;
/// Populations of a spectral point must sum to one within this.
pub const TRACE_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ObservableError {
    #[error("probe amplitude is zero; susceptibility proxy undefined")]
    ZeroProbe,
    #[error("stencil step must be positive and finite (got {0})")]
    BadStep(f64),
    #[error("solve failed at stencil point delta = {at}: {source}")]
    Stencil {
        at: f64,
        #[source]
        source: SteadyError,
    },
    #[error("only {found} usable points within {window} of delta0 = {delta0} (need {needed})")]
    InsufficientData {
        delta0: f64,
        window: f64,
        found: usize,
        needed: usize,
    },
}

/// `(ρ_e1(ω_p) + ρ_e−1(ω_p)) · γ / V_p`; real part ~ refraction,
/// imaginary part ~ absorption.
pub fn susceptibility_proxy(
    sol: &FourierSolution,
    params: &SystemParams,
) -> Result<Complex64, ObservableError> {
    if params.vp.norm() == 0.0 {
        return Err(ObservableError::ZeroProbe);
    }
    Ok((sol.a_e1 + sol.a_em1) * params.gamma / params.vp)
}

/// Observables at one detuning.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralPoint {
    pub delta: f64,
    pub chi_re: f64,
    pub chi_im: f64,
    pub rho_ee: f64,
    pub rho_11: f64,
    pub rho_00: f64,
    pub rho_m1m1: f64,
}

impl SpectralPoint {
    pub fn from_solution(
        delta: f64,
        sol: &FourierSolution,
        params: &SystemParams,
    ) -> Result<Self, ObservableError> {
        let chi = susceptibility_proxy(sol, params)?;
        Ok(SpectralPoint {
            delta,
            chi_re: chi.re,
            chi_im: chi.im,
            rho_ee: sol.rho_ee,
            rho_11: sol.rho_11,
            rho_00: sol.rho_00(),
            rho_m1m1: sol.rho_m1m1,
        })
    }

    pub fn population_sum(&self) -> f64 {
        self.rho_ee + self.rho_11 + self.rho_00 + self.rho_m1m1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Dispersion {
    /// Central difference with step `h`.
    pub value: f64,
    /// Central difference with step `h/2`.
    pub half_step: f64,
    /// Richardson combination `(4 D(h/2) − D(h)) / 3`.
    pub extrapolated: f64,
    /// Set when `D(h)` and `D(h/2)` disagree beyond [`RICHARDSON_TOL`].
    pub near_singularity: bool,
}

fn chi_re_at(params: &SystemParams, delta: f64) -> Result<f64, ObservableError> {
    let sol = steady::solve_steady_state(params, delta)
        .map_err(|source| ObservableError::Stencil { at: delta, source })?;
    Ok(susceptibility_proxy(&sol, params)?.re)
}

/// Slope of Re χ with respect to δ/γ at `delta0`.
pub fn dispersion_at(
    params: &SystemParams,
    delta0: f64,
    h: f64,
) -> Result<Dispersion, ObservableError> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(ObservableError::BadStep(h));
    }
    let central = |step: f64| -> Result<f64, ObservableError> {
        let x = step * params.gamma;
        Ok((chi_re_at(params, delta0 + x)? - chi_re_at(params, delta0 - x)?) / (2.0 * step))
    };
    let value = central(h)?;
    let half_step = central(0.5 * h)?;
    let scale = half_step.abs().max(f64::MIN_POSITIVE);
    Ok(Dispersion {
        value,
        half_step,
        extrapolated: (4.0 * half_step - value) / 3.0,
        near_singularity: (value - half_step).abs() > RICHARDSON_TOL * scale,
    })
}

/// Lumped prefactor Ω relating dispersion to group index.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GroupVelocityParams {
    pub omega: f64,
}

impl GroupVelocityParams {
    pub fn new(omega: f64) -> Option<Self> {
        (omega.is_finite() && omega >= 0.0).then_some(GroupVelocityParams { omega })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Subluminal,
    Superluminal,
    Vacuum,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GroupVelocity {
    /// c / V_g
    pub factor: f64,
    pub regime: Regime,
}

/// `c/V_g = 1 + Ω D`.
pub fn group_velocity_factor(dispersion: f64, gv: GroupVelocityParams) -> GroupVelocity {
    let shift = gv.omega * dispersion;
    let regime = if shift == 0.0 {
        Regime::Vacuum
    } else if dispersion > 0.0 {
        Regime::Subluminal
    } else {
        Regime::Superluminal
    };
    GroupVelocity {
        factor: 1.0 + shift,
        regime,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Feature {
    #[serde(rename = "EIT")]
    Eit,
    #[serde(rename = "EIA")]
    Eia,
    #[serde(rename = "neither")]
    Neither,
}

impl std::fmt::Display for Feature {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Feature::Eit => "EIT",
            Feature::Eia => "EIA",
            Feature::Neither => "neither",
        })
    }
}

/// Thresholds for [`classify_feature`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassifyOptions {
    /// Half-width of the window around δ₀.
    pub window: f64,
    /// A dip must be at most this fraction of the window maximum.
    pub eit_ratio: f64,
    /// A peak must be at least this multiple of the mean of the window edges.
    pub eia_ratio: f64,
    pub min_points: usize,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            window: 2.0,
            eit_ratio: 0.5,
            eia_ratio: 1.5,
            min_points: 11,
        }
    }
}

/// Labels the absorption line shape at the grid point nearest `delta0`.
pub fn classify_feature(
    series: &SpectralSeries,
    delta0: f64,
    opts: &ClassifyOptions,
) -> Result<Feature, ObservableError> {
    let reach = opts.window * (1.0 + 1e-12);
    let window: Vec<&SpectralPoint> = series
        .points
        .iter()
        .flatten()
        .filter(|p| (p.delta - delta0).abs() <= reach)
        .collect();
    if window.len() < opts.min_points.max(3) {
        return Err(ObservableError::InsufficientData {
            delta0,
            window: opts.window,
            found: window.len(),
            needed: opts.min_points.max(3),
        });
    }

    let center = window
        .iter()
        .enumerate()
        .min_by(|a, b| {
            (a.1.delta - delta0)
                .abs()
                .total_cmp(&(b.1.delta - delta0).abs())
        })
        .map(|(i, _)| i)
        .expect("window is nonempty");
    if center == 0 || center == window.len() - 1 {
        return Ok(Feature::Neither);
    }

    let (prev, here, next) = (
        window[center - 1].chi_im,
        window[center].chi_im,
        window[center + 1].chi_im,
    );
    let max = window
        .iter()
        .map(|p| p.chi_im)
        .fold(f64::NEG_INFINITY, f64::max);
    let edge_mean = 0.5 * (window[0].chi_im + window[window.len() - 1].chi_im);

    if here < prev && here < next && here <= opts.eit_ratio * max {
        Ok(Feature::Eit)
    } else if here > prev && here > next && here >= opts.eia_ratio * edge_mean {
        Ok(Feature::Eia)
    } else {
        Ok(Feature::Neither)
    }
}

/// Line-shape summary at one detuning.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FeatureReport {
    pub delta0: f64,
    pub feature: Feature,
    pub dispersion: Dispersion,
    pub group_velocity: Option<GroupVelocity>,
}

/// Classifies the series at `delta0` and evaluates the dispersion there
/// with the steady-state solver at the series parameters.
pub fn feature_report(
    series: &SpectralSeries,
    delta0: f64,
    gv: Option<GroupVelocityParams>,
) -> Result<FeatureReport, ObservableError> {
    let feature = classify_feature(series, delta0, &ClassifyOptions::default())?;
    let dispersion = dispersion_at(&series.params, delta0, DEFAULT_STEP)?;
    Ok(FeatureReport {
        delta0,
        feature,
        dispersion,
        group_velocity: gv.map(|g| group_velocity_factor(dispersion.value, g)),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CptMetrics {
    pub rho_11: f64,
    pub rho_m1m1: f64,
    pub rho_ee: f64,
    pub rho_00: f64,
    /// ρ_ee / (ρ_11 + ρ_−1−1), or 0 when the denominator vanishes.
    pub trap_ratio: f64,
}

pub fn cpt_metrics(sol: &FourierSolution) -> CptMetrics {
    let outer = sol.rho_11 + sol.rho_m1m1;
    CptMetrics {
        rho_11: sol.rho_11,
        rho_m1m1: sol.rho_m1m1,
        rho_ee: sol.rho_ee,
        rho_00: sol.rho_00(),
        trap_ratio: if outer < 1e-12 {
            0.0
        } else {
            sol.rho_ee / outer
        },
    }
}

/// Indices of strict interior local minima of `values`.
pub fn local_minima(values: &[f64]) -> Vec<usize> {
    (1..values.len().saturating_sub(1))
        .filter(|&i| values[i] < values[i - 1] && values[i] < values[i + 1])
        .collect()
}

/// Indices of strict interior local extrema (minima and maxima) of `values`.
pub fn local_extrema(values: &[f64]) -> Vec<usize> {
    (1..values.len().saturating_sub(1))
        .filter(|&i| (values[i] - values[i - 1]) * (values[i + 1] - values[i]) < 0.0)
        .collect()
}
