//! Detuning sweeps and drive-strength scans.
//!
//! Every grid point is solved independently, so a singular or
//! non-converged point becomes a gap rather than failing the sweep.
//! Points are evaluated in parallel; results are always stored in grid
//! order and do not depend on the worker count.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bloch::{self, IntegratorOptions};
use crate::observables::{ObservableError, SpectralPoint};
use crate::params::SystemParams;
use crate::steady;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SweepError {
    #[error("grid needs at least 2 points (got {0})")]
    TooFewPoints(usize),
    #[error("grid bounds must be finite with min < max (got {min}..{max})")]
    BadRange { min: f64, max: f64 },
    #[error("every point of the sweep failed")]
    AllPointsFailed,
    #[error("drive scan needs at least one drive amplitude")]
    EmptyScan,
    #[error("drive amplitudes must be positive and finite (got {0})")]
    BadDrive(f64),
    #[error("invalid integrator options: {0}")]
    Integrator(#[from] bloch::IntegratorError),
    #[error("thread pool: {0}")]
    ThreadPool(String),
}

/// Uniform detuning grid, endpoints included.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeltaGrid {
    pub min: f64,
    pub max: f64,
    pub n: usize,
}

impl DeltaGrid {
    pub fn new(min: f64, max: f64, n: usize) -> Result<Self, SweepError> {
        if n < 2 {
            return Err(SweepError::TooFewPoints(n));
        }
        if !(min.is_finite() && max.is_finite() && min < max) {
            return Err(SweepError::BadRange { min, max });
        }
        Ok(DeltaGrid { min, max, n })
    }

    /// δ ∈ [−10, 10] with 1001 points.
    pub fn figure_default() -> Self {
        DeltaGrid {
            min: -10.0,
            max: 10.0,
            n: 1001,
        }
    }

    pub fn points(&self) -> Vec<f64> {
        let last = (self.n - 1) as f64;
        (0..self.n)
            .map(|i| {
                if i == self.n - 1 {
                    self.max
                } else {
                    self.min + (self.max - self.min) * (i as f64 / last)
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Fourier,
    TimeDomain,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Solver {
    Fourier,
    TimeDomain(IntegratorOptions),
}

impl Solver {
    pub fn provenance(&self) -> Provenance {
        match self {
            Solver::Fourier => Provenance::Fourier,
            Solver::TimeDomain(_) => Provenance::TimeDomain,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralSeries {
    pub params: SystemParams,
    pub grid: Vec<f64>,
    /// One entry per grid point; `None` marks a point that could not be solved.
    pub points: Vec<Option<SpectralPoint>>,
    pub provenance: Provenance,
}

impl SpectralSeries {
    /// Solved points only, in grid order.
    pub fn solved(&self) -> impl Iterator<Item = &SpectralPoint> {
        self.points.iter().flatten()
    }

    /// Grid index closest to `delta`.
    pub fn nearest_index(&self, delta: f64) -> Option<usize> {
        (0..self.grid.len()).min_by(|&a, &b| {
            (self.grid[a] - delta)
                .abs()
                .total_cmp(&(self.grid[b] - delta).abs())
        })
    }
}

/// Worker count for sweeps; `None` uses rayon's global pool.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SweepOptions {
    pub threads: Option<usize>,
}

/// Solves a single point with the requested solver.
pub fn solve_point(
    params: &SystemParams,
    delta: f64,
    solver: &Solver,
) -> Result<SpectralPoint, String> {
    let sol = match solver {
        Solver::Fourier => steady::solve_steady_state(params, delta).map_err(|e| e.to_string())?,
        Solver::TimeDomain(opts) => {
            let run = bloch::integrate_to_steady(params, delta, opts).map_err(|e| e.to_string())?;
            if !run.converged {
                return Err(format!(
                    "time-domain run not converged at delta = {delta} (|dρ/dt| = {:e})",
                    run.derivative_norm
                ));
            }
            bloch::extract_amplitudes(&run.state)
        }
    };
    SpectralPoint::from_solution(delta, &sol, params).map_err(|e: ObservableError| e.to_string())
}

pub fn sweep_delta(
    params: &SystemParams,
    grid: DeltaGrid,
    solver: Solver,
) -> Result<SpectralSeries, SweepError> {
    sweep_delta_with(params, grid, solver, SweepOptions::default())
}

pub fn sweep_delta_with(
    params: &SystemParams,
    grid: DeltaGrid,
    solver: Solver,
    opts: SweepOptions,
) -> Result<SpectralSeries, SweepError> {
    let grid = DeltaGrid::new(grid.min, grid.max, grid.n)?;
    if let Solver::TimeDomain(o) = &solver {
        o.validate()?;
    }
    let deltas = grid.points();

    let run = || -> Vec<Option<SpectralPoint>> {
        deltas
            .par_iter()
            .map(|&delta| match solve_point(params, delta, &solver) {
                Ok(p) => Some(p),
                Err(msg) => {
                    log::warn!("gap in sweep: {msg}");
                    None
                }
            })
            .collect()
    };
    let points = match opts.threads {
        None => run(),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| SweepError::ThreadPool(e.to_string()))?
            .install(run),
    };

    if points.iter().all(Option::is_none) {
        return Err(SweepError::AllPointsFailed);
    }
    Ok(SpectralSeries {
        params: *params,
        grid: deltas,
        points,
        provenance: solver.provenance(),
    })
}

/// One sweep per drive amplitude, with the probe re-derived as `0.01·V_c`.
pub fn scan_drive(
    params: &SystemParams,
    vc_values: &[f64],
    grid: DeltaGrid,
    solver: Solver,
) -> Result<Vec<SpectralSeries>, SweepError> {
    if vc_values.is_empty() {
        return Err(SweepError::EmptyScan);
    }
    if let Some(&bad) = vc_values.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
        return Err(SweepError::BadDrive(bad));
    }
    vc_values
        .iter()
        .map(|&vc| sweep_delta(&params.with_drive(vc), grid, solver))
        .collect()
}
