//! Command implementations shared by the binary and the tests.

use std::path::{Path, PathBuf};

use serde::Serialize;
use thiserror::Error;

use super::config::{ConfigError, OutputKind, RunConfig};
use super::csv::write_csv;
use super::format::round_sig;
use super::preset::Report;
use super::svg::render_svg;
use crate::observables::{feature_report, GroupVelocityParams, ObservableError, SpectralPoint};
use crate::sweep::{self, scan_drive, sweep_delta, DeltaGrid, SweepError};

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("group-velocity prefactor must be finite and non-negative (got {0})")]
    BadOmega(f64),
    #[error(transparent)]
    Sweep(#[from] SweepError),
    #[error(transparent)]
    Observable(#[from] ObservableError),
    #[error("point solve failed: {0}")]
    Point(String),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl RunError {
    /// 1 for usage, configuration and I/O problems, 2 for numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Config(_) | RunError::BadOmega(_) | RunError::Io { .. } => 1,
            RunError::Sweep(SweepError::TooFewPoints(_))
            | RunError::Sweep(SweepError::BadRange { .. })
            | RunError::Sweep(SweepError::EmptyScan)
            | RunError::Sweep(SweepError::BadDrive(_))
            | RunError::Sweep(SweepError::Integrator(_)) => 1,
            RunError::Sweep(_) | RunError::Observable(_) | RunError::Point(_) => 2,
        }
    }
}

pub fn write_file(path: &Path, content: &str) -> Result<(), RunError> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent).map_err(|source| RunError::Io {
            path: parent.to_path_buf(),
            source,
        })?;
    }
    std::fs::write(path, content).map_err(|source| RunError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn gv_params(cfg: &RunConfig) -> Result<Option<GroupVelocityParams>, RunError> {
    cfg.gv_omega
        .map(|w| GroupVelocityParams::new(w).ok_or(RunError::BadOmega(w)))
        .transpose()
}

/// Runs the configured sweep and writes every requested output. The JSON
/// output is the line-shape report at δ = 0.
pub fn run_sweep(cfg: &RunConfig) -> Result<Vec<PathBuf>, RunError> {
    cfg.require_outputs()?;
    let gv = gv_params(cfg)?;
    let series = sweep_delta(&cfg.params, cfg.grid, cfg.solver())?;
    let mut written = Vec::new();
    for (kind, path) in &cfg.outputs {
        let content = match kind {
            OutputKind::Csv => write_csv(&series),
            OutputKind::Svg => render_svg(&series, cfg.svg_panel),
            OutputKind::Json => {
                Report::from_feature(cfg.preset, &feature_report(&series, 0.0, gv)?).to_json()
            }
        };
        write_file(path, &content)?;
        written.push(path.clone());
    }
    Ok(written)
}

#[derive(Debug, Serialize)]
struct PointOutput {
    point: SpectralPoint,
    report: Report,
}

/// Solves one detuning and returns the point plus its line-shape report
/// as JSON. Classification uses a local window of ±2 around `delta`.
pub fn run_point(cfg: &RunConfig, delta: f64) -> Result<String, RunError> {
    let gv = gv_params(cfg)?;
    let solver = cfg.solver();
    let point = sweep::solve_point(&cfg.params, delta, &solver).map_err(RunError::Point)?;
    let window = DeltaGrid::new(delta - 2.0, delta + 2.0, 201)?;
    let local = sweep_delta(&cfg.params, window, sweep::Solver::Fourier)?;
    let report = Report::from_feature(cfg.preset, &feature_report(&local, delta, gv)?);
    let point = SpectralPoint {
        delta: round_sig(point.delta),
        chi_re: round_sig(point.chi_re),
        chi_im: round_sig(point.chi_im),
        rho_ee: round_sig(point.rho_ee),
        rho_11: round_sig(point.rho_11),
        rho_00: round_sig(point.rho_00),
        rho_m1m1: round_sig(point.rho_m1m1),
    };
    let mut s = serde_json::to_string_pretty(&PointOutput { point, report }).expect("serializes");
    s.push('\n');
    Ok(s)
}

#[derive(Debug, Serialize)]
struct ScanEntry {
    vc: f64,
    #[serde(flatten)]
    report: Report,
}

/// Scans the drive amplitude; returns one report per entry as a JSON
/// array and, with `outdir`, writes `scan_vc<V>.csv` per entry.
pub fn run_scan(
    cfg: &RunConfig,
    vc_values: &[f64],
    outdir: Option<&Path>,
) -> Result<String, RunError> {
    let gv = gv_params(cfg)?;
    let all = scan_drive(&cfg.params, vc_values, cfg.grid, cfg.solver())?;
    let mut entries = Vec::with_capacity(all.len());
    for (series, &vc) in all.iter().zip(vc_values) {
        if let Some(dir) = outdir {
            write_file(&dir.join(format!("scan_vc{vc}.csv")), &write_csv(series))?;
        }
        entries.push(ScanEntry {
            vc,
            report: Report::from_feature(None, &feature_report(series, 0.0, gv)?),
        });
    }
    let mut s = serde_json::to_string_pretty(&entries).expect("serializes");
    s.push('\n');
    Ok(s)
}
