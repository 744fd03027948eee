//! Parameter sets for the five reference spectra and their output bundle.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Serialize;

use super::csv::write_csv;
use super::format::round_sig;
use super::run::{write_file, RunError};
use super::svg::{render_svg, Panel};
use crate::observables::{feature_report, Feature, FeatureReport, GroupVelocityParams, Regime};
use crate::params::{SystemParams, Validation};
use crate::sweep::{sweep_delta, DeltaGrid, Solver};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FigurePreset {
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Fig6,
}

impl FigurePreset {
    pub const ALL: [FigurePreset; 5] = [
        FigurePreset::Fig2,
        FigurePreset::Fig3,
        FigurePreset::Fig4,
        FigurePreset::Fig5,
        FigurePreset::Fig6,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FigurePreset::Fig2 => "fig2",
            FigurePreset::Fig3 => "fig3",
            FigurePreset::Fig4 => "fig4",
            FigurePreset::Fig5 => "fig5",
            FigurePreset::Fig6 => "fig6",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|p| p.name() == name)
    }

    /// (Zeeman splitting ω₁₋₁, drive amplitude V_c).
    pub fn splitting_and_drive(self) -> (f64, f64) {
        match self {
            FigurePreset::Fig2 => (0.0, 1.0),
            FigurePreset::Fig3 => (5.0, 1.0),
            FigurePreset::Fig4 => (5.0, 2.5),
            FigurePreset::Fig5 => (5.0, 5.0),
            FigurePreset::Fig6 => (5.0, 10.0),
        }
    }

    /// Default rates with the preset splitting and drive; `V_p = 0.01 V_c`.
    pub fn params(self) -> SystemParams {
        let (split, vc) = self.splitting_and_drive();
        let raw: BTreeMap<String, f64> = [("omega_1m1".to_string(), split), ("Vc".to_string(), vc)]
            .into_iter()
            .collect();
        SystemParams::from_map(&raw, Validation::Strict).expect("preset parameters are valid")
    }

    pub fn grid(self) -> DeltaGrid {
        DeltaGrid::figure_default()
    }
}

impl std::fmt::Display for FigurePreset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Flat JSON report; optional keys are omitted when absent.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub preset: Option<String>,
    pub delta0: f64,
    pub dispersion: f64,
    pub feature: Feature,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group_velocity_factor: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub regime: Option<Regime>,
}

impl Report {
    pub fn from_feature(preset: Option<FigurePreset>, r: &FeatureReport) -> Self {
        Report {
            preset: preset.map(|p| p.name().to_string()),
            delta0: round_sig(r.delta0),
            dispersion: round_sig(r.dispersion.value),
            feature: r.feature,
            group_velocity_factor: r.group_velocity.map(|g| round_sig(g.factor)),
            regime: r.group_velocity.map(|g| g.regime),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Sweeps the preset on its figure grid and writes
/// `<name>_spectrum.csv`, `<name>_chi.svg`, `<name>_populations.svg` and
/// `<name>_report.json` into `outdir`.
pub fn run_figure_preset(
    preset: FigurePreset,
    outdir: &Path,
    gv_omega: Option<f64>,
) -> Result<Vec<PathBuf>, RunError> {
    let gv = gv_omega
        .map(|w| GroupVelocityParams::new(w).ok_or(RunError::BadOmega(w)))
        .transpose()?;
    let series = sweep_delta(&preset.params(), preset.grid(), Solver::Fourier)?;
    let report = Report::from_feature(Some(preset), &feature_report(&series, 0.0, gv)?);

    std::fs::create_dir_all(outdir).map_err(|source| RunError::Io {
        path: outdir.to_path_buf(),
        source,
    })?;
    let name = preset.name();
    let files = [
        (format!("{name}_spectrum.csv"), write_csv(&series)),
        (format!("{name}_chi.svg"), render_svg(&series, Panel::Chi)),
        (
            format!("{name}_populations.svg"),
            render_svg(&series, Panel::Populations),
        ),
        (format!("{name}_report.json"), report.to_json()),
    ];
    let mut written = Vec::with_capacity(files.len());
    for (file, content) in files {
        let path = outdir.join(file);
        write_file(&path, &content)?;
        written.push(path);
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Reference table of splitting and drive per preset:
    /// fig2 is the degenerate case, fig3..fig6 use ω₁₀ = 2.5.
    const REFERENCE: [(&str, f64, f64); 5] = [
        ("fig2", 0.0, 1.0),
        ("fig3", 2.5, 1.0),
        ("fig4", 2.5, 2.5),
        ("fig5", 2.5, 5.0),
        ("fig6", 2.5, 10.0),
    ];

    #[test]
    fn presets_match_reference_table() {
        for (name, omega_10, vc) in REFERENCE {
            let p = FigurePreset::from_name(name).unwrap().params();
            assert_eq!(p.omega_1m1, 2.0 * omega_10, "{name}");
            assert_eq!(p.vc.re, vc, "{name}");
            assert_eq!(p.vc.im, 0.0);
            assert!((p.vp.re - 0.01 * vc).abs() < 1e-15, "{name}");
            assert_eq!(p.gamma, 1.0);
            assert_eq!(p.big_gamma0, 0.001);
            assert_eq!(p.delta_c, 0.0);
        }
        assert_eq!(FigurePreset::from_name("fig7"), None);
    }

    #[test]
    fn report_omits_absent_keys() {
        let r = Report {
            preset: None,
            delta0: 0.0,
            dispersion: -1.5,
            feature: Feature::Eia,
            group_velocity_factor: None,
            regime: None,
        };
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(keys.len(), 3);
        assert_eq!(v["feature"], "EIA");
    }
}
