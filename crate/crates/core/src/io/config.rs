//! `key = value` run configuration.
//!
//! Lines are trimmed; `#` starts a comment. Flags given on the command line
//! are applied after the file and always win. A figure preset, if named,
//! replaces the physical parameters and the detuning grid.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;

use thiserror::Error;

use super::preset::FigurePreset;
use super::svg::Panel;
use crate::bloch::IntegratorOptions;
use crate::params::{ParamError, SystemParams, Validation};
use crate::sweep::{DeltaGrid, Solver};

/// Where a setting came from, for error messages.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Origin {
    Line(usize),
    Flag,
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Origin::Line(n) => write!(f, "line {n}"),
            Origin::Flag => f.write_str("command-line flag"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConfigError {
    #[error("{origin}: expected `key = value`")]
    Malformed { origin: Origin },
    #[error("{origin}: unknown key `{key}`")]
    UnknownKey { origin: Origin, key: String },
    #[error("{origin}: invalid value `{value}` for `{key}`")]
    BadValue {
        origin: Origin,
        key: String,
        value: String,
    },
    #[error(transparent)]
    Params(#[from] ParamError),
    #[error("no output requested (set out_csv, out_svg or out_json)")]
    NoOutputs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolverKind {
    Fourier,
    TimeDomain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputKind {
    Csv,
    Json,
    Svg,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub params: SystemParams,
    pub grid: DeltaGrid,
    pub solver: SolverKind,
    pub integrator: IntegratorOptions,
    pub outputs: Vec<(OutputKind, PathBuf)>,
    pub svg_panel: Panel,
    pub preset: Option<FigurePreset>,
    pub gv_omega: Option<f64>,
    pub strict: bool,
}

impl RunConfig {
    pub fn solver(&self) -> Solver {
        match self.solver {
            SolverKind::Fourier => Solver::Fourier,
            SolverKind::TimeDomain => Solver::TimeDomain(self.integrator),
        }
    }

    pub fn require_outputs(&self) -> Result<(), ConfigError> {
        if self.outputs.is_empty() {
            Err(ConfigError::NoOutputs)
        } else {
            Ok(())
        }
    }
}

/// Config keys that map onto [`SystemParams::from_map`] names.
const PARAM_KEYS: [(&str, &str); 8] = [
    ("gamma", "gamma"),
    ("Gamma", "Gamma"),
    ("Gamma0", "Gamma0"),
    ("gamma0", "gamma0"),
    ("vc", "Vc"),
    ("vp", "Vp"),
    ("omega_1m1", "omega_1m1"),
    ("delta_c", "Delta_c"),
];

const OTHER_KEYS: [&str; 11] = [
    "sweep",
    "solver",
    "preset",
    "gv_omega",
    "out_csv",
    "out_svg",
    "out_json",
    "svg_panel",
    "strict",
    "dt",
    "t_max",
];
const TOL_KEY: &str = "convergence_tol";

fn known(key: &str) -> bool {
    PARAM_KEYS.iter().any(|(k, _)| *k == key) || OTHER_KEYS.contains(&key) || key == TOL_KEY
}

/// Splits config text into `(origin, key, value)` entries.
fn entries(text: &str) -> Result<Vec<(Origin, String, String)>, ConfigError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let origin = Origin::Line(i + 1);
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or(ConfigError::Malformed { origin })?;
        let key = key.trim();
        if key.is_empty() {
            return Err(ConfigError::Malformed { origin });
        }
        out.push((origin, key.to_string(), value.trim().to_string()));
    }
    Ok(out)
}

pub fn parse_grid(text: &str) -> Option<DeltaGrid> {
    let parts: Vec<&str> = text.split(':').map(str::trim).collect();
    if parts.len() != 3 {
        return None;
    }
    let min = parts[0].parse().ok()?;
    let max = parts[1].parse().ok()?;
    let n = parts[2].parse().ok()?;
    DeltaGrid::new(min, max, n).ok()
}

/// Parses config text and applies `overrides` (key, value) on top.
pub fn parse_config(text: &str, overrides: &[(String, String)]) -> Result<RunConfig, ConfigError> {
    let mut all = entries(text)?;
    all.extend(
        overrides
            .iter()
            .map(|(k, v)| (Origin::Flag, k.clone(), v.clone())),
    );

    // last write wins; flags come last
    let mut settings: BTreeMap<String, (Origin, String)> = BTreeMap::new();
    for (origin, key, value) in all {
        if !known(&key) {
            return Err(ConfigError::UnknownKey { origin, key });
        }
        settings.insert(key, (origin, value));
    }

    let bad = |key: &str| {
        let (origin, value) = settings[key].clone();
        ConfigError::BadValue {
            origin,
            key: key.to_string(),
            value,
        }
    };
    let real = |key: &str| -> Result<Option<f64>, ConfigError> {
        match settings.get(key) {
            None => Ok(None),
            Some((_, v)) => v
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .map(Some)
                .ok_or_else(|| bad(key)),
        }
    };
    let word = |key: &str| settings.get(key).map(|(_, v)| v.as_str());

    let strict = match word("strict") {
        None => false,
        Some("true") => true,
        Some("false") => false,
        Some(_) => return Err(bad("strict")),
    };
    let preset = match word("preset") {
        None => None,
        Some(name) => Some(FigurePreset::from_name(name).ok_or_else(|| bad("preset"))?),
    };

    let mut raw = BTreeMap::new();
    for (key, name) in PARAM_KEYS {
        if let Some(v) = real(key)? {
            raw.insert(name.to_string(), v);
        }
    }
    let mode = if strict {
        Validation::Strict
    } else {
        Validation::Lenient
    };

    let grid = match word("sweep") {
        None => DeltaGrid::figure_default(),
        Some(s) => parse_grid(s).ok_or_else(|| bad("sweep"))?,
    };
    let solver = match word("solver") {
        None | Some("fourier") => SolverKind::Fourier,
        Some("timedomain") => SolverKind::TimeDomain,
        Some(_) => return Err(bad("solver")),
    };
    let svg_panel = match word("svg_panel") {
        None | Some("chi") => Panel::Chi,
        Some("populations") => Panel::Populations,
        Some(_) => return Err(bad("svg_panel")),
    };

    let mut integrator = IntegratorOptions::default();
    for (key, slot) in [
        ("dt", &mut integrator.dt),
        ("t_max", &mut integrator.t_max),
        (TOL_KEY, &mut integrator.convergence_tol),
    ] {
        if let Some(v) = real(key)? {
            if v <= 0.0 {
                return Err(bad(key));
            }
            *slot = v;
        }
    }

    let gv_omega = match real("gv_omega")? {
        Some(v) if v < 0.0 => return Err(bad("gv_omega")),
        other => other,
    };

    let mut outputs = Vec::new();
    for (key, kind) in [
        ("out_csv", OutputKind::Csv),
        ("out_svg", OutputKind::Svg),
        ("out_json", OutputKind::Json),
    ] {
        if let Some(path) = word(key) {
            if path.is_empty() {
                return Err(bad(key));
            }
            outputs.push((kind, PathBuf::from(path)));
        }
    }

    let (params, grid) = match preset {
        Some(p) => (p.params(), p.grid()),
        None => (SystemParams::from_map(&raw, mode)?, grid),
    };

    Ok(RunConfig {
        params,
        grid,
        solver,
        integrator,
        outputs,
        svg_panel,
        preset,
        gv_omega,
        strict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn flags(pairs: &[(&str, &str)]) -> Vec<(String, String)> {
        pairs
            .iter()
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect()
    }

    #[test]
    fn figure4_inputs() {
        let cfg = parse_config("vc=2.5\nomega_1m1=5.0\nsweep=-10:10:1001", &[]).unwrap();
        assert_eq!(cfg.params, FigurePreset::Fig4.params());
        assert_eq!(cfg.grid, DeltaGrid::figure_default());
        assert_eq!(cfg.solver, SolverKind::Fourier);
        assert!(matches!(cfg.require_outputs(), Err(ConfigError::NoOutputs)));
    }

    #[test]
    fn preset_from_flag() {
        let cfg = parse_config("", &flags(&[("preset", "fig2")])).unwrap();
        assert_eq!(cfg.preset, Some(FigurePreset::Fig2));
        assert_eq!(cfg.params.omega_1m1, 0.0);
        assert_eq!(cfg.params.vc.re, 1.0);
        assert!((cfg.params.vp.re - 0.01).abs() < 1e-15);
    }

    #[test]
    fn preset_overrides_parameters() {
        let cfg = parse_config("vc = 7\npreset = fig5\n", &[]).unwrap();
        assert_eq!(cfg.params, FigurePreset::Fig5.params());
    }

    #[test]
    fn bad_value_names_key_and_line() {
        let err = parse_config("vc=abc", &[]).unwrap_err();
        assert_eq!(
            err,
            ConfigError::BadValue {
                origin: Origin::Line(1),
                key: "vc".into(),
                value: "abc".into()
            }
        );
        let msg = err.to_string();
        assert!(msg.contains("line 1") && msg.contains("vc"), "{msg}");
    }

    #[test]
    fn malformed_and_unknown() {
        assert_eq!(
            parse_config("# header\n\nvc 2.5\n", &[]),
            Err(ConfigError::Malformed {
                origin: Origin::Line(3)
            })
        );
        assert_eq!(
            parse_config("vc=1\nbfield=3\n", &[]),
            Err(ConfigError::UnknownKey {
                origin: Origin::Line(2),
                key: "bfield".into()
            })
        );
        assert!(matches!(
            parse_config("", &flags(&[("colour", "red")])),
            Err(ConfigError::UnknownKey {
                origin: Origin::Flag,
                ..
            })
        ));
    }

    #[test]
    fn flags_take_precedence() {
        let text = "vc = 2.5  # drive\nsolver = timedomain\nout_csv = a.csv\n";
        let cfg = parse_config(text, &flags(&[("vc", "5"), ("out_csv", "b.csv")])).unwrap();
        assert_eq!(cfg.params.vc.re, 5.0);
        assert!((cfg.params.vp.re - 0.05).abs() < 1e-15);
        assert_eq!(cfg.solver, SolverKind::TimeDomain);
        assert_eq!(cfg.outputs, vec![(OutputKind::Csv, PathBuf::from("b.csv"))]);
    }

    #[test]
    fn parameter_errors_surface() {
        assert!(matches!(
            parse_config("Gamma0 = -1", &[]),
            Err(ConfigError::Params(ParamError::Negative {
                key: "Gamma0",
                ..
            }))
        ));
        assert!(matches!(
            parse_config("strict = true\nvc = 1\nvp = 0.5", &[]),
            Err(ConfigError::Params(ParamError::ProbeTooStrong { .. }))
        ));
        assert!(matches!(
            parse_config("sweep = 1:0:10", &[]),
            Err(ConfigError::BadValue { .. })
        ));
    }
}
