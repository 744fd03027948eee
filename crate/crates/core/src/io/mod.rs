//! Text formats and the command orchestration behind the `obe-zeeman` binary.

pub mod config;
pub mod csv;
pub mod format;
pub mod preset;
pub mod run;
pub mod svg;

pub use config::{parse_config, ConfigError, OutputKind, RunConfig, SolverKind};
pub use csv::{parse_csv, write_csv, CsvRow};
pub use preset::{run_figure_preset, FigurePreset, Report};
pub use run::RunError;
pub use svg::{render_svg, Panel};
