//! Writes the CSV, SVG and JSON bundle for every reference parameter set.
//!
//! cargo run --release --example figure_presets -- [outdir]

use std::path::PathBuf;

use obe_zeeman::io::preset::{run_figure_preset, FigurePreset};

fn main() {
    let outdir = std::env::args().nth(1).map_or_else(
        || std::env::temp_dir().join("obe-zeeman-figures"),
        PathBuf::from,
    );
    for preset in FigurePreset::ALL {
        for path in run_figure_preset(preset, &outdir, Some(100.0)).unwrap() {
            println!("{}", path.display());
        }
    }
}
