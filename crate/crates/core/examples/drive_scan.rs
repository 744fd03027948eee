//! How the line-center feature changes with drive strength.

use obe_zeeman::observables::{classify_feature, dispersion_at, ClassifyOptions, DEFAULT_STEP};
use obe_zeeman::params::SystemParams;
use obe_zeeman::sweep::{scan_drive, DeltaGrid, Solver};

fn main() {
    let drives: Vec<f64> = (1..=20).map(|k| 0.5 * k as f64).collect();
    let base = SystemParams::default();
    let grid = DeltaGrid::new(-4.0, 4.0, 401).unwrap();
    let all = scan_drive(&base, &drives, grid, Solver::Fourier).unwrap();

    println!(
        "{:>5} {:>9} {:>10} {:>10}",
        "Vc", "feature", "Im chi(0)", "D(0)"
    );
    for (vc, series) in drives.iter().zip(&all) {
        let feature = classify_feature(series, 0.0, &ClassifyOptions::default()).unwrap();
        let center = series.points[series.nearest_index(0.0).unwrap()].unwrap();
        let d = dispersion_at(&series.params, 0.0, DEFAULT_STEP).unwrap();
        println!(
            "{vc:5.1} {:>9} {:10.5} {:10.5}",
            feature.to_string(),
            center.chi_im,
            d.value
        );
    }
}
