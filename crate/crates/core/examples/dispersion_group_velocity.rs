//! Line-center dispersion and the resulting group-velocity regime for the
//! five reference parameter sets.

use obe_zeeman::io::preset::FigurePreset;
use obe_zeeman::observables::{feature_report, GroupVelocityParams};
use obe_zeeman::sweep::{sweep_delta, Solver};

fn main() {
    let omega = std::env::args()
        .nth(1)
        .map_or(100.0, |a| a.parse().expect("number"));
    let gv = GroupVelocityParams::new(omega).expect("non-negative prefactor");
    println!(
        "{:<6} {:>8} {:>12} {:>10} {:>13}",
        "preset", "feature", "D(0)", "c/V_g", "regime"
    );
    for preset in FigurePreset::ALL {
        let series = sweep_delta(&preset.params(), preset.grid(), Solver::Fourier).unwrap();
        let r = feature_report(&series, 0.0, Some(gv)).unwrap();
        let g = r.group_velocity.unwrap();
        println!(
            "{:<6} {:>8} {:>12.6} {:>10.3} {:>13?}",
            preset.name(),
            r.feature.to_string(),
            r.dispersion.value,
            g.factor,
            g.regime
        );
    }
}
