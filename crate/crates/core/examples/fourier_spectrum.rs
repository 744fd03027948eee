//! Probe absorption and refraction across the detuning range.
//!
//! cargo run --release --example fourier_spectrum -- [Vc] [omega_1m1]

use obe_zeeman::params::SystemParams;
use obe_zeeman::sweep::{sweep_delta, DeltaGrid, Solver};

fn main() {
    let mut args = std::env::args()
        .skip(1)
        .map(|a| a.parse::<f64>().expect("number"));
    let vc = args.next().unwrap_or(2.5);
    let split = args.next().unwrap_or(5.0);
    let params = SystemParams {
        omega_1m1: split,
        ..SystemParams::default()
    }
    .with_drive(vc);

    let series = sweep_delta(
        &params,
        DeltaGrid::new(-10.0, 10.0, 41).unwrap(),
        Solver::Fourier,
    )
    .unwrap();
    println!(
        "{:>7} {:>11} {:>11} {:>9}",
        "delta", "Re chi", "Im chi", "rho_11"
    );
    for p in series.solved() {
        let bar = "#".repeat((p.chi_im.max(0.0) * 40.0).round() as usize);
        println!(
            "{:7.2} {:11.5} {:11.5} {:9.4}  {bar}",
            p.delta, p.chi_re, p.chi_im, p.rho_11
        );
    }
}
