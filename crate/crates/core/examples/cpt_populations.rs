//! Population trapping in the outer ground sublevels.
//!
//! With no field the drive pumps everything into the dark superposition of
//! M = ±1. A splitting detunes the two Λ legs and population moves between
//! the sublevels as the probe crosses each Raman resonance.

use obe_zeeman::observables::cpt_metrics;
use obe_zeeman::params::SystemParams;
use obe_zeeman::steady::solve_steady_state;

fn main() {
    for (split, vc) in [(0.0, 1.0), (5.0, 1.0), (5.0, 5.0)] {
        let params = SystemParams {
            omega_1m1: split,
            ..SystemParams::default()
        }
        .with_drive(vc);
        println!("omega_1m1 = {split}, Vc = {vc}");
        println!(
            "  {:>6} {:>8} {:>8} {:>8} {:>8} {:>10}",
            "delta", "rho_11", "rho_-1-1", "rho_00", "rho_ee", "trap"
        );
        for delta in [-7.5, -5.0, -2.5, 0.0, 2.5, 5.0, 7.5] {
            let m = cpt_metrics(&solve_steady_state(&params, delta).unwrap());
            println!(
                "  {delta:6.1} {:8.4} {:8.4} {:8.4} {:8.4} {:10.2e}",
                m.rho_11, m.rho_m1m1, m.rho_00, m.rho_ee, m.trap_ratio
            );
        }
    }
}
