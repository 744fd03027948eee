//! Integrates the Bloch equations to their fixed point and compares with
//! the direct steady-state solve.

use std::time::Instant;

use obe_zeeman::bloch::{extract_amplitudes, integrate_to_steady, IntegratorOptions};
use obe_zeeman::params::SystemParams;
use obe_zeeman::steady::solve_steady_state;

fn main() {
    let params = SystemParams::default().with_drive(5.0);
    let delta = 2.5;

    let t0 = Instant::now();
    let run = integrate_to_steady(&params, delta, &IntegratorOptions::default()).unwrap();
    println!(
        "converged = {} at t = {} ({} RK4 steps, {:?}), |drho/dt| = {:.1e}, trace drift = {:.1e}",
        run.converged,
        run.time,
        run.steps,
        t0.elapsed(),
        run.derivative_norm,
        run.max_trace_drift
    );

    let td = extract_amplitudes(&run.state);
    let fourier = solve_steady_state(&params, delta).unwrap();
    println!(
        "{:<12} {:>16} {:>16} {:>10}",
        "component", "fourier", "time domain", "rel err"
    );
    for ((label, a), (_, b)) in fourier.components().into_iter().zip(td.components()) {
        let rel = if a == 0.0 {
            0.0
        } else {
            (a - b).abs() / a.abs()
        };
        println!("{label:<12} {a:16.9e} {b:16.9e} {rel:10.1e}");
    }
}
