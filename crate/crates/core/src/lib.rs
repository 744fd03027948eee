//! Optical Bloch equations for an F_g=1 → F_e=0 Zeeman manifold driven by
//! a π-polarized field and probed by σ± light.
//!
//! Two independent routes compute the steady state:
//!
//! - [`steady`] assembles the closed set of Fourier-amplitude balance
//!   equations into a 15x15 real linear system and solves it with
//!   [`linsolve`].
//! - [`bloch`] integrates the full density-matrix equations in the
//!   co-rotating frame until the derivative vanishes.
//!
//! [`observables`] turns amplitudes into the probe susceptibility proxy,
//! dispersion, group-velocity factor and line-shape labels; [`sweep`] runs
//! detuning grids and drive scans; [`io`] handles configuration, CSV, SVG
//! and the figure presets used by the `obe-zeeman` binary.
//!
//! All quantities are in units of the optical coherence decay rate γ.
//!
//! ```
//! use obe_zeeman::{observables, params::SystemParams, steady};
//!
//! let params = SystemParams::default().with_drive(2.5);
//! let sol = steady::solve_steady_state(&params, 0.0).unwrap();
//! let chi = observables::susceptibility_proxy(&sol, &params).unwrap();
//! assert!(chi.im > 0.0);
//! ```

pub mod bloch;
pub mod io;
pub mod linsolve;
pub mod observables;
pub mod params;
pub mod state;
pub mod steady;
pub mod sweep;

pub use params::{DetuningSet, SystemParams, Validation};
pub use state::{FourierSolution, RotatingState};
