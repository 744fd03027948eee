//! Physical parameters and level bookkeeping for the F_g=1 / F_e=0 system.
//!
//! Everything is dimensionless: the optical coherence decay rate `gamma` is
//! the unit for every rate, Rabi amplitude, splitting and detuning.
//!
//! Ground sublevels are placed symmetrically about zero,
//! `ω₊₁ = +ω₁₋₁/2`, `ω₀ = 0`, `ω₋₁ = −ω₁₋₁/2`.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Relative tolerance for the decay-rate consistency relations in strict mode.
pub const STRICT_RATE_TOL: f64 = 1e-12;

/// Largest probe/drive amplitude ratio accepted in strict mode.
pub const STRICT_PROBE_RATIO: f64 = 0.1;

/// Probe amplitude used when only the drive is given.
pub const DEFAULT_PROBE_RATIO: f64 = 0.01;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParamError {
    #[error("parameter `{key}` must be non-negative (got {value})")]
    Negative { key: &'static str, value: f64 },
    #[error("parameter `{key}` must be strictly positive (got {value})")]
    NonPositive { key: &'static str, value: f64 },
    #[error("parameter `{key}` is not finite")]
    NotFinite { key: String },
    #[error("unknown parameter `{0}`")]
    UnknownKey(String),
    #[error("probe amplitude |Vp| = {vp} exceeds {ratio}·|Vc| = {limit} (strict mode)")]
    ProbeTooStrong { vp: f64, ratio: f64, limit: f64 },
    #[error("strict mode: {relation} violated (lhs {lhs}, rhs {rhs})")]
    Inconsistent {
        relation: &'static str,
        lhs: f64,
        rhs: f64,
    },
}

/// How strictly [`SystemParams::from_map`] checks the physical relations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Validation {
    /// Sign checks are errors; consistency relations only log a warning.
    #[default]
    Lenient,
    /// Consistency relations and the weak-probe bound are errors as well.
    Strict,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SystemParams {
    /// Optical coherence decay rate γ.
    pub gamma: f64,
    /// Spontaneous decay rate Γ into each ground sublevel.
    pub big_gamma: f64,
    /// Population exchange rate Γ₀ between any two ground sublevels.
    pub big_gamma0: f64,
    /// Ground-state coherence decay rate γ₀.
    pub gamma0: f64,
    /// Drive half-Rabi amplitude on the π transition.
    pub vc: Complex64,
    /// Probe half-Rabi amplitude on both σ transitions.
    pub vp: Complex64,
    /// Zeeman splitting ω₁₋₁ between M=+1 and M=−1 (signed).
    pub omega_1m1: f64,
    /// Drive detuning ω_c − ω_e0.
    pub delta_c: f64,
}

/// Keys accepted by [`SystemParams::from_map`], in canonical order.
pub const PARAM_KEYS: [&str; 8] = [
    "gamma",
    "Gamma",
    "Gamma0",
    "gamma0",
    "Vc",
    "Vp",
    "omega_1m1",
    "Delta_c",
];

impl Default for SystemParams {
    fn default() -> Self {
        Self::from_map(&BTreeMap::new(), Validation::Lenient).expect("defaults are valid")
    }
}

impl SystemParams {
    /// Builds a parameter set from named scalars, filling in the reference
    /// defaults for anything missing.
    ///
    /// Defaults: `gamma = 1`, `Gamma0 = 0.001·gamma`,
    /// `Gamma = 2(gamma − Gamma0)/3`, `gamma0 = 2·Gamma0`, `omega_1m1 = 5`,
    /// `Delta_c = 0`, `Vc = 1`, `Vp = 0.01·Vc`. Dependent defaults are
    /// computed from whatever values were supplied.
    pub fn from_map(raw: &BTreeMap<String, f64>, mode: Validation) -> Result<Self, ParamError> {
        for (key, value) in raw {
            if !PARAM_KEYS.contains(&key.as_str()) {
                return Err(ParamError::UnknownKey(key.clone()));
            }
            if !value.is_finite() {
                return Err(ParamError::NotFinite { key: key.clone() });
            }
        }
        let get = |k: &str| raw.get(k).copied();

        let gamma = get("gamma").unwrap_or(1.0);
        let big_gamma0 = get("Gamma0").unwrap_or(0.001 * gamma);
        let big_gamma = get("Gamma").unwrap_or(2.0 * (gamma - big_gamma0) / 3.0);
        let gamma0 = get("gamma0").unwrap_or(2.0 * big_gamma0);
        let vc = get("Vc").unwrap_or(1.0);
        let vp = get("Vp").unwrap_or(DEFAULT_PROBE_RATIO * vc);

        let params = SystemParams {
            gamma,
            big_gamma,
            big_gamma0,
            gamma0,
            vc: Complex64::new(vc, 0.0),
            vp: Complex64::new(vp, 0.0),
            omega_1m1: get("omega_1m1").unwrap_or(5.0),
            delta_c: get("Delta_c").unwrap_or(0.0),
        };
        params.validate(mode)?;
        Ok(params)
    }

    /// Inverse of [`from_map`](Self::from_map) for real-valued amplitudes.
    ///
    /// The imaginary parts of `vc`/`vp` are dropped, so the round trip is
    /// only the identity when both are real.
    pub fn to_map(&self) -> BTreeMap<String, f64> {
        let values = [
            self.gamma,
            self.big_gamma,
            self.big_gamma0,
            self.gamma0,
            self.vc.re,
            self.vp.re,
            self.omega_1m1,
            self.delta_c,
        ];
        PARAM_KEYS
            .iter()
            .zip(values)
            .map(|(k, v)| (k.to_string(), v))
            .collect()
    }

    pub fn validate(&self, mode: Validation) -> Result<(), ParamError> {
        let finite = [
            ("gamma", self.gamma),
            ("Gamma", self.big_gamma),
            ("Gamma0", self.big_gamma0),
            ("gamma0", self.gamma0),
            ("Vc", self.vc.norm()),
            ("Vp", self.vp.norm()),
            ("omega_1m1", self.omega_1m1),
            ("Delta_c", self.delta_c),
        ];
        for (key, v) in finite {
            if !v.is_finite() {
                return Err(ParamError::NotFinite { key: key.into() });
            }
        }
        if self.gamma <= 0.0 {
            return Err(ParamError::NonPositive {
                key: "gamma",
                value: self.gamma,
            });
        }
        for (key, value) in [
            ("Gamma", self.big_gamma),
            ("Gamma0", self.big_gamma0),
            ("gamma0", self.gamma0),
        ] {
            if value < 0.0 {
                return Err(ParamError::Negative { key, value });
            }
        }

        let checks = [
            (
                "gamma = (3 Gamma + 2 Gamma0)/2",
                self.gamma,
                (3.0 * self.big_gamma + 2.0 * self.big_gamma0) / 2.0,
            ),
            ("gamma0 = 2 Gamma0", self.gamma0, 2.0 * self.big_gamma0),
        ];
        for (relation, lhs, rhs) in checks {
            let scale = lhs.abs().max(rhs.abs()).max(f64::MIN_POSITIVE);
            if (lhs - rhs).abs() > STRICT_RATE_TOL * scale {
                match mode {
                    Validation::Strict => {
                        return Err(ParamError::Inconsistent { relation, lhs, rhs })
                    }
                    Validation::Lenient => {
                        log::warn!("decay rates do not satisfy {relation}: {lhs} vs {rhs}")
                    }
                }
            }
        }

        let limit = STRICT_PROBE_RATIO * self.vc.norm();
        if mode == Validation::Strict && self.vp.norm() > limit {
            return Err(ParamError::ProbeTooStrong {
                vp: self.vp.norm(),
                ratio: STRICT_PROBE_RATIO,
                limit,
            });
        }
        Ok(())
    }

    /// Same parameters with the drive set to `vc` and the probe re-derived as
    /// `0.01·vc`.
    pub fn with_drive(&self, vc: f64) -> Self {
        SystemParams {
            vc: Complex64::new(vc, 0.0),
            vp: Complex64::new(DEFAULT_PROBE_RATIO * vc, 0.0),
            ..*self
        }
    }

    /// Total spontaneous decay rate out of the excited state.
    pub fn excited_decay(&self) -> f64 {
        3.0 * self.big_gamma
    }

    pub fn detunings(&self, delta: f64) -> DetuningSet {
        DetuningSet::new(self, delta)
    }
}

/// Every detuning entering the steady-state equations at a given
/// pump–probe detuning `delta = ω_p − ω_c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetuningSet {
    pub delta: f64,
    /// ω_c − ω_e0
    pub d_e0: f64,
    /// ω_p − ω_e,−1
    pub d_em1: f64,
    /// ω_p − ω_e,+1
    pub d_e1: f64,
    /// ω_c − ω_p − ω_10
    pub d_10: f64,
    /// ω_c − ω_p − ω_−1,0
    pub d_m10: f64,
    /// ω_−1,1 = −ω₁₋₁
    pub w_m11: f64,
}

impl DetuningSet {
    pub fn new(params: &SystemParams, delta: f64) -> Self {
        let half = 0.5 * params.omega_1m1;
        DetuningSet {
            delta,
            d_e0: params.delta_c,
            d_em1: params.delta_c + delta - half,
            d_e1: params.delta_c + delta + half,
            d_10: -delta - half,
            d_m10: -delta + half,
            w_m11: -params.omega_1m1,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn map(pairs: &[(&str, f64)]) -> BTreeMap<String, f64> {
        pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    #[test]
    fn defaults_follow_reference_set() {
        let p = SystemParams::default();
        assert_eq!(p.gamma, 1.0);
        assert_eq!(p.big_gamma0, 0.001);
        assert!((p.big_gamma - 0.666).abs() < 1e-12);
        assert!((p.gamma0 - 0.002).abs() < 1e-15);
        assert_eq!(p.omega_1m1, 5.0);
        assert_eq!(p.delta_c, 0.0);
        assert_eq!(p.vc, Complex64::new(1.0, 0.0));
        assert!((p.vp.re - 0.01).abs() < 1e-15);
        assert!((p.gamma0 / p.big_gamma0 - 2.0).abs() < 1e-12);
        assert!((3.0 * p.big_gamma + 2.0 * p.big_gamma0 - 2.0 * p.gamma).abs() < 1e-12);
        p.validate(Validation::Strict).unwrap();
    }

    #[test]
    fn probe_follows_drive() {
        let p = SystemParams::from_map(&map(&[("Vc", 2.5)]), Validation::Strict).unwrap();
        assert!((p.vp.re - 0.025).abs() < 1e-15);
    }

    #[test]
    fn negative_rate_names_key() {
        let err =
            SystemParams::from_map(&map(&[("Gamma0", -1.0)]), Validation::Lenient).unwrap_err();
        assert!(matches!(err, ParamError::Negative { key: "Gamma0", .. }));
        assert!(err.to_string().contains("Gamma0"));
    }

    #[test]
    fn strict_mode_rejects_strong_probe_and_bad_rates() {
        let strong = map(&[("Vc", 1.0), ("Vp", 0.2)]);
        assert!(SystemParams::from_map(&strong, Validation::Lenient).is_ok());
        assert!(matches!(
            SystemParams::from_map(&strong, Validation::Strict),
            Err(ParamError::ProbeTooStrong { .. })
        ));

        let off = map(&[("gamma0", 0.01)]);
        assert!(SystemParams::from_map(&off, Validation::Lenient).is_ok());
        assert!(matches!(
            SystemParams::from_map(&off, Validation::Strict),
            Err(ParamError::Inconsistent { .. })
        ));
    }

    #[test]
    fn unknown_key_rejected() {
        let err = SystemParams::from_map(&map(&[("B", 1.0)]), Validation::Lenient).unwrap_err();
        assert_eq!(err, ParamError::UnknownKey("B".into()));
    }

    #[test]
    fn detunings_at_line_center() {
        let p = SystemParams::default();
        let d = p.detunings(0.0);
        assert_eq!(d.d_e1, 2.5);
        assert_eq!(d.d_em1, -2.5);
        assert_eq!(d.d_10, -2.5);
        assert_eq!(d.d_m10, 2.5);
        assert_eq!(d.w_m11, -5.0);

        let shifted = p.detunings(5.0);
        assert_eq!(shifted.d_e1, 7.5);
        assert_eq!(shifted.d_em1, 2.5);
        assert_eq!(shifted.d_10, -7.5);
        assert_eq!(shifted.d_m10, -2.5);

        let degenerate = SystemParams {
            omega_1m1: 0.0,
            ..p
        }
        .detunings(0.0);
        for v in [
            degenerate.d_e0,
            degenerate.d_e1,
            degenerate.d_em1,
            degenerate.d_10,
            degenerate.d_m10,
            degenerate.w_m11,
        ] {
            assert_eq!(v, 0.0);
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn detuning_identities(split in -20.0..20.0f64, dc in -5.0..5.0f64, delta in -20.0..20.0f64) {
                let p = SystemParams { omega_1m1: split, delta_c: dc, ..SystemParams::default() };
                let d = p.detunings(delta);
                // sublevel energies ω_±1 = ±split/2, ω_0 = 0, ω_e = −dc relative to ω_c
                let (w1, wm1) = (0.5 * split, -0.5 * split);
                prop_assert_eq!(d.d_e1, dc + delta + w1);
                prop_assert_eq!(d.d_em1, dc + delta + wm1);
                prop_assert_eq!(d.d_10, -delta - w1);
                prop_assert_eq!(d.d_m10, -delta - wm1);
                prop_assert_eq!(d.w_m11, wm1 - w1);
            }

            #[test]
            fn from_map_is_idempotent(
                gamma in 0.1..5.0f64,
                g0 in 0.0..0.1f64,
                vc in 0.01..20.0f64,
                split in -10.0..10.0f64,
                dc in -3.0..3.0f64,
            ) {
                let raw = map(&[("gamma", gamma), ("Gamma0", g0), ("Vc", vc), ("omega_1m1", split), ("Delta_c", dc)]);
                let first = SystemParams::from_map(&raw, Validation::Lenient).unwrap();
                let second = SystemParams::from_map(&first.to_map(), Validation::Lenient).unwrap();
                prop_assert_eq!(first, second);
            }
        }
    }
}
