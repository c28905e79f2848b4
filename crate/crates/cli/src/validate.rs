//! Oracle comparison suites behind `qnd-phase validate`.

use std::fmt;

use qnd_phase::bath::{BathParams, KernelMethod};
use qnd_phase::phasedist::{atomic_closed_form_with_kernels, AtomicClosedForm};
use qnd_phase::states::{AtomicStateParams, Pole};
use qnd_phase::{Error, Result};

use crate::presets::{preset, OMEGA_C, PRESET_NAMES};
use crate::scenario::{evaluate, prepare_initial, InitialState, StateSelector};

pub const BATH_TIMES: [f64; 6] = [0.01, 0.05, 0.1, 0.2, 0.5, 1.0];
pub const BATH_SQUEEZE: [f64; 3] = [0.0, 1.0, 2.0];
pub const BATH_GAMMA0: f64 = 0.0025;
pub const HIGH_T: f64 = 300.0;

pub const ETA_ABS_TOL: f64 = 1e-8;
pub const GAMMA_ZERO_T_TOL: f64 = 1e-7;
pub const GAMMA_HIGH_T_REL_TOL: f64 = 0.02;
pub const STATE_TOL: f64 = 1e-10;
pub const DUALPATH_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Bath,
    States,
    Dualpath,
    All,
}

impl Suite {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "bath" => Ok(Suite::Bath),
            "states" => Ok(Suite::States),
            "dualpath" => Ok(Suite::Dualpath),
            "all" => Ok(Suite::All),
            other => Err(Error::Config(format!(
                "suite: unknown suite {other:?}; expected bath, states, dualpath or all"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub max_error: f64,
    pub tolerance: f64,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.max_error < self.tolerance
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:<9} {:<44} max_err={:.3e} tol={:.1e}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.suite,
            self.name,
            self.max_error,
            self.tolerance
        )
    }
}

/// Worst error over the bath (t, r) grid, with the time at which it occurs.
fn worst<F: Fn(f64) -> Result<f64>>(f: F) -> Result<(f64, f64)> {
    let mut out = (0.0f64, f64::NAN);
    for &t in &BATH_TIMES {
        let e = f(t)?;
        if !(e <= out.0) {
            out = (e, t);
        }
    }
    Ok(out)
}

pub fn bath_checks() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for &r in &BATH_SQUEEZE {
        let cold = BathParams::zero_temperature(BATH_GAMMA0, OMEGA_C, r, 0.0)?;
        let hot = BathParams::high_temperature(BATH_GAMMA0, OMEGA_C, HIGH_T, r, 0.0)?;

        let (e, t) = worst(|t| Ok((cold.eta_closed(t)? - cold.eta_quadrature(t)?).abs()))?;
        checks.push(Check {
            suite: "bath",
            name: format!("eta closed vs quadrature, r={r} (worst t={t})"),
            max_error: e,
            tolerance: ETA_ABS_TOL,
        });

        let (e, t) = worst(|t| {
            let (c, q) = (cold.gamma_closed(t)?, cold.gamma_quadrature(t)?);
            Ok((c - q).abs() / c.abs().max(1.0))
        })?;
        checks.push(Check {
            suite: "bath",
            name: format!("gamma T=0 closed vs quadrature, r={r} (worst t={t})"),
            max_error: e,
            tolerance: GAMMA_ZERO_T_TOL,
        });

        let (e, t) = worst(|t| {
            let (c, q) = (hot.gamma_closed(t)?, hot.gamma_quadrature(t)?);
            Ok(((c - q) / q).abs())
        })?;
        checks.push(Check {
            suite: "bath",
            name: format!("gamma T=300 relative, r={r} (worst t={t})"),
            max_error: e,
            tolerance: GAMMA_HIGH_T_REL_TOL,
        });
    }
    Ok(checks)
}

pub fn state_checks() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for name in PRESET_NAMES {
        let cfg = &preset(name)?[0];
        let mats = match prepare_initial(cfg)? {
            InitialState::Number(r) | InitialState::Atomic(r) => vec![r],
            InitialState::Sectors(e, o) => vec![e, o],
        };
        let mut herm = 0.0f64;
        let mut neg = 0.0f64;
        let total: f64 = mats.iter().map(|m| m.trace().re).sum();
        for m in &mats {
            herm = herm.max(m.hermiticity_error());
            neg = neg.max(-m.min_eigenvalue());
        }
        let trace = (total - 1.0).abs();
        let label = format!("{name} {}", cfg.state.kind_name());
        checks.push(Check {
            suite: "states",
            name: format!("{label} hermiticity"),
            max_error: herm,
            tolerance: STATE_TOL,
        });
        checks.push(Check {
            suite: "states",
            name: format!("{label} trace"),
            max_error: trace,
            tolerance: STATE_TOL,
        });
        checks.push(Check {
            suite: "states",
            name: format!("{label} negative eigenvalue"),
            max_error: neg.max(0.0),
            tolerance: STATE_TOL,
        });
    }
    Ok(checks)
}

/// Closed form matching an atomic initial state, if one exists.
pub fn closed_form_for(state: &StateSelector) -> Option<AtomicClosedForm> {
    match *state {
        StateSelector::Atomic(AtomicStateParams::Coherent { alpha, beta }) => Some(AtomicClosedForm::Coherent { alpha, beta }),
        StateSelector::Atomic(AtomicStateParams::Squeezed { theta, pole: Pole::South }) => {
            Some(AtomicClosedForm::SqueezedSouth { theta })
        }
        StateSelector::Atomic(AtomicStateParams::Squeezed { theta, pole: Pole::North }) => {
            Some(AtomicClosedForm::SqueezedNorth { theta })
        }
        _ => None,
    }
}

pub fn dualpath_checks() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for name in ["fig6", "fig7", "fig8"] {
        let mut max_err = 0.0f64;
        for cfg in preset(name)? {
            let variant = closed_form_for(&cfg.state).ok_or_else(|| Error::Config(format!("{name}: no closed form")))?;
            let initial = prepare_initial(&cfg)?;
            for &t in &cfg.times {
                let general = evaluate(&cfg, &initial, t)?;
                let kernels = cfg.bath.kernels(t, KernelMethod::Closed)?;
                let closed = atomic_closed_form_with_kernels(variant, &cfg.system, kernels, t, cfg.grid)?;
                max_err = max_err.max(general.distribution.sup_distance(&closed)?);
            }
        }
        checks.push(Check {
            suite: "dualpath",
            name: format!("{name} general vs closed form"),
            max_error: max_err,
            tolerance: DUALPATH_TOL,
        });
    }
    Ok(checks)
}

pub fn run_suite(suite: Suite) -> Result<Vec<Check>> {
    Ok(match suite {
        Suite::Bath => bath_checks()?,
        Suite::States => state_checks()?,
        Suite::Dualpath => dualpath_checks()?,
        Suite::All => {
            let mut all = bath_checks()?;
            all.extend(state_checks()?);
            all.extend(dualpath_checks()?);
            all
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names() {
        assert_eq!(Suite::parse("all").unwrap(), Suite::All);
        assert!(Suite::parse("nope").is_err());
    }

    #[test]
    fn dualpath_suite_passes() {
        for c in dualpath_checks().unwrap() {
            assert!(c.passed(), "{c}");
        }
    }

    #[test]
    fn states_suite_passes() {
        for c in state_checks().unwrap() {
            assert!(c.passed(), "{c}");
        }
    }
}
