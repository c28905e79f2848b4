//! Figure presets. Every preset uses ω = 1, ω_c = 100, |α|² = 5, θ₀ = 0 and a = 0.

use std::f64::consts::FRAC_PI_4;

use qnd_phase::bath::{BathParams, KernelMethod};
use qnd_phase::phasedist::DEFAULT_GRID;
use qnd_phase::states::{AtomicStateParams, CoherentParams, KerrParams, Pole, SqueezeParams};
use qnd_phase::systems::SystemSpec;
use qnd_phase::{Error, Result};

use crate::scenario::{PhaseSum, ScenarioConfig, StateSelector};

pub const PRESET_NAMES: [&str; 8] = ["fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8"];

pub const OMEGA: f64 = 1.0;
pub const OMEGA_C: f64 = 100.0;
pub const ALPHA_SQ: f64 = 5.0;
pub const THETA0: f64 = 0.0;
pub const BATH_A: f64 = 0.0;

/// Coupling of Figs. 1–4.
pub const GAMMA0_OSCILLATOR: f64 = 0.0025;
/// Coupling of Figs. 5–8.
pub const GAMMA0_STRONG: f64 = 0.025;
pub const KERR: f64 = 0.02;
pub const FIG2_R1: f64 = 0.5;
pub const FIG2_PSI: f64 = FRAC_PI_4;
pub const FIG5_R1: f64 = 0.4;
pub const FIG5_PHI: f64 = 0.0;
pub const ATOM_ANGLE: f64 = FRAC_PI_4;
pub const ATOM_THETA: f64 = -0.5494;

/// Time used for unitary curves whose caption gives none.
pub const UNITARY_TIME: f64 = 0.1;

fn bath(gamma0: f64, temperature: f64, r: f64) -> Result<BathParams> {
    if temperature == 0.0 {
        BathParams::zero_temperature(gamma0, OMEGA_C, r, BATH_A)
    } else {
        BathParams::high_temperature(gamma0, OMEGA_C, temperature, r, BATH_A)
    }
}

fn unitary() -> Result<BathParams> {
    bath(0.0, 0.0, 0.0)
}

struct Builder {
    prefix: &'static str,
    system: SystemSpec,
    state: StateSelector,
}

impl Builder {
    fn series(&self, name: &str, bath: BathParams, times: &[f64]) -> ScenarioConfig {
        ScenarioConfig {
            label: format!("{}/{}", self.prefix, name),
            system: self.system,
            state: self.state,
            bath,
            times: times.to_vec(),
            grid: DEFAULT_GRID,
            kernels: KernelMethod::Closed,
            phase_sum: PhaseSum::Sectors,
        }
    }
}

fn coherent() -> Result<CoherentParams> {
    CoherentParams::from_mean_number(ALPHA_SQ, THETA0)
}

/// The five curves of Figs. 1 and 2.
fn oscillator_matrix(b: &Builder) -> Result<Vec<ScenarioConfig>> {
    let g = GAMMA0_OSCILLATOR;
    Ok(vec![
        b.series("unitary", unitary()?, &[UNITARY_TIME]),
        b.series("T0-r2", bath(g, 0.0, 2.0)?, &[0.1]),
        b.series("T300-r2", bath(g, 300.0, 2.0)?, &[0.1]),
        b.series("T300-r1", bath(g, 300.0, 1.0)?, &[0.1, 0.2]),
    ])
}

pub fn preset(name: &str) -> Result<Vec<ScenarioConfig>> {
    let harmonic = SystemSpec::harmonic(OMEGA)?;
    let anharmonic = SystemSpec::anharmonic(OMEGA, KERR)?;
    let two_level = SystemSpec::two_level(OMEGA)?;
    let kerr = KerrParams::new(KERR, coherent()?)?;
    let strong = GAMMA0_STRONG;
    match name {
        "fig1" => oscillator_matrix(&Builder {
            prefix: "fig1",
            system: harmonic,
            state: StateSelector::Coherent(coherent()?),
        }),
        "fig2" => oscillator_matrix(&Builder {
            prefix: "fig2",
            system: harmonic,
            state: StateSelector::SqueezedCoherent(coherent()?, SqueezeParams::new(FIG2_R1, FIG2_PSI)?),
        }),
        "fig3" => {
            let b = Builder {
                prefix: "fig3",
                system: anharmonic,
                state: StateSelector::Kerr(kerr),
            };
            let g = GAMMA0_OSCILLATOR;
            Ok(vec![
                b.series("unitary", unitary()?, &[0.1]),
                b.series("T50-r0", bath(g, 50.0, 0.0)?, &[0.1]),
                b.series("T50-r2", bath(g, 50.0, 2.0)?, &[0.1]),
                b.series("T0-r2", bath(g, 0.0, 2.0)?, &[0.1]),
            ])
        }
        "fig4" => {
            let b = Builder {
                prefix: "fig4",
                system: anharmonic,
                state: StateSelector::Kerr(kerr),
            };
            Ok(vec![b.series("T0-r2", bath(GAMMA0_OSCILLATOR, 0.0, 2.0)?, &[0.1, 0.5, 1.0])])
        }
        "fig5" => {
            let b = Builder {
                prefix: "fig5",
                system: anharmonic,
                state: StateSelector::SqueezedKerr(kerr, SqueezeParams::new(FIG5_R1, FIG5_PHI)?),
            };
            Ok(vec![
                b.series("T0-r1", bath(strong, 0.0, 1.0)?, &[0.1]),
                b.series("T100-r1", bath(strong, 100.0, 1.0)?, &[0.1]),
                b.series("T100-r0", bath(strong, 100.0, 0.0)?, &[0.1]),
                b.series("unitary", unitary()?, &[0.1]),
            ])
        }
        "fig6" => {
            let b = Builder {
                prefix: "fig6",
                system: two_level,
                state: StateSelector::Atomic(AtomicStateParams::Coherent {
                    alpha: ATOM_ANGLE,
                    beta: ATOM_ANGLE,
                }),
            };
            Ok(vec![
                b.series("T0-r0", bath(strong, 0.0, 0.0)?, &[0.1]),
                b.series("T0-r2", bath(strong, 0.0, 2.0)?, &[0.1]),
                b.series("T300-r2", bath(strong, 300.0, 2.0)?, &[0.1, 0.02]),
            ])
        }
        "fig7" | "fig8" => {
            let pole = if name == "fig7" { Pole::South } else { Pole::North };
            let b = Builder {
                prefix: if name == "fig7" { "fig7" } else { "fig8" },
                system: two_level,
                state: StateSelector::Atomic(AtomicStateParams::Squeezed { theta: ATOM_THETA, pole }),
            };
            Ok(vec![
                b.series("T0-r1", bath(strong, 0.0, 1.0)?, &[0.1]),
                b.series("T300-r1", bath(strong, 300.0, 1.0)?, &[0.1, 0.05]),
            ])
        }
        other => Err(Error::Config(format!(
            "preset: unknown preset {other:?}; expected one of {}",
            PRESET_NAMES.join(", ")
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series_count(name: &str) -> usize {
        preset(name).unwrap().iter().map(|c| c.times.len()).sum()
    }

    #[test]
    fn series_counts_follow_captions() {
        assert_eq!(series_count("fig1"), 5);
        assert_eq!(series_count("fig2"), 5);
        assert_eq!(series_count("fig3"), 4);
        assert_eq!(series_count("fig4"), 3);
        assert_eq!(series_count("fig5"), 4);
        assert_eq!(series_count("fig6"), 4);
        assert_eq!(series_count("fig7"), 3);
        assert_eq!(series_count("fig8"), 3);
    }

    #[test]
    fn shared_parameters() {
        for name in PRESET_NAMES {
            for cfg in preset(name).unwrap() {
                assert_eq!(cfg.system.omega(), 1.0);
                assert_eq!(cfg.bath.omega_c(), 100.0);
                assert_eq!(cfg.bath.squeeze_a(), 0.0);
                let g = cfg.bath.gamma0();
                let expected = if ["fig1", "fig2", "fig3", "fig4"].contains(&name) { 0.0025 } else { 0.025 };
                assert!(g == 0.0 || g == expected, "{name}: {g}");
                cfg.validate().unwrap();
            }
        }
    }

    #[test]
    fn fig7_caption_values() {
        let cfgs = preset("fig7").unwrap();
        assert_eq!(cfgs[0].bath.temperature(), 0.0);
        assert_eq!(cfgs[0].times, vec![0.1]);
        assert_eq!(cfgs[1].bath.temperature(), 300.0);
        assert_eq!(cfgs[1].times, vec![0.1, 0.05]);
        for c in &cfgs {
            assert_eq!(c.bath.squeeze_r(), 1.0);
            assert_eq!(
                c.state,
                StateSelector::Atomic(AtomicStateParams::Squeezed {
                    theta: -0.5494,
                    pole: Pole::South
                })
            );
        }
    }

    #[test]
    fn unknown_preset_is_config_error() {
        assert!(matches!(preset("fig9"), Err(Error::Config(_))));
    }
}
