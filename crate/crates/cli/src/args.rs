//! Command-line arguments.

use clap::{Args, Parser, Subcommand, ValueEnum};

use qnd_phase::bath::{BathParams, KernelMethod, Regime};
use qnd_phase::phasedist::DEFAULT_GRID;
use qnd_phase::specfun::HalfInt;
use qnd_phase::states::{AtomicStateParams, CoherentParams, KerrParams, Pole, SqueezeParams};
use qnd_phase::systems::SystemSpec;
use qnd_phase::{Error, Result};

use crate::presets::preset;
use crate::scenario::{PhaseSum, ScenarioConfig, StateSelector};

#[derive(Debug, Parser)]
#[command(
    name = "qnd-phase",
    version,
    about = "Phase distributions under QND dephasing by a squeezed thermal bath",
    args_conflicts_with_subcommands = true
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Option<Command>,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run oracle comparisons and report pass/fail per check.
    Validate {
        /// bath, states, dualpath or all
        #[arg(default_value = "all")]
        suite: String,
    },
    /// Same as `validate bath`.
    ValidateBath,
    /// List the figure presets.
    Presets,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SystemArg {
    Harmonic,
    Anharmonic,
    TwoLevel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StateArg {
    Coherent,
    SqueezedCoherent,
    Kerr,
    SqueezedKerr,
    Dicke,
    AtomicCoherent,
    AtomicSqueezed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PoleArg {
    North,
    South,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KernelArg {
    Closed,
    Quadrature,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RegimeArg {
    Zero,
    High,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PhaseSumArg {
    Sectors,
    Full,
}

#[derive(Debug, Clone, Default, Args)]
pub struct RunArgs {
    /// Figure preset (fig1 .. fig8).
    #[arg(long)]
    pub preset: Option<String>,
    #[arg(long, value_enum)]
    pub system: Option<SystemArg>,
    #[arg(long, value_enum)]
    pub state: Option<StateArg>,
    /// Mean photon number |α|².
    #[arg(long)]
    pub alpha2: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub theta0: Option<f64>,
    /// System squeeze magnitude r₁.
    #[arg(long)]
    pub r1: Option<f64>,
    /// System squeeze phase (ψ for squeezed coherent, φ for squeezed Kerr).
    #[arg(long, alias = "phi", allow_negative_numbers = true)]
    pub psi: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub chi: Option<f64>,
    #[arg(long)]
    pub lambda: Option<f64>,
    #[arg(long)]
    pub atom_alpha: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub atom_beta: Option<f64>,
    /// Atomic squeezing Θ (< 0).
    #[arg(long, allow_negative_numbers = true)]
    pub theta_s: Option<f64>,
    #[arg(long, value_enum)]
    pub pole: Option<PoleArg>,
    /// Wigner–Dicke projection m̃ (±0.5).
    #[arg(long, allow_negative_numbers = true)]
    pub dicke_m: Option<f64>,
    #[arg(long)]
    pub gamma0: Option<f64>,
    #[arg(long)]
    pub omega: Option<f64>,
    #[arg(long)]
    pub omega_c: Option<f64>,
    #[arg(long)]
    pub temp: Option<f64>,
    #[arg(long)]
    pub bath_r: Option<f64>,
    #[arg(long)]
    pub bath_a: Option<f64>,
    /// Evolution time; repeat for several.
    #[arg(long = "time")]
    pub times: Vec<f64>,
    #[arg(long)]
    pub grid: Option<usize>,
    /// Output file (stdout when omitted).
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
    #[arg(long, value_enum)]
    pub kernels: Option<KernelArg>,
    /// Temperature regime; follows --temp when omitted.
    #[arg(long, value_enum)]
    pub regime: Option<RegimeArg>,
    /// Anharmonic phase sum.
    #[arg(long, value_enum)]
    pub phase_sum: Option<PhaseSumArg>,
}

fn require(v: Option<f64>, flag: &str, why: &str) -> Result<f64> {
    v.ok_or_else(|| Error::Config(format!("{flag}: required {why}")))
}

fn forbid(v: bool, flag: &str, why: &str) -> Result<()> {
    if v {
        return Err(Error::Config(format!("{flag}: not allowed {why}")));
    }
    Ok(())
}

impl RunArgs {
    fn physics_flags_set(&self) -> Vec<&'static str> {
        let mut set = Vec::new();
        let flags: [(&'static str, bool); 21] = [
            ("--system", self.system.is_some()),
            ("--state", self.state.is_some()),
            ("--alpha2", self.alpha2.is_some()),
            ("--theta0", self.theta0.is_some()),
            ("--r1", self.r1.is_some()),
            ("--psi", self.psi.is_some()),
            ("--chi", self.chi.is_some()),
            ("--lambda", self.lambda.is_some()),
            ("--atom-alpha", self.atom_alpha.is_some()),
            ("--atom-beta", self.atom_beta.is_some()),
            ("--theta-s", self.theta_s.is_some()),
            ("--pole", self.pole.is_some()),
            ("--dicke-m", self.dicke_m.is_some()),
            ("--gamma0", self.gamma0.is_some()),
            ("--omega", self.omega.is_some()),
            ("--omega-c", self.omega_c.is_some()),
            ("--temp", self.temp.is_some()),
            ("--bath-r", self.bath_r.is_some()),
            ("--bath-a", self.bath_a.is_some()),
            ("--time", !self.times.is_empty()),
            ("--regime", self.regime.is_some()),
        ];
        for (name, on) in flags {
            if on {
                set.push(name);
            }
        }
        set
    }

    fn kernel_method(&self) -> KernelMethod {
        match self.kernels {
            Some(KernelArg::Quadrature) => KernelMethod::Quadrature,
            _ => KernelMethod::Closed,
        }
    }

    /// Scenario list described by the flags.
    pub fn to_configs(&self) -> Result<Vec<ScenarioConfig>> {
        if let Some(name) = &self.preset {
            let conflicting = self.physics_flags_set();
            if !conflicting.is_empty() {
                return Err(Error::Config(format!(
                    "preset: cannot be combined with {}",
                    conflicting.join(", ")
                )));
            }
            let mut cfgs = preset(name)?;
            for c in &mut cfgs {
                if let Some(g) = self.grid {
                    c.grid = g;
                }
                c.kernels = self.kernel_method();
                if let Some(p) = self.phase_sum {
                    c.phase_sum = phase_sum(p);
                }
            }
            return Ok(cfgs);
        }
        Ok(vec![self.manual_config()?])
    }

    fn manual_config(&self) -> Result<ScenarioConfig> {
        let system_arg = self
            .system
            .ok_or_else(|| Error::Config("system: required unless --preset is given".into()))?;
        let omega = self.omega.unwrap_or(1.0);
        let system = match system_arg {
            SystemArg::Harmonic => {
                forbid(self.lambda.is_some(), "--lambda", "for the harmonic system")?;
                SystemSpec::harmonic(omega)?
            }
            SystemArg::Anharmonic => {
                SystemSpec::anharmonic(omega, require(self.lambda, "--lambda", "for the anharmonic system")?)?
            }
            SystemArg::TwoLevel => {
                forbid(self.lambda.is_some(), "--lambda", "for the two-level system")?;
                SystemSpec::two_level(omega)?
            }
        };
        let state_arg = self.state.unwrap_or(match system_arg {
            SystemArg::Harmonic => StateArg::Coherent,
            SystemArg::Anharmonic => StateArg::Kerr,
            SystemArg::TwoLevel => StateArg::AtomicCoherent,
        });
        let coherent = || CoherentParams::from_mean_number(self.alpha2.unwrap_or(5.0), self.theta0.unwrap_or(0.0));
        let squeeze = || SqueezeParams::new(require(self.r1, "--r1", "for squeezed states")?, self.psi.unwrap_or(0.0));
        let kerr = || KerrParams::new(require(self.chi, "--chi", "for Kerr states")?, coherent()?);
        let state = match state_arg {
            StateArg::Coherent => StateSelector::Coherent(coherent()?),
            StateArg::SqueezedCoherent => StateSelector::SqueezedCoherent(coherent()?, squeeze()?),
            StateArg::Kerr => StateSelector::Kerr(kerr()?),
            StateArg::SqueezedKerr => StateSelector::SqueezedKerr(kerr()?, squeeze()?),
            StateArg::Dicke => {
                let m = require(self.dicke_m, "--dicke-m", "for the Dicke state")?;
                let twice = if m == 0.5 {
                    1
                } else if m == -0.5 {
                    -1
                } else {
                    return Err(Error::Config(format!("--dicke-m: must be 0.5 or -0.5, got {m}")));
                };
                StateSelector::Atomic(AtomicStateParams::Dicke { m: HalfInt::from_twice(twice) })
            }
            StateArg::AtomicCoherent => StateSelector::Atomic(AtomicStateParams::Coherent {
                alpha: require(self.atom_alpha, "--atom-alpha", "for the atomic coherent state")?,
                beta: require(self.atom_beta, "--atom-beta", "for the atomic coherent state")?,
            }),
            StateArg::AtomicSqueezed => StateSelector::Atomic(AtomicStateParams::Squeezed {
                theta: require(self.theta_s, "--theta-s", "for the atomic squeezed state")?,
                pole: match self.pole {
                    Some(PoleArg::North) => Pole::North,
                    Some(PoleArg::South) => Pole::South,
                    None => return Err(Error::Config("--pole: required for the atomic squeezed state".into())),
                },
            }),
        };
        let temperature = self.temp.unwrap_or(0.0);
        let regime = match self.regime {
            Some(RegimeArg::Zero) => Regime::ZeroTemperature,
            Some(RegimeArg::High) => Regime::HighTemperature,
            None if temperature == 0.0 => Regime::ZeroTemperature,
            None => Regime::HighTemperature,
        };
        let bath = BathParams::new(
            self.gamma0.unwrap_or(0.0025),
            self.omega_c.unwrap_or(100.0),
            temperature,
            self.bath_r.unwrap_or(0.0),
            self.bath_a.unwrap_or(0.0),
            regime,
        )?;
        if self.times.is_empty() {
            return Err(Error::Config("--time: at least one evolution time is required".into()));
        }
        let cfg = ScenarioConfig {
            label: format!("{}/{}", system.kind_name(), state.kind_name()),
            system,
            state,
            bath,
            times: self.times.clone(),
            grid: self.grid.unwrap_or(DEFAULT_GRID),
            kernels: self.kernel_method(),
            phase_sum: self.phase_sum.map(phase_sum).unwrap_or_default(),
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

fn phase_sum(p: PhaseSumArg) -> PhaseSum {
    match p {
        PhaseSumArg::Sectors => PhaseSum::Sectors,
        PhaseSumArg::Full => PhaseSum::Full,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("qnd-phase").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn negative_theta_is_accepted() {
        let cli = parse(&[
            "--system", "two-level", "--state", "atomic-squeezed", "--theta-s", "-0.5494", "--pole", "south", "--time", "0.1",
        ]);
        let cfgs = cli.run.to_configs().unwrap();
        assert_eq!(
            cfgs[0].state,
            StateSelector::Atomic(AtomicStateParams::Squeezed { theta: -0.5494, pole: Pole::South })
        );
    }

    #[test]
    fn repeatable_time() {
        let cli = parse(&["--system", "harmonic", "--time", "0.1", "--time", "0.2"]);
        assert_eq!(cli.run.to_configs().unwrap()[0].times, vec![0.1, 0.2]);
    }

    #[test]
    fn unknown_flag_is_rejected() {
        assert!(Cli::try_parse_from(["qnd-phase", "--bogus", "1"]).is_err());
    }

    #[test]
    fn preset_conflicts_with_physics_flags() {
        let cli = parse(&["--preset", "fig1", "--temp", "5"]);
        assert!(matches!(cli.run.to_configs(), Err(Error::Config(_))));
    }

    #[test]
    fn regime_mismatch_is_config_error() {
        let cli = parse(&["--system", "harmonic", "--temp", "300", "--regime", "zero", "--time", "0.1"]);
        assert!(matches!(cli.run.to_configs(), Err(Error::Config(_))));
    }

    #[test]
    fn missing_required_parameter() {
        let cli = parse(&["--system", "harmonic", "--state", "squeezed-coherent", "--time", "0.1"]);
        match cli.run.to_configs() {
            Err(Error::Config(msg)) => assert!(msg.starts_with("--r1")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn state_must_fit_system() {
        let cli = parse(&["--system", "harmonic", "--state", "kerr", "--chi", "0.02", "--time", "0.1"]);
        assert!(matches!(cli.run.to_configs(), Err(Error::Config(_))));
    }

    #[test]
    fn validate_subcommand() {
        let cli = parse(&["validate", "dualpath"]);
        assert!(matches!(cli.command, Some(Command::Validate { ref suite }) if suite == "dualpath"));
    }
}
