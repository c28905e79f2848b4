//! Scenario configuration and evaluation.

use rayon::prelude::*;

use qnd_phase::bath::{BathParams, KernelMethod, KernelPair};
use qnd_phase::phasedist::{
    atomic_phase_distribution_general, oscillator_phase_distribution, su11_phase_distribution, PhaseDistribution,
    PhaseMetadata,
};
use qnd_phase::states::{
    atomic_initial_dm, coherent_coeffs_auto, kerr_coeffs_auto, squeezed_coherent_dm_auto, squeezed_kerr_coeffs_auto,
    AtomicStateParams, CoherentParams, KerrParams, SqueezeParams, DEFAULT_TAIL_TOL,
};
use qnd_phase::systems::{propagate_with_kernels, ReducedDensityMatrix, SystemSpec};
use qnd_phase::{Error, Result};

/// Initial state selector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StateSelector {
    Coherent(CoherentParams),
    SqueezedCoherent(CoherentParams, SqueezeParams),
    Kerr(KerrParams),
    SqueezedKerr(KerrParams, SqueezeParams),
    Atomic(AtomicStateParams),
}

impl StateSelector {
    pub fn kind_name(&self) -> &'static str {
        match self {
            StateSelector::Coherent(_) => "coherent",
            StateSelector::SqueezedCoherent(..) => "squeezed-coherent",
            StateSelector::Kerr(_) => "kerr",
            StateSelector::SqueezedKerr(..) => "squeezed-kerr",
            StateSelector::Atomic(AtomicStateParams::Dicke { .. }) => "dicke",
            StateSelector::Atomic(AtomicStateParams::Coherent { .. }) => "atomic-coherent",
            StateSelector::Atomic(AtomicStateParams::Squeezed { .. }) => "atomic-squeezed",
        }
    }

    /// Parameter summary for the CSV comment block.
    pub fn describe(&self) -> String {
        let coherent = |c: &CoherentParams| format!("alpha2={} theta0={}", short(c.alpha_mag().powi(2)), c.theta0());
        let body = match self {
            StateSelector::Coherent(c) => coherent(c),
            StateSelector::SqueezedCoherent(c, s) => format!("{} r1={} psi={}", coherent(c), s.r1(), s.phase()),
            StateSelector::Kerr(k) => format!("{} chi={}", coherent(k.base()), k.chi()),
            StateSelector::SqueezedKerr(k, s) => {
                format!("{} chi={} r1={} phi={}", coherent(k.base()), k.chi(), s.r1(), s.phase())
            }
            StateSelector::Atomic(AtomicStateParams::Dicke { m }) => format!("m={m}"),
            StateSelector::Atomic(AtomicStateParams::Coherent { alpha, beta }) => format!("alpha={alpha} beta={beta}"),
            StateSelector::Atomic(AtomicStateParams::Squeezed { theta, pole }) => {
                format!("Theta={theta} pole={}", pole.as_str())
            }
        };
        format!("{} {}", self.kind_name(), body)
    }
}

// Up to 12 significant digits, so √5² prints as 5.
fn short(x: f64) -> String {
    let rounded: f64 = format!("{x:.11e}").parse().unwrap_or(x);
    format!("{rounded}")
}

/// How the anharmonic phase distribution is summed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PhaseSum {
    /// Within the k = 1/4 and k = 3/4 sectors only, with doubled angle.
    #[default]
    Sectors,
    /// Over the full number basis, keeping coherences between the sectors.
    Full,
}

impl PhaseSum {
    pub fn as_str(self) -> &'static str {
        match self {
            PhaseSum::Sectors => "sectors",
            PhaseSum::Full => "full",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub label: String,
    pub system: SystemSpec,
    pub state: StateSelector,
    pub bath: BathParams,
    pub times: Vec<f64>,
    pub grid: usize,
    pub kernels: KernelMethod,
    pub phase_sum: PhaseSum,
}

impl ScenarioConfig {
    pub fn validate(&self) -> Result<()> {
        let compatible = matches!(
            (&self.system, &self.state),
            (SystemSpec::Harmonic { .. }, StateSelector::Coherent(_) | StateSelector::SqueezedCoherent(..))
                | (SystemSpec::Anharmonic { .. }, StateSelector::Kerr(_) | StateSelector::SqueezedKerr(..))
                | (SystemSpec::TwoLevel { .. }, StateSelector::Atomic(_))
        );
        if !compatible {
            return Err(Error::Config(format!(
                "state: {} is not available for the {} system",
                self.state.kind_name(),
                self.system.kind_name()
            )));
        }
        if self.times.is_empty() {
            return Err(Error::Config("time: at least one evolution time is required".into()));
        }
        if self.grid < 3 {
            return Err(Error::Config(format!("grid: need at least 3 points, got {}", self.grid)));
        }
        for &t in &self.times {
            if !t.is_finite() || t < 0.0 {
                return Err(Error::Config(format!("time: {t} is not a finite non-negative time")));
            }
            let a = self.bath.squeeze_a();
            if self.kernels == KernelMethod::Closed && t > 0.0 && t <= 2.0 * a {
                return Err(Error::Config(format!(
                    "time: closed-form kernels need t > 2a, got t = {t} with a = {a}"
                )));
            }
        }
        Ok(())
    }

    pub fn bath_description(&self) -> String {
        let b = &self.bath;
        format!(
            "gamma0={} omega_c={} T={} r={} a={} regime={} kernels={}",
            b.gamma0(),
            b.omega_c(),
            b.temperature(),
            b.squeeze_r(),
            b.squeeze_a(),
            b.regime().as_str(),
            match self.kernels {
                KernelMethod::Closed => "closed",
                KernelMethod::Quadrature => "quadrature",
            }
        )
    }

    pub fn system_description(&self) -> String {
        match self.system {
            SystemSpec::Harmonic { omega } => format!("harmonic omega={omega}"),
            SystemSpec::Anharmonic { omega, lambda } => {
                format!("anharmonic omega={omega} lambda={lambda} phase_sum={}", self.phase_sum.as_str())
            }
            SystemSpec::TwoLevel { omega } => format!("two-level omega={omega}"),
        }
    }
}

/// Initial density matrix in the basis the evaluation path needs.
#[derive(Debug, Clone, PartialEq)]
pub enum InitialState {
    Number(ReducedDensityMatrix),
    Sectors(ReducedDensityMatrix, ReducedDensityMatrix),
    Atomic(ReducedDensityMatrix),
}

impl InitialState {
    pub fn trunc_error(&self) -> f64 {
        match self {
            InitialState::Number(r) | InitialState::Atomic(r) => r.trunc_error(),
            InitialState::Sectors(e, _) => e.trunc_error(),
        }
    }
}

pub fn prepare_initial(cfg: &ScenarioConfig) -> Result<InitialState> {
    let sectors_or_full = |c: qnd_phase::states::StateCoeffs| -> Result<InitialState> {
        match cfg.phase_sum {
            PhaseSum::Sectors => {
                let (e, o) = c.sector_density_matrices()?;
                Ok(InitialState::Sectors(e, o))
            }
            PhaseSum::Full => Ok(InitialState::Number(c.density_matrix()?)),
        }
    };
    match cfg.state {
        StateSelector::Coherent(c) => Ok(InitialState::Number(coherent_coeffs_auto(&c, DEFAULT_TAIL_TOL)?.density_matrix()?)),
        StateSelector::SqueezedCoherent(c, s) => Ok(InitialState::Number(squeezed_coherent_dm_auto(&c, &s, DEFAULT_TAIL_TOL)?)),
        StateSelector::Kerr(k) => sectors_or_full(kerr_coeffs_auto(&k, DEFAULT_TAIL_TOL)?),
        StateSelector::SqueezedKerr(k, s) => sectors_or_full(squeezed_kerr_coeffs_auto(&k, &s, DEFAULT_TAIL_TOL)?),
        StateSelector::Atomic(a) => Ok(InitialState::Atomic(atomic_initial_dm(&a)?)),
    }
}

/// One evaluated time of a scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesResult {
    pub label: String,
    pub t: f64,
    pub kernels: KernelPair,
    pub trunc_error: f64,
    pub distribution: PhaseDistribution,
}

/// Propagate `initial` to `t` and evaluate its phase distribution.
pub fn evaluate(cfg: &ScenarioConfig, initial: &InitialState, t: f64) -> Result<SeriesResult> {
    let kernels = cfg.bath.kernels(t, cfg.kernels)?;
    let pd = match initial {
        InitialState::Number(rho) => {
            oscillator_phase_distribution(&propagate_with_kernels(rho, &cfg.system, kernels, t)?, cfg.grid)?
        }
        InitialState::Sectors(even, odd) => su11_phase_distribution(
            &propagate_with_kernels(even, &cfg.system, kernels, t)?,
            &propagate_with_kernels(odd, &cfg.system, kernels, t)?,
            cfg.grid,
        )?,
        InitialState::Atomic(rho) => {
            atomic_phase_distribution_general(&propagate_with_kernels(rho, &cfg.system, kernels, t)?, cfg.grid)?
        }
    };
    let meta = PhaseMetadata {
        system: cfg.system_description(),
        state: cfg.state.describe(),
        bath: cfg.bath_description(),
        t,
    };
    Ok(SeriesResult {
        label: cfg.label.clone(),
        t,
        kernels,
        trunc_error: initial.trunc_error(),
        distribution: pd.with_metadata(meta),
    })
}

/// Evaluate every time of one scenario, in the configured order.
pub fn run_scenario(cfg: &ScenarioConfig) -> Result<Vec<SeriesResult>> {
    run_scenarios(std::slice::from_ref(cfg))
}

/// Evaluate several scenarios concurrently; results come back in config order.
pub fn run_scenarios(cfgs: &[ScenarioConfig]) -> Result<Vec<SeriesResult>> {
    let prepared: Vec<(&ScenarioConfig, InitialState)> = cfgs
        .iter()
        .map(|c| {
            c.validate()?;
            Ok((c, prepare_initial(c)?))
        })
        .collect::<Result<_>>()?;
    let jobs: Vec<(&ScenarioConfig, &InitialState, f64)> = prepared
        .iter()
        .flat_map(|(c, init)| c.times.iter().map(move |&t| (*c, init, t)))
        .collect();
    jobs.par_iter().map(|(c, init, t)| evaluate(c, init, *t)).collect()
}
