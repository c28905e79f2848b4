//! Phase distributions on uniform angular grids and their circular statistics.
//!
//! Every distribution here is a real trigonometric polynomial. It is assembled once
//! as a [`PhaseSeries`] (one coefficient per harmonic, grouped from the density-matrix
//! diagonals) and then sampled, which costs O(N² + N·M) instead of O(N²·M).

use std::f64::consts::{FRAC_PI_4, PI, TAU};

use num_complex::Complex64;

use crate::bath::{BathParams, KernelMethod, KernelPair};
use crate::error::{Error, Result};
use crate::specfun::ln_gamma;
use crate::systems::{Basis, ReducedDensityMatrix, SystemSpec};

pub const DEFAULT_GRID: usize = 1024;

/// Most negative sample tolerated before a distribution is rejected.
pub const NEGATIVITY_TOL: f64 = 1e-12;

/// Relative window inside which grid maxima count as tied.
const PEAK_TIE_REL: f64 = 1e-12;

/// Which angle the distribution is written in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AngleKind {
    /// Oscillator phase θ.
    Theta,
    /// Dipole phase φ of the two-level atom.
    Phi,
}

impl AngleKind {
    pub fn as_str(self) -> &'static str {
        match self {
            AngleKind::Theta => "theta",
            AngleKind::Phi => "phi",
        }
    }
}

/// Free-form description carried with a distribution.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PhaseMetadata {
    pub system: String,
    pub state: String,
    pub bath: String,
    pub t: f64,
}

/// `P(θ) = Σ_k c_k e^{ikθ}` with `c_{−k} = c_k*`; `coeffs[k]` holds `c_k` for `k ≥ 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseSeries {
    coeffs: Vec<Complex64>,
}

impl PhaseSeries {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        let coeffs = if coeffs.is_empty() { vec![Complex64::new(0.0, 0.0)] } else { coeffs };
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Highest harmonic present.
    pub fn bandwidth(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `∫₀^{2π} P = 2π c₀`.
    pub fn total(&self) -> f64 {
        TAU * self.coeffs[0].re
    }

    /// `∫ e^{iθ} P(θ) dθ = 2π c₋₁ = 2π c₁*`.
    pub fn first_moment(&self) -> Complex64 {
        self.coeffs.get(1).map_or(Complex64::new(0.0, 0.0), |c| TAU * c.conj())
    }

    pub fn eval(&self, theta: f64) -> f64 {
        let mut acc = 0.0;
        for (k, c) in self.coeffs.iter().enumerate().skip(1).rev() {
            acc += (c * Complex64::from_polar(1.0, k as f64 * theta)).re;
        }
        self.coeffs[0].re + 2.0 * acc
    }

    /// Values at `θ_i = 2πi/M`, using exact M-th roots of unity.
    pub fn sample(&self, m: usize) -> Vec<f64> {
        let roots: Vec<Complex64> = (0..m).map(|i| Complex64::from_polar(1.0, TAU * i as f64 / m as f64)).collect();
        (0..m)
            .map(|i| {
                let mut acc = 0.0;
                for (k, c) in self.coeffs.iter().enumerate().skip(1).rev() {
                    acc += (c * roots[(k * i) % m]).re;
                }
                self.coeffs[0].re + 2.0 * acc
            })
            .collect()
    }

    fn add_scaled(&mut self, other: &PhaseSeries) {
        if other.coeffs.len() > self.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), Complex64::new(0.0, 0.0));
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
    }
}

/// A phase distribution sampled on `M` uniform points of `[0, 2π)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseDistribution {
    axis: AngleKind,
    grid: Vec<f64>,
    values: Vec<f64>,
    metadata: PhaseMetadata,
}

pub fn uniform_grid(m: usize) -> Vec<f64> {
    (0..m).map(|i| TAU * i as f64 / m as f64).collect()
}

impl PhaseDistribution {
    /// Wrap raw samples, rejecting values below `−NEGATIVITY_TOL` and clipping the rest at 0.
    pub fn from_values(axis: AngleKind, values: Vec<f64>, metadata: PhaseMetadata) -> Result<Self> {
        if values.len() < 3 {
            return Err(Error::config(format!("grid needs at least 3 points, got {}", values.len())));
        }
        if let Some((i, v)) = values
            .iter()
            .enumerate()
            .find(|(_, v)| !v.is_finite() || **v < -NEGATIVITY_TOL)
        {
            return Err(Error::Numerical(format!("phase distribution value {v} at grid index {i} is negative or not finite")));
        }
        let values = values.into_iter().map(|v| v.max(0.0)).collect::<Vec<_>>();
        Ok(Self {
            axis,
            grid: uniform_grid(values.len()),
            values,
            metadata,
        })
    }

    pub fn from_series(axis: AngleKind, series: &PhaseSeries, m: usize, metadata: PhaseMetadata) -> Result<Self> {
        if m < 3 {
            return Err(Error::config(format!("grid needs at least 3 points, got {m}")));
        }
        Self::from_values(axis, series.sample(m), metadata)
    }

    pub fn axis(&self) -> AngleKind {
        self.axis
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn metadata(&self) -> &PhaseMetadata {
        &self.metadata
    }

    pub fn with_metadata(mut self, metadata: PhaseMetadata) -> Self {
        self.metadata = metadata;
        self
    }

    /// Periodic trapezoid `∫₀^{2π} P`.
    pub fn integral(&self) -> f64 {
        TAU / self.len() as f64 * self.values.iter().sum::<f64>()
    }

    pub fn min_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Largest pointwise difference to another distribution on the same grid.
    pub fn sup_distance(&self, other: &PhaseDistribution) -> Result<f64> {
        if self.len() != other.len() {
            return Err(Error::config(format!("grid sizes differ: {} vs {}", self.len(), other.len())));
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }
}

fn diagonal_sums(rho: &ReducedDensityMatrix, stride: usize, scale: f64) -> PhaseSeries {
    let n = rho.dim();
    let mut coeffs = vec![Complex64::new(0.0, 0.0); stride * (n - 1) + 1];
    for k in 0..n {
        // c_k collects ρ_{m, m+k} (the e^{+ik·} term of ρ_mn e^{i(n−m)·}).
        let s: Complex64 = (0..n - k).map(|m| rho.get(m, m + k)).sum();
        coeffs[stride * k] = s * scale;
    }
    PhaseSeries::new(coeffs)
}

/// `P(θ) = (1/2π) Σ_{m,n} ρ_mn e^{i(n−m)θ}`. A single SU(1,1) sector contributes its
/// modes at doubled frequency.
pub fn oscillator_phase_series(rho: &ReducedDensityMatrix) -> Result<PhaseSeries> {
    let stride = match rho.basis() {
        Basis::Number => 1,
        Basis::Su11Even | Basis::Su11Odd => 2,
        Basis::DickeHalf => {
            return Err(Error::config(
                "oscillator phase distribution needs a number or SU(1,1) basis; use the atomic evaluator for the two-level system",
            ))
        }
    };
    Ok(diagonal_sums(rho, stride, 1.0 / TAU))
}

pub fn oscillator_phase_distribution(rho: &ReducedDensityMatrix, m: usize) -> Result<PhaseDistribution> {
    let series = oscillator_phase_series(rho)?;
    let meta = PhaseMetadata {
        t: rho.t(),
        ..Default::default()
    };
    PhaseDistribution::from_series(AngleKind::Theta, &series, m, meta)
}

/// Two-sector sum `(1/2π) Σ_{k=1/4,3/4} Σ_{m,n} ρ^k_mn e^{i2(n−m)θ}`.
pub fn su11_phase_series(even: &ReducedDensityMatrix, odd: &ReducedDensityMatrix) -> Result<PhaseSeries> {
    if even.basis() != Basis::Su11Even || odd.basis() != Basis::Su11Odd {
        return Err(Error::config(format!(
            "expected (su11-even, su11-odd) sectors, got ({}, {})",
            even.basis().as_str(),
            odd.basis().as_str()
        )));
    }
    let mut series = oscillator_phase_series(even)?;
    series.add_scaled(&oscillator_phase_series(odd)?);
    Ok(series)
}

pub fn su11_phase_distribution(even: &ReducedDensityMatrix, odd: &ReducedDensityMatrix, m: usize) -> Result<PhaseDistribution> {
    let series = su11_phase_series(even, odd)?;
    let meta = PhaseMetadata {
        t: even.t(),
        ..Default::default()
    };
    PhaseDistribution::from_series(AngleKind::Theta, &series, m, meta)
}

/// Weight of `ρ_nm` after the polar-angle integral of the atomic Q-function:
/// `√(C(2j,j+n) C(2j,j+m)) Γ(j+(n+m)/2+1) Γ(j−(n+m)/2+1) / Γ(2j+2)`.
pub fn atomic_weight(two_j: usize, two_n: i64, two_m: i64) -> Result<f64> {
    let j = two_j as f64 / 2.0;
    let (n, m) = (two_n as f64 / 2.0, two_m as f64 / 2.0);
    let ln_binom = |k: f64| -> Result<f64> { Ok(ln_gamma(2.0 * j + 1.0)? - ln_gamma(j + k + 1.0)? - ln_gamma(j - k + 1.0)?) };
    let s = 0.5 * (n + m);
    let ln_w = 0.5 * (ln_binom(n)? + ln_binom(m)?) + ln_gamma(j + s + 1.0)? + ln_gamma(j - s + 1.0)? - ln_gamma(2.0 * j + 2.0)?;
    Ok(ln_w.exp())
}

/// `P(φ) = (2j+1)/2π Σ_{n,m} w_nm ρ_nm e^{i(n−m)φ}` for a density matrix in the
/// Wigner–Dicke basis ordered by increasing `m`.
pub fn atomic_phase_series(rho: &ReducedDensityMatrix) -> Result<PhaseSeries> {
    if rho.basis() != Basis::DickeHalf {
        return Err(Error::config(format!(
            "atomic phase distribution needs the Dicke basis, got {}",
            rho.basis().as_str()
        )));
    }
    let dim = rho.dim();
    let two_j = dim - 1;
    let proj = |i: usize| 2 * i as i64 - two_j as i64;
    let prefactor = dim as f64 / TAU;
    let mut coeffs = vec![Complex64::new(0.0, 0.0); dim];
    for (k, c) in coeffs.iter_mut().enumerate() {
        for im in 0..dim - k {
            let i_n = im + k;
            *c += rho.get(i_n, im) * atomic_weight(two_j, proj(i_n), proj(im))?;
        }
        *c *= prefactor;
    }
    Ok(PhaseSeries::new(coeffs))
}

pub fn atomic_phase_distribution_general(rho: &ReducedDensityMatrix, m: usize) -> Result<PhaseDistribution> {
    let series = atomic_phase_series(rho)?;
    let meta = PhaseMetadata {
        t: rho.t(),
        ..Default::default()
    };
    PhaseDistribution::from_series(AngleKind::Phi, &series, m, meta)
}

/// Closed-form atomic phase distributions at `j = 1/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AtomicClosedForm {
    Coherent { alpha: f64, beta: f64 },
    SqueezedSouth { theta: f64 },
    SqueezedNorth { theta: f64 },
}

impl AtomicClosedForm {
    /// Modulation depth `C` for decay kernel value `γ`.
    pub fn contrast(&self, omega: f64, gamma: f64) -> f64 {
        let damping = (-omega * omega * gamma).exp();
        match *self {
            AtomicClosedForm::Coherent { alpha, .. } => FRAC_PI_4 * alpha.sin() * damping,
            AtomicClosedForm::SqueezedSouth { theta } | AtomicClosedForm::SqueezedNorth { theta } => {
                PI / (4.0 * theta.cosh()) * damping
            }
        }
    }

    pub fn eval(&self, omega: f64, gamma: f64, t: f64, phi: f64) -> f64 {
        let c = self.contrast(omega, gamma);
        let modulation = match *self {
            AtomicClosedForm::Coherent { beta, .. } => c * (beta + omega * t - phi).cos(),
            AtomicClosedForm::SqueezedSouth { .. } => -c * (phi - omega * t).cos(),
            AtomicClosedForm::SqueezedNorth { .. } => c * (phi - omega * t).cos(),
        };
        (1.0 + modulation) / TAU
    }
}

pub fn atomic_closed_form(
    variant: AtomicClosedForm,
    spec: &SystemSpec,
    bath: &BathParams,
    t: f64,
    m: usize,
) -> Result<PhaseDistribution> {
    let kernels = bath.kernels(t, KernelMethod::Closed)?;
    atomic_closed_form_with_kernels(variant, spec, kernels, t, m)
}

pub fn atomic_closed_form_with_kernels(
    variant: AtomicClosedForm,
    spec: &SystemSpec,
    kernels: KernelPair,
    t: f64,
    m: usize,
) -> Result<PhaseDistribution> {
    let SystemSpec::TwoLevel { omega } = *spec else {
        return Err(Error::config(format!("closed forms apply to the two-level system, got {}", spec.kind_name())));
    };
    let values = uniform_grid(m).into_iter().map(|phi| variant.eval(omega, kernels.gamma, t, phi)).collect();
    let meta = PhaseMetadata {
        t,
        ..Default::default()
    };
    PhaseDistribution::from_values(AngleKind::Phi, values, meta)
}

/// Circular summary of a distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircularStats {
    pub mean_angle: f64,
    pub resultant_length: f64,
    pub circular_variance: f64,
    pub peak_angle: f64,
    pub peak_value: f64,
}

pub fn circular_stats(pd: &PhaseDistribution) -> CircularStats {
    let m = pd.len();
    let h = TAU / m as f64;
    let moment: Complex64 = pd
        .grid
        .iter()
        .zip(&pd.values)
        .map(|(&th, &v)| Complex64::from_polar(v * h, th))
        .sum();
    let resultant_length = moment.norm().min(1.0);

    let max = pd.max_value();
    let imax = pd
        .values
        .iter()
        .position(|&v| v >= max - PEAK_TIE_REL * max.abs())
        .unwrap_or(0);
    let y0 = pd.values[imax];
    let ym = pd.values[(imax + m - 1) % m];
    let yp = pd.values[(imax + 1) % m];
    let denom = ym - 2.0 * y0 + yp;
    let (offset, peak_value) = if denom < 0.0 {
        let d = 0.5 * (ym - yp) / denom;
        (d, y0 - 0.25 * (ym - yp) * d)
    } else {
        (0.0, y0)
    };

    CircularStats {
        mean_angle: moment.arg().rem_euclid(TAU),
        resultant_length,
        circular_variance: 1.0 - resultant_length,
        peak_angle: (pd.grid[imax] + offset * h).rem_euclid(TAU),
        peak_value,
    }
}

/// Number of periodic strict local maxima whose value exceeds `ratio × min`.
pub fn count_local_maxima(pd: &PhaseDistribution, ratio: f64) -> usize {
    let m = pd.len();
    let v = &pd.values;
    let floor = ratio * pd.min_value();
    (0..m)
        .filter(|&i| {
            let (prev, next) = (v[(i + m - 1) % m], v[(i + 1) % m]);
            v[i] > prev && v[i] > next && v[i] > floor
        })
        .count()
}
