//! Initial states of the oscillator and the two-level atom.
//!
//! Oscillator states are produced as Fock-basis amplitudes (or, for the squeezed
//! coherent state, directly as a density matrix); atomic states as 2×2 density matrices
//! in the j = 1/2 Wigner–Dicke basis ordered (m = −1/2, m = +1/2).

use std::f64::consts::{FRAC_PI_2, TAU};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::specfun::{log_factorials, scaled_hermite_sequence, wigner_d, HalfInt, N_MAX};
use crate::systems::{Basis, ReducedDensityMatrix};

/// Discarded probability weight accepted when a dimension is chosen automatically.
pub const DEFAULT_TAIL_TOL: f64 = 1e-12;

/// Smallest squeeze magnitude accepted by the squeezed-state builders.
pub const R1_MIN: f64 = 1e-8;

/// Largest dimension any generator can produce.
pub const MAX_DIM: usize = N_MAX + 1;

/// Coherent state `|α⟩`, `α = |α| e^{iθ₀}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherentParams {
    alpha_mag: f64,
    theta0: f64,
}

impl CoherentParams {
    pub fn new(alpha_mag: f64, theta0: f64) -> Result<Self> {
        if !alpha_mag.is_finite() || alpha_mag < 0.0 {
            return Err(Error::domain(format!("|alpha| must be finite and >= 0, got {alpha_mag}")));
        }
        if !theta0.is_finite() {
            return Err(Error::domain("theta0 must be finite"));
        }
        Ok(Self {
            alpha_mag,
            theta0: theta0.rem_euclid(TAU),
        })
    }

    /// From the mean photon number `|α|²`.
    pub fn from_mean_number(alpha_sq: f64, theta0: f64) -> Result<Self> {
        if !(alpha_sq >= 0.0) {
            return Err(Error::domain(format!("|alpha|^2 must be >= 0, got {alpha_sq}")));
        }
        Self::new(alpha_sq.sqrt(), theta0)
    }

    pub fn alpha_mag(&self) -> f64 {
        self.alpha_mag
    }

    pub fn theta0(&self) -> f64 {
        self.theta0
    }

    pub fn alpha(&self) -> Complex64 {
        Complex64::from_polar(self.alpha_mag, self.theta0)
    }
}

/// Squeeze parameter `r₁ e^{i·phase}` (ψ for the squeezed coherent state, φ for the
/// squeezed Kerr state).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezeParams {
    r1: f64,
    phase: f64,
}

impl SqueezeParams {
    pub fn new(r1: f64, phase: f64) -> Result<Self> {
        if !r1.is_finite() || !phase.is_finite() {
            return Err(Error::domain("squeeze parameters must be finite"));
        }
        if r1 < R1_MIN {
            return Err(Error::DegenerateSqueeze { r1, min: R1_MIN });
        }
        Ok(Self { r1, phase })
    }

    pub fn r1(&self) -> f64 {
        self.r1
    }

    pub fn phase(&self) -> f64 {
        self.phase
    }
}

/// Kerr state: a coherent state twisted by `e^{−iχn(n−1)}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KerrParams {
    chi: f64,
    base: CoherentParams,
}

impl KerrParams {
    pub fn new(chi: f64, base: CoherentParams) -> Result<Self> {
        if !chi.is_finite() {
            return Err(Error::domain("Kerr phase chi must be finite"));
        }
        Ok(Self { chi, base })
    }

    pub fn chi(&self) -> f64 {
        self.chi
    }

    pub fn base(&self) -> &CoherentParams {
        &self.base
    }
}

/// Pole of the atomic squeezed state: `p = −1/2` (south) or `p = +1/2` (north).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pole {
    South,
    North,
}

impl Pole {
    pub fn projection(self) -> HalfInt {
        match self {
            Pole::South => HalfInt::MINUS_HALF,
            Pole::North => HalfInt::HALF,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Pole::South => "south",
            Pole::North => "north",
        }
    }
}

/// Initial state of the two-level atom.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AtomicStateParams {
    /// Wigner–Dicke state `|1/2, m̃⟩`.
    Dicke { m: HalfInt },
    /// Atomic coherent state `|α, β⟩` (polar angle α, azimuth β).
    Coherent { alpha: f64, beta: f64 },
    /// Atomic squeezed state `|ζ, p⟩` with `e^{2Θ} = tanh(2|ζ|)`.
    Squeezed { theta: f64, pole: Pole },
}

/// Squeeze magnitude `|ζ|` corresponding to `Θ < 0` via `e^{2Θ} = tanh(2|ζ|)`.
pub fn zeta_from_theta(theta: f64) -> Result<f64> {
    if !(theta < 0.0) || !theta.is_finite() {
        return Err(Error::domain(format!("Theta must be finite and < 0, got {theta}")));
    }
    Ok(0.5 * (2.0 * theta).exp().atanh())
}

/// `Θ = ½ ln tanh(2|ζ|)`.
pub fn theta_from_zeta(zeta: f64) -> Result<f64> {
    if !(zeta > 0.0) || !zeta.is_finite() {
        return Err(Error::domain(format!("|zeta| must be finite and > 0, got {zeta}")));
    }
    Ok(0.5 * (2.0 * zeta).tanh().ln())
}

/// Truncated amplitudes `c_n` of a pure state with the weight they leave out.
#[derive(Debug, Clone, PartialEq)]
pub struct StateCoeffs {
    coeffs: Vec<Complex64>,
    tail_weight: f64,
}

impl StateCoeffs {
    pub fn new(coeffs: Vec<Complex64>, tail_weight: f64) -> Self {
        Self { coeffs, tail_weight }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `1 − Σ|c_n|²` over the retained amplitudes (clamped at 0).
    pub fn tail_weight(&self) -> f64 {
        self.tail_weight
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Keep the first `n` amplitudes.
    pub fn truncated(&self, n: usize) -> StateCoeffs {
        let coeffs: Vec<Complex64> = self.coeffs.iter().take(n).copied().collect();
        let kept: f64 = coeffs.iter().map(|c| c.norm_sqr()).sum();
        let total = self.norm_sqr() + self.tail_weight;
        StateCoeffs {
            coeffs,
            tail_weight: (total - kept).max(0.0),
        }
    }

    /// Smallest prefix whose discarded weight is below `tol`.
    pub fn auto_truncated(&self, tol: f64) -> Result<StateCoeffs> {
        let total = self.norm_sqr() + self.tail_weight;
        let mut kept = 0.0;
        for (n, c) in self.coeffs.iter().enumerate() {
            kept += c.norm_sqr();
            if total - kept < tol {
                return Ok(self.truncated(n + 1));
            }
        }
        Err(Error::Capacity {
            index: self.coeffs.len(),
            capacity: MAX_DIM - 1,
        })
    }

    /// `|c⟩⟨c|` in the Fock basis.
    pub fn density_matrix(&self) -> Result<ReducedDensityMatrix> {
        ReducedDensityMatrix::from_pure(&self.coeffs, Basis::Number, self.tail_weight)
    }

    /// Even (k = 1/4) and odd (k = 3/4) SU(1,1) sector density matrices,
    /// `ρ_{m,n} = c_{2m} c*_{2n}` and `c_{2m+1} c*_{2n+1}`.
    pub fn sector_density_matrices(&self) -> Result<(ReducedDensityMatrix, ReducedDensityMatrix)> {
        let even: Vec<Complex64> = self.coeffs.iter().step_by(2).copied().collect();
        let mut odd: Vec<Complex64> = self.coeffs.iter().skip(1).step_by(2).copied().collect();
        if odd.is_empty() {
            odd.push(Complex64::new(0.0, 0.0));
        }
        Ok((
            ReducedDensityMatrix::from_pure(&even, Basis::Su11Even, self.tail_weight)?,
            ReducedDensityMatrix::from_pure(&odd, Basis::Su11Odd, self.tail_weight)?,
        ))
    }
}

fn check_dim(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::domain("dimension must be >= 1"));
    }
    if n > MAX_DIM {
        return Err(Error::Capacity {
            index: n - 1,
            capacity: MAX_DIM - 1,
        });
    }
    Ok(())
}

fn poisson_amplitudes(alpha_mag: f64, n: usize) -> Result<Vec<f64>> {
    let lf = log_factorials();
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        if alpha_mag == 0.0 {
            out.push(if k == 0 { 1.0 } else { 0.0 });
            continue;
        }
        let ln_amp = k as f64 * alpha_mag.ln() - 0.5 * lf.ln_factorial(k)? - 0.5 * alpha_mag * alpha_mag;
        out.push(ln_amp.exp());
    }
    Ok(out)
}

fn with_tail(coeffs: Vec<Complex64>) -> StateCoeffs {
    let kept: f64 = coeffs.iter().map(|c| c.norm_sqr()).sum();
    StateCoeffs::new(coeffs, (1.0 - kept).max(0.0))
}

/// `c_n = ⟨n|α⟩ = |α|ⁿ e^{−|α|²/2} e^{inθ₀} / √n!` for `n < dim`.
pub fn coherent_coeffs(p: &CoherentParams, dim: usize) -> Result<StateCoeffs> {
    check_dim(dim)?;
    let amps = poisson_amplitudes(p.alpha_mag, dim)?;
    let coeffs = amps
        .iter()
        .enumerate()
        .map(|(k, &a)| Complex64::from_polar(a, k as f64 * p.theta0))
        .collect();
    Ok(with_tail(coeffs))
}

/// Coherent amplitudes truncated where the discarded weight drops below `tol`.
pub fn coherent_coeffs_auto(p: &CoherentParams, tol: f64) -> Result<StateCoeffs> {
    coherent_coeffs(p, MAX_DIM)?.auto_truncated(tol)
}

/// `q_n = αⁿ e^{−|α|²/2} e^{−iχn(n−1)} / √n!`.
pub fn kerr_coeffs(p: &KerrParams, dim: usize) -> Result<StateCoeffs> {
    let base = coherent_coeffs(&p.base, dim)?;
    let coeffs = base
        .coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let kf = k as f64;
            c * Complex64::from_polar(1.0, -p.chi * kf * (kf - 1.0))
        })
        .collect();
    Ok(StateCoeffs::new(coeffs, base.tail_weight))
}

pub fn kerr_coeffs_auto(p: &KerrParams, tol: f64) -> Result<StateCoeffs> {
    kerr_coeffs(p, MAX_DIM)?.auto_truncated(tol)
}

/// Squeezed coherent state `S(ξ)D(α)|0⟩` as a density matrix in the Fock basis,
/// `ξ = r₁ e^{iψ}`:
///
/// ```text
/// ρ_mn = e^{iψ(m−n)/2} (tanh r₁)^{(m+n)/2} / (2^{(m+n)/2} √(m!n!) cosh r₁)
///        · exp[−|α|²(1 − tanh r₁ cos(2θ₀ − ψ))] · H_m(z) H*_n(z),
/// z = |α| e^{i(θ₀ − ψ/2)} / √sinh(2r₁)
/// ```
///
/// The truncated matrix is renormalised to unit trace; the trace before
/// renormalisation is kept as [`ReducedDensityMatrix::prenorm_trace`].
pub fn squeezed_coherent_dm(p: &CoherentParams, s: &SqueezeParams, dim: usize) -> Result<ReducedDensityMatrix> {
    check_dim(dim)?;
    let (amps, prefactor) = squeezed_coherent_amplitudes(p, s, dim)?;
    build_squeezed_dm(&amps, prefactor)
}

/// Squeezed coherent density matrix with the smallest dimension whose discarded
/// weight is below `tol`.
pub fn squeezed_coherent_dm_auto(p: &CoherentParams, s: &SqueezeParams, tol: f64) -> Result<ReducedDensityMatrix> {
    let (amps, prefactor) = squeezed_coherent_amplitudes(p, s, MAX_DIM)?;
    let mut kept = 0.0;
    for (n, a) in amps.iter().enumerate() {
        kept += prefactor * a.norm_sqr();
        if 1.0 - kept < tol {
            return build_squeezed_dm(&amps[..=n], prefactor);
        }
    }
    Err(Error::Capacity {
        index: MAX_DIM,
        capacity: MAX_DIM - 1,
    })
}

// Returns the rank-one factor `a_n` and the scalar prefactor with ρ = prefactor · a a†.
fn squeezed_coherent_amplitudes(p: &CoherentParams, s: &SqueezeParams, dim: usize) -> Result<(Vec<Complex64>, f64)> {
    let (r1, psi) = (s.r1, s.phase);
    let z = Complex64::from_polar(p.alpha_mag / (2.0 * r1).sinh().sqrt(), p.theta0 - 0.5 * psi);
    let hermite = scaled_hermite_sequence(dim, z)?;
    let ln_tanh = r1.tanh().ln();
    // H_n / (2^{n/2} √n!) is exactly the scaled Hermite value.
    let amps = hermite
        .iter()
        .enumerate()
        .map(|(n, h)| {
            let nf = n as f64;
            Complex64::from_polar((0.5 * nf * ln_tanh).exp(), 0.5 * psi * nf) * h
        })
        .collect();
    let prefactor = (-p.alpha_mag.powi(2) * (1.0 - r1.tanh() * (2.0 * p.theta0 - psi).cos())).exp() / r1.cosh();
    Ok((amps, prefactor))
}

fn build_squeezed_dm(amps: &[Complex64], prefactor: f64) -> Result<ReducedDensityMatrix> {
    let n = amps.len();
    let entries = DMatrix::from_fn(n, n, |i, j| prefactor * amps[i] * amps[j].conj());
    let trace = entries.trace().re;
    if !(trace > 0.0) {
        return Err(Error::Numerical("squeezed coherent state has vanishing weight in the retained basis".into()));
    }
    let normalized = entries / Complex64::new(trace, 0.0);
    let rho = ReducedDensityMatrix::new(normalized, Basis::Number, (1.0 - trace).max(0.0))?;
    Ok(rho.with_prenorm_trace(trace))
}

// Terminating ₂F₁(−p, −m; c; x) as (scaled sum, ln scale), immune to overflow of the
// individual terms.
fn hyp2f1_scaled(p: usize, m: usize, c: f64, x: f64) -> (f64, f64) {
    let terms = p.min(m);
    let mut ln_abs = Vec::with_capacity(terms + 1);
    let mut signs = Vec::with_capacity(terms + 1);
    let (mut ln_t, mut sign) = (0.0f64, 1.0f64);
    ln_abs.push(ln_t);
    signs.push(sign);
    for s in 0..terms {
        let sf = s as f64;
        let ratio = (sf - p as f64) * (sf - m as f64) / ((c + sf) * (sf + 1.0)) * x;
        ln_t += ratio.abs().ln();
        sign *= ratio.signum();
        ln_abs.push(ln_t);
        signs.push(sign);
    }
    let scale = ln_abs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let sum = ln_abs.iter().zip(&signs).map(|(l, s)| s * (l - scale).exp()).sum();
    (sum, scale)
}

/// Fock-basis matrix element `G_{mp}(z) = ⟨m|S(z)|p⟩` of the squeeze operator with
/// `z = r₁ e^{iφ}`, nonzero only when `m` and `p` share parity:
///
/// ```text
/// G_{2m,2p}     = (−1)^p/(p! m!) √((2p)!(2m)!/cosh r₁)   e^{i(m−p)φ} (tanh r₁/2)^{m+p} ₂F₁(−p,−m;1/2;−1/sinh²r₁)
/// G_{2m+1,2p+1} = (−1)^p/(p! m!) √((2p+1)!(2m+1)!/cosh³r₁) e^{i(m−p)φ} (tanh r₁/2)^{m+p} ₂F₁(−p,−m;3/2;−1/sinh²r₁)
/// ```
///
/// These are the matrix elements of `exp(½ z a†² − ½ z* a²)`.
pub fn squeeze_matrix_element(m: usize, p: usize, s: &SqueezeParams) -> Result<Complex64> {
    if s.r1 < R1_MIN {
        return Err(Error::DegenerateSqueeze { r1: s.r1, min: R1_MIN });
    }
    if (m + p) % 2 == 1 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let odd = m % 2 == 1;
    let (mh, ph) = (m / 2, p / 2);
    let lf = log_factorials();
    let r1 = s.r1;
    let (c, cosh_power) = if odd { (1.5, 1.5) } else { (0.5, 0.5) };
    let ln_mag = 0.5 * (lf.ln_factorial(p)? + lf.ln_factorial(m)?) - lf.ln_factorial(ph)? - lf.ln_factorial(mh)?
        - cosh_power * r1.cosh().ln()
        + (mh + ph) as f64 * (0.5 * r1.tanh()).ln();
    let x = -1.0 / r1.sinh().powi(2);
    let (f_scaled, f_ln_scale) = hyp2f1_scaled(ph, mh, c, x);
    let sign = if ph % 2 == 0 { 1.0 } else { -1.0 };
    let magnitude = sign * f_scaled * (ln_mag + f_ln_scale).exp();
    Ok(Complex64::from_polar(magnitude, (mh as f64 - ph as f64) * s.phase))
}

/// Squeezed Kerr amplitudes `s_n = Σ_p G_{n,p}(z) q_p`, summed over `p` of the same
/// parity as `n`.
pub fn squeezed_kerr_coeffs(p: &KerrParams, s: &SqueezeParams, dim: usize) -> Result<StateCoeffs> {
    check_dim(dim)?;
    // Kerr amplitudes are kept to a tighter tail than the output needs.
    let q = kerr_coeffs_auto(p, 1e-16).or_else(|_| kerr_coeffs(p, MAX_DIM))?;
    let mut out = Vec::with_capacity(dim);
    for n in 0..dim {
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, qk) in q.coeffs.iter().enumerate().skip(n % 2).step_by(2) {
            acc += squeeze_matrix_element(n, k, s)? * qk;
        }
        out.push(acc);
    }
    Ok(with_tail(out))
}

pub fn squeezed_kerr_coeffs_auto(p: &KerrParams, s: &SqueezeParams, tol: f64) -> Result<StateCoeffs> {
    squeezed_kerr_coeffs(p, s, MAX_DIM)?.auto_truncated(tol)
}

/// `|A_p|²` of the atomic squeezed state from its closed-form sum,
/// `(Σ_r (−1)^r (2j−r)! cosh^{2j−2r}Θ / (r!(j+p−r)!(j−p−r)!))^{−1}`.
pub fn atomic_squeezed_norm_sq(j: HalfInt, p: HalfInt, theta: f64) -> Result<f64> {
    if p.twice().abs() > j.twice() || (j.twice() - p.twice()) % 2 != 0 {
        return Err(Error::domain(format!("invalid projection p = {p} for j = {j}")));
    }
    let two_j = j.twice() as usize;
    let j_plus_p = ((j.twice() + p.twice()) / 2) as usize;
    let j_minus_p = ((j.twice() - p.twice()) / 2) as usize;
    let lf = log_factorials();
    let ch = theta.cosh();
    let mut sum = 0.0;
    for r in 0..=j_plus_p.min(j_minus_p) {
        let ln_mag = lf.ln_factorial(two_j - r)? - lf.ln_factorial(r)? - lf.ln_factorial(j_plus_p - r)?
            - lf.ln_factorial(j_minus_p - r)?;
        let sign = if r % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * ln_mag.exp() * ch.powi((two_j - 2 * r) as i32);
    }
    Ok(1.0 / sum)
}

/// Amplitudes `⟨j,n|ζ,p⟩ / A_p = e^{nΘ} d^j_{np}(π/2)` for `n = −j..=j`.
pub fn atomic_squeezed_unnormalized(j: HalfInt, p: HalfInt, theta: f64) -> Result<Vec<f64>> {
    (-j.twice()..=j.twice())
        .step_by(2)
        .map(|tn| {
            let n = HalfInt::from_twice(tn);
            Ok((n.value() * theta).exp() * wigner_d(j, n, p, FRAC_PI_2)?)
        })
        .collect()
}

/// Relative tolerance between numerical normalisation and the closed-form `|A_p|²`.
const NORM_CROSSCHECK_TOL: f64 = 1e-12;

/// 2×2 initial density matrix of the two-level atom.
pub fn atomic_initial_dm(p: &AtomicStateParams) -> Result<ReducedDensityMatrix> {
    let amps: [Complex64; 2] = match *p {
        AtomicStateParams::Dicke { m } => match m.twice() {
            -1 => [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
            1 => [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
            _ => return Err(Error::domain(format!("Dicke projection must be ±1/2, got {m}"))),
        },
        AtomicStateParams::Coherent { alpha, beta } => {
            if !alpha.is_finite() || !beta.is_finite() || !(0.0..=std::f64::consts::PI).contains(&alpha) {
                return Err(Error::domain(format!(
                    "atomic coherent angles need alpha in [0, pi] and finite beta, got ({alpha}, {beta})"
                )));
            }
            let (s, c) = (0.5 * alpha).sin_cos();
            // ⟨j,m|α,β⟩ = (2j choose j+m)^{1/2} sin^{j+m}(α/2) cos^{j−m}(α/2) e^{−i(j+m)β}
            [Complex64::new(c, 0.0), Complex64::from_polar(s, -beta)]
        }
        AtomicStateParams::Squeezed { theta, pole } => {
            if !(theta < 0.0) || !theta.is_finite() {
                return Err(Error::domain(format!("Theta must be finite and < 0, got {theta}")));
            }
            let j = HalfInt::HALF;
            let raw = atomic_squeezed_unnormalized(j, pole.projection(), theta)?;
            let norm_sq: f64 = raw.iter().map(|a| a * a).sum();
            let a_sq = 1.0 / norm_sq;
            let closed = atomic_squeezed_norm_sq(j, pole.projection(), theta)?;
            if ((a_sq - closed) / closed).abs() > NORM_CROSSCHECK_TOL {
                return Err(Error::Numerical(format!(
                    "|A_p|^2 from normalisation ({a_sq}) disagrees with the closed form ({closed})"
                )));
            }
            let scale = a_sq.sqrt();
            [Complex64::new(raw[0] * scale, 0.0), Complex64::new(raw[1] * scale, 0.0)]
        }
    };
    ReducedDensityMatrix::from_pure(&amps, Basis::DickeHalf, 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alpha5() -> CoherentParams {
        CoherentParams::from_mean_number(5.0, 0.0).unwrap()
    }

    #[test]
    fn vacuum_coefficients() {
        let c = coherent_coeffs(&CoherentParams::new(0.0, 0.0).unwrap(), 4).unwrap();
        assert_eq!(
            c.coeffs(),
            &[Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)]
        );
        assert_eq!(c.tail_weight(), 0.0);
    }

    #[test]
    fn coherent_ratio_identity() {
        let c = coherent_coeffs(&alpha5(), 60).unwrap();
        let ratio = c.coeffs()[5] / c.coeffs()[4];
        assert!((ratio - Complex64::new(1.0, 0.0)).norm() < 1e-14);
        assert!(c.norm_sqr() > 1.0 - 1e-12);
        assert!(c.tail_weight() < 1e-12);
    }

    #[test]
    fn coherent_phase_convention() {
        let p = CoherentParams::new(1.3, 0.4).unwrap();
        let c = coherent_coeffs(&p, 5).unwrap();
        assert!((c.coeffs()[3].arg() - 1.2).abs() < 1e-14);
    }

    #[test]
    fn auto_dimension_is_minimal() {
        let c = coherent_coeffs_auto(&alpha5(), DEFAULT_TAIL_TOL).unwrap();
        assert!(c.tail_weight() < DEFAULT_TAIL_TOL);
        let shorter = coherent_coeffs(&alpha5(), c.len() - 1).unwrap();
        assert!(shorter.tail_weight() >= DEFAULT_TAIL_TOL);
    }

    #[test]
    fn kerr_phase_values() {
        let k = KerrParams::new(0.02, alpha5()).unwrap();
        let q = kerr_coeffs(&k, 60).unwrap();
        let c = coherent_coeffs(&alpha5(), 60).unwrap();
        assert!((q.coeffs()[3].arg() + 0.12).abs() < 1e-14);
        for (a, b) in q.coeffs().iter().zip(c.coeffs()) {
            assert!((a.norm() - b.norm()).abs() < 1e-16);
        }
        let k0 = KerrParams::new(0.0, alpha5()).unwrap();
        assert_eq!(kerr_coeffs(&k0, 60).unwrap(), c);
    }

    #[test]
    fn squeeze_selection_rule_and_vacuum_element() {
        let s = SqueezeParams::new(0.4, 0.0).unwrap();
        assert_eq!(squeeze_matrix_element(1, 0, &s).unwrap(), Complex64::new(0.0, 0.0));
        let g00 = squeeze_matrix_element(0, 0, &s).unwrap();
        assert!((g00.re - 1.0 / 0.4f64.cosh().sqrt()).abs() < 1e-15);
    }

    #[test]
    fn degenerate_squeeze_guard() {
        assert!(matches!(SqueezeParams::new(1e-9, 0.0), Err(Error::DegenerateSqueeze { .. })));
        assert!(SqueezeParams::new(R1_MIN, 0.0).is_ok());
    }

    #[test]
    fn squeeze_columns_are_normalized() {
        let s = SqueezeParams::new(0.4, 0.3).unwrap();
        for p in 0..4 {
            let norm: f64 = (0..=120).map(|m| squeeze_matrix_element(m, p, &s).unwrap().norm_sqr()).sum();
            assert!((norm - 1.0).abs() < 1e-10, "column {p}: {norm}");
        }
    }

    #[test]
    fn scaled_hypergeometric_matches_direct_sum() {
        for (p, m, c, x) in [(3, 4, 1.5, -0.8), (10, 7, 0.5, -5.9), (0, 5, 0.5, -2.0), (12, 12, 1.5, -0.3)] {
            let (s, l) = hyp2f1_scaled(p, m, c, x);
            let direct = crate::specfun::hyp2f1_terminating(p, m, c, x).unwrap();
            assert!((s * l.exp() - direct).abs() <= 1e-12 * direct.abs().max(1.0), "{p} {m}");
        }
    }

    #[test]
    fn squeezed_coherent_is_a_normalized_state() {
        let s = SqueezeParams::new(0.5, std::f64::consts::FRAC_PI_4).unwrap();
        let rho = squeezed_coherent_dm_auto(&alpha5(), &s, DEFAULT_TAIL_TOL).unwrap();
        assert!((rho.trace().re - 1.0).abs() < 1e-14);
        assert!(rho.trunc_error() < DEFAULT_TAIL_TOL);
        let pre = rho.prenorm_trace().unwrap();
        assert!((pre - 1.0).abs() < DEFAULT_TAIL_TOL);
        assert!(rho.hermiticity_error() < 1e-14);
    }

    #[test]
    fn squeezed_kerr_norm() {
        let k = KerrParams::new(0.02, alpha5()).unwrap();
        let s = SqueezeParams::new(0.4, 0.0).unwrap();
        let sk = squeezed_kerr_coeffs(&k, &s, 120).unwrap();
        assert!((sk.norm_sqr() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn squeezed_kerr_parity_structure() {
        // An even-only Kerr input populates only even outputs.
        let s = SqueezeParams::new(0.4, 0.2).unwrap();
        let q: Vec<Complex64> = (0..20).map(|n| if n % 2 == 0 { Complex64::new(0.1, 0.0) } else { Complex64::new(0.0, 0.0) }).collect();
        for n in (1..30).step_by(2) {
            let acc: Complex64 = q
                .iter()
                .enumerate()
                .map(|(k, qk)| squeeze_matrix_element(n, k, &s).unwrap() * qk)
                .sum();
            assert_eq!(acc, Complex64::new(0.0, 0.0));
        }
    }

    #[test]
    fn atomic_states() {
        let up = atomic_initial_dm(&AtomicStateParams::Dicke { m: HalfInt::HALF }).unwrap();
        assert_eq!(up.get(0, 0), Complex64::new(0.0, 0.0));
        assert_eq!(up.get(1, 1), Complex64::new(1.0, 0.0));

        let q = std::f64::consts::FRAC_PI_4;
        let coh = atomic_initial_dm(&AtomicStateParams::Coherent { alpha: q, beta: q }).unwrap();
        assert!((coh.get(0, 0).re - 0.853_553_390_593_273_7).abs() < 1e-15);
        assert!((coh.get(1, 1).re - 0.146_446_609_406_726_24).abs() < 1e-15);

        let theta = -0.5494;
        let sq = atomic_initial_dm(&AtomicStateParams::Squeezed { theta, pole: Pole::South }).unwrap();
        let a_sq = 1.0 / theta.cosh();
        assert!((sq.get(0, 0).re - 0.5 * a_sq * (-theta).exp()).abs() < 1e-15);
        assert!((sq.get(1, 1).re - 0.5 * a_sq * theta.exp()).abs() < 1e-15);
        assert!((sq.get(1, 0).re + 0.5 * a_sq).abs() < 1e-15);
    }

    #[test]
    fn atomic_domain_errors() {
        assert!(matches!(
            atomic_initial_dm(&AtomicStateParams::Dicke { m: HalfInt::from_twice(3) }),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            atomic_initial_dm(&AtomicStateParams::Squeezed { theta: 0.1, pole: Pole::North }),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            atomic_initial_dm(&AtomicStateParams::Coherent { alpha: 4.0, beta: 0.0 }),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn zeta_theta_conversion() {
        let zeta = zeta_from_theta(-0.5494).unwrap();
        assert!((zeta - 0.1733).abs() < 1e-4);
        assert!((theta_from_zeta(zeta).unwrap() + 0.5494).abs() < 1e-13);
    }

    #[test]
    fn closed_form_norm_general_j() {
        for tj in 1..=6 {
            let j = HalfInt::from_twice(tj);
            for tp in (-tj..=tj).step_by(2) {
                let p = HalfInt::from_twice(tp);
                for theta in [-0.2, -0.5494, -1.3] {
                    let raw = atomic_squeezed_unnormalized(j, p, theta).unwrap();
                    let numeric = 1.0 / raw.iter().map(|a| a * a).sum::<f64>();
                    let closed = atomic_squeezed_norm_sq(j, p, theta).unwrap();
                    assert!(((numeric - closed) / closed).abs() < 1e-12, "j={j} p={p} theta={theta}");
                }
            }
        }
    }
}
