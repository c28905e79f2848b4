//! Dephasing kernels of an Ohmic squeezed thermal bath.
//!
//! For the spectral density `I(ω) = (γ₀/π) ω e^{−ω/ω_c}`, with constant squeezing
//! magnitude `r` and squeezing phase `Φ(ω) = aω`,
//!
//! ```text
//! η(t) = −∫₀^∞ dω I(ω)/ω² sin(ωt)
//! γ(t) = ½ ∫₀^∞ dω I(ω)/ω² coth(ω/2T) |(e^{iωt}−1) cosh r + (e^{−iωt}−1) sinh r e^{2iaω}|²
//! ```
//!
//! `η` has the closed form `−(γ₀/π) arctan(ω_c t)`. `γ` has closed forms at `T = 0`
//! and in the high-temperature limit (where `coth(ω/2T)` is replaced by `2T/ω`), both
//! valid for `t > 2a`. The quadrature routines evaluate the integrals directly and act
//! as the reference for the closed forms.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quadrature::{integrate, QuadratureConfig};

/// Upper limit of the frequency integrals in units of ω_c; `e^{−40} < 5e−18`.
pub const CUTOFF_MULTIPLE: f64 = 40.0;

/// Which closed form of γ(t) applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    ZeroTemperature,
    HighTemperature,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::ZeroTemperature => "zero_temperature",
            Regime::HighTemperature => "high_temperature",
        }
    }
}

/// How [`BathParams::kernels`] evaluates η and γ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum KernelMethod {
    #[default]
    Closed,
    Quadrature,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BathParams {
    gamma0: f64,
    omega_c: f64,
    temperature: f64,
    squeeze_r: f64,
    squeeze_a: f64,
    regime: Regime,
}

/// η(t) and γ(t) at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelPair {
    pub eta: f64,
    pub gamma: f64,
}

impl KernelPair {
    pub const ZERO: KernelPair = KernelPair { eta: 0.0, gamma: 0.0 };
}

impl BathParams {
    pub fn new(
        gamma0: f64,
        omega_c: f64,
        temperature: f64,
        squeeze_r: f64,
        squeeze_a: f64,
        regime: Regime,
    ) -> Result<Self> {
        let finite = [gamma0, omega_c, temperature, squeeze_r, squeeze_a]
            .iter()
            .all(|v| v.is_finite());
        if !finite {
            return Err(Error::config("bath parameters must be finite"));
        }
        if gamma0 < 0.0 {
            return Err(Error::config(format!("gamma0 must be >= 0, got {gamma0}")));
        }
        if omega_c <= 0.0 {
            return Err(Error::config(format!("omega_c must be > 0, got {omega_c}")));
        }
        if temperature < 0.0 {
            return Err(Error::config(format!("temperature must be >= 0, got {temperature}")));
        }
        if squeeze_a < 0.0 {
            return Err(Error::config(format!("bath squeezing slope a must be >= 0, got {squeeze_a}")));
        }
        match (regime, temperature == 0.0) {
            (Regime::ZeroTemperature, false) => {
                return Err(Error::config(format!(
                    "zero_temperature regime requires T = 0, got T = {temperature}"
                )))
            }
            (Regime::HighTemperature, true) => {
                return Err(Error::config("high_temperature regime requires T > 0"))
            }
            _ => {}
        }
        Ok(Self {
            gamma0,
            omega_c,
            temperature,
            squeeze_r,
            squeeze_a,
            regime,
        })
    }

    /// Zero-temperature bath.
    pub fn zero_temperature(gamma0: f64, omega_c: f64, squeeze_r: f64, squeeze_a: f64) -> Result<Self> {
        Self::new(gamma0, omega_c, 0.0, squeeze_r, squeeze_a, Regime::ZeroTemperature)
    }

    /// High-temperature bath (`T > 0`).
    pub fn high_temperature(gamma0: f64, omega_c: f64, temperature: f64, squeeze_r: f64, squeeze_a: f64) -> Result<Self> {
        Self::new(gamma0, omega_c, temperature, squeeze_r, squeeze_a, Regime::HighTemperature)
    }

    pub fn gamma0(&self) -> f64 {
        self.gamma0
    }
    pub fn omega_c(&self) -> f64 {
        self.omega_c
    }
    pub fn temperature(&self) -> f64 {
        self.temperature
    }
    pub fn squeeze_r(&self) -> f64 {
        self.squeeze_r
    }
    pub fn squeeze_a(&self) -> f64 {
        self.squeeze_a
    }
    pub fn regime(&self) -> Regime {
        self.regime
    }

    /// Same bath with a different coupling strength.
    pub fn with_gamma0(&self, gamma0: f64) -> Result<Self> {
        Self::new(gamma0, self.omega_c, self.temperature, self.squeeze_r, self.squeeze_a, self.regime)
    }

    /// `I(ω) = (γ₀/π) ω e^{−ω/ω_c}`.
    pub fn spectral_density(&self, omega: f64) -> f64 {
        self.gamma0 / PI * omega * (-omega / self.omega_c).exp()
    }

    /// Both kernels at time `t`. At `t = 0` the integrals vanish identically and no
    /// validity window applies.
    pub fn kernels(&self, t: f64, method: KernelMethod) -> Result<KernelPair> {
        if t < 0.0 || !t.is_finite() {
            return Err(Error::domain(format!("time must be finite and >= 0, got {t}")));
        }
        if t == 0.0 {
            return Ok(KernelPair::ZERO);
        }
        match method {
            KernelMethod::Closed => Ok(KernelPair {
                eta: self.eta_closed(t)?,
                gamma: self.gamma_closed(t)?,
            }),
            KernelMethod::Quadrature => Ok(KernelPair {
                eta: self.eta_quadrature(t)?,
                gamma: self.gamma_quadrature(t)?,
            }),
        }
    }

    /// `η(t) = −(γ₀/π) arctan(ω_c t)`.
    pub fn eta_closed(&self, t: f64) -> Result<f64> {
        if t < 0.0 {
            return Err(Error::domain(format!("eta(t) needs t >= 0, got {t}")));
        }
        Ok(-self.gamma0 / PI * (self.omega_c * t).atan())
    }

    /// Closed-form γ(t) for the bath's regime. Valid only for `t > 2a`.
    pub fn gamma_closed(&self, t: f64) -> Result<f64> {
        let a = self.squeeze_a;
        if !(t > 2.0 * a) {
            return Err(Error::domain(format!(
                "closed-form gamma(t) is only valid for t > 2a (t = {t}, a = {a})"
            )));
        }
        match self.regime {
            Regime::ZeroTemperature => Ok(self.gamma_zero_temperature(t)),
            Regime::HighTemperature => Ok(self.gamma_high_temperature(t)),
        }
    }

    fn gamma_zero_temperature(&self, t: f64) -> f64 {
        let (g0, wc, a) = (self.gamma0, self.omega_c, self.squeeze_a);
        let (c2r, s2r) = ((2.0 * self.squeeze_r).cosh(), (2.0 * self.squeeze_r).sinh());
        let thermal = g0 / (2.0 * PI) * c2r * (wc * t).powi(2).ln_1p();
        let (u, v) = (wc * (t - a), wc * (t - 2.0 * a));
        let shifted = (4.0 * u * u).ln_1p() - 2.0 * (v * v).ln_1p();
        thermal - g0 / (4.0 * PI) * s2r * shifted - g0 / (4.0 * PI) * s2r * (4.0 * a * a * wc * wc).ln_1p()
    }

    fn gamma_high_temperature(&self, t: f64) -> f64 {
        let (g0, wc, a, temp) = (self.gamma0, self.omega_c, self.squeeze_a, self.temperature);
        let (c2r, s2r) = ((2.0 * self.squeeze_r).cosh(), (2.0 * self.squeeze_r).sinh());
        let x = wc * t;
        let thermal = g0 * temp / (PI * wc) * c2r * (2.0 * x * x.atan() - (x * x).ln_1p());
        let u = wc * (t - a);
        let v = wc * (t - 2.0 * a);
        let w = a * wc;
        let bracket = 4.0 * u * (2.0 * u).atan() - 4.0 * v * v.atan()
            + 4.0 * w * (2.0 * w).atan()
            + 2.0 * (v * v).ln_1p()
            - (4.0 * u * u).ln_1p()
            - (4.0 * w * w).ln_1p();
        thermal - g0 * temp / (2.0 * PI * wc) * s2r * bracket
    }

    fn upper_limit(&self) -> f64 {
        CUTOFF_MULTIPLE * self.omega_c
    }

    /// η(t) by adaptive quadrature of its defining integral.
    pub fn eta_quadrature(&self, t: f64) -> Result<f64> {
        self.eta_quadrature_with(t, QuadratureConfig::default())
    }

    pub fn eta_quadrature_with(&self, t: f64, cfg: QuadratureConfig) -> Result<f64> {
        if t < 0.0 {
            return Err(Error::domain(format!("eta(t) needs t >= 0, got {t}")));
        }
        if t == 0.0 || self.gamma0 == 0.0 {
            return Ok(0.0);
        }
        let integrand = |w: f64| -self.eta_integrand(w, t);
        Ok(integrate(integrand, 0.0, self.upper_limit(), cfg)?.value)
    }

    /// γ(t) by adaptive quadrature with the full `coth(ω/2T)` kernel (1 at `T = 0`).
    pub fn gamma_quadrature(&self, t: f64) -> Result<f64> {
        self.gamma_quadrature_with(t, QuadratureConfig::default())
    }

    pub fn gamma_quadrature_with(&self, t: f64, cfg: QuadratureConfig) -> Result<f64> {
        if t < 0.0 {
            return Err(Error::domain(format!("gamma(t) needs t >= 0, got {t}")));
        }
        if t == 0.0 || self.gamma0 == 0.0 {
            return Ok(0.0);
        }
        let integrand = |w: f64| self.gamma_integrand(w, t);
        Ok(integrate(integrand, 0.0, self.upper_limit(), cfg)?.value)
    }

    /// `I(ω) sin(ωt) / ω²`, the integrand of −η.
    pub fn eta_integrand(&self, omega: f64, t: f64) -> f64 {
        self.gamma0 / PI * (-omega / self.omega_c).exp() * (omega * t).sin() / omega
    }

    /// Integrand of γ(t), finite as ω → 0.
    pub fn gamma_integrand(&self, omega: f64, t: f64) -> f64 {
        let (r, a) = (self.squeeze_r, self.squeeze_a);
        // e^{±iωt} − 1 = ±2i sin(ωt/2) e^{±iωt/2}, exact for small ω
        let s = (0.5 * omega * t).sin();
        let plus = Complex64::new(0.0, 2.0 * s) * Complex64::from_polar(1.0, 0.5 * omega * t);
        let minus = Complex64::new(0.0, -2.0 * s) * Complex64::from_polar(1.0, -0.5 * omega * t);
        let amp = plus * r.cosh() + minus * r.sinh() * Complex64::from_polar(1.0, 2.0 * a * omega);
        let thermal = if self.temperature == 0.0 {
            1.0
        } else {
            1.0 / (omega / (2.0 * self.temperature)).tanh()
        };
        0.5 * self.gamma0 / PI * (-omega / self.omega_c).exp() / omega * thermal * amp.norm_sqr()
    }
}
