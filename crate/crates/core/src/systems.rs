//! System spectra and the QND propagator of the reduced density matrix.
//!
//! Because the system Hamiltonian commutes with the coupling, every element of the
//! reduced density matrix in the energy eigenbasis evolves independently:
//!
//! ```text
//! ρ_nm(t) = exp[−i(E_n − E_m)t + iη(t)(E_n² − E_m²) − (E_n − E_m)² γ(t)] ρ_nm(0)
//! ```

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::bath::{BathParams, KernelMethod, KernelPair};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SystemSpec {
    /// `H = ω(a†a + ½)`.
    Harmonic { omega: f64 },
    /// `H = ω(a†a + ½) + (λ/2) a†² a²`.
    Anharmonic { omega: f64, lambda: f64 },
    /// `H = (ω/2) σ_Z`, i.e. spin j = 1/2.
    TwoLevel { omega: f64 },
}

impl SystemSpec {
    pub fn harmonic(omega: f64) -> Result<Self> {
        check_omega(omega)?;
        Ok(SystemSpec::Harmonic { omega })
    }

    pub fn anharmonic(omega: f64, lambda: f64) -> Result<Self> {
        check_omega(omega)?;
        if !(lambda >= 0.0) || !lambda.is_finite() {
            return Err(Error::config(format!("anharmonicity lambda must be >= 0, got {lambda}")));
        }
        Ok(SystemSpec::Anharmonic { omega, lambda })
    }

    pub fn two_level(omega: f64) -> Result<Self> {
        check_omega(omega)?;
        Ok(SystemSpec::TwoLevel { omega })
    }

    pub fn omega(&self) -> f64 {
        match *self {
            SystemSpec::Harmonic { omega } | SystemSpec::Anharmonic { omega, .. } | SystemSpec::TwoLevel { omega } => omega,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            SystemSpec::Harmonic { .. } => "harmonic",
            SystemSpec::Anharmonic { .. } => "anharmonic",
            SystemSpec::TwoLevel { .. } => "two_level",
        }
    }
}

fn check_omega(omega: f64) -> Result<()> {
    if !(omega > 0.0) || !omega.is_finite() {
        return Err(Error::config(format!("system frequency omega must be > 0, got {omega}")));
    }
    Ok(())
}

/// Basis in which a reduced density matrix is expressed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Basis {
    /// Fock states |n⟩.
    Number,
    /// SU(1,1) discrete series, Bargmann index k = 1/4: |m, 1/4⟩ = |2m⟩.
    Su11Even,
    /// Bargmann index k = 3/4: |m, 3/4⟩ = |2m+1⟩.
    Su11Odd,
    /// Wigner–Dicke states of j = 1/2; index 0 ↔ m = −1/2, index 1 ↔ m = +1/2.
    DickeHalf,
}

impl Basis {
    pub fn as_str(self) -> &'static str {
        match self {
            Basis::Number => "number",
            Basis::Su11Even => "su11_even",
            Basis::Su11Odd => "su11_odd",
            Basis::DickeHalf => "dicke_j_half",
        }
    }

    /// Bargmann index for the SU(1,1) sectors.
    pub fn bargmann_index(self) -> Option<f64> {
        match self {
            Basis::Su11Even => Some(0.25),
            Basis::Su11Odd => Some(0.75),
            _ => None,
        }
    }

    /// Fock number of sector index `m`, when the basis is a set of Fock states.
    pub fn fock_number(self, m: usize) -> Option<usize> {
        match self {
            Basis::Number => Some(m),
            Basis::Su11Even => Some(2 * m),
            Basis::Su11Odd => Some(2 * m + 1),
            Basis::DickeHalf => None,
        }
    }
}

/// Energy of basis state `n` (ħ = 1).
pub fn energy(spec: &SystemSpec, basis: Basis, n: usize) -> Result<f64> {
    match (*spec, basis) {
        (SystemSpec::Harmonic { omega }, Basis::Number) => Ok(omega * (n as f64 + 0.5)),
        (SystemSpec::Anharmonic { omega, lambda }, Basis::Number) => {
            let nf = n as f64;
            Ok(omega * (nf + 0.5) + 0.5 * lambda * nf * (nf - 1.0))
        }
        (SystemSpec::Anharmonic { omega, lambda }, Basis::Su11Even | Basis::Su11Odd) => {
            let k = basis.bargmann_index().expect("su11 basis");
            let m = n as f64;
            Ok(2.0 * (omega * (m + k) + lambda * m * (m + 2.0 * k - 1.0)))
        }
        (SystemSpec::TwoLevel { omega }, Basis::DickeHalf) => match n {
            0 => Ok(-0.5 * omega),
            1 => Ok(0.5 * omega),
            _ => Err(Error::domain(format!("two-level index must be 0 or 1, got {n}"))),
        },
        (spec, basis) => Err(Error::config(format!(
            "basis {} is not an eigenbasis supported for the {} system",
            basis.as_str(),
            spec.kind_name()
        ))),
    }
}

/// Truncated reduced density matrix with its basis and evolution time.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedDensityMatrix {
    entries: DMatrix<Complex64>,
    basis: Basis,
    t: f64,
    trunc_error: f64,
    prenorm_trace: Option<f64>,
}

/// Tolerance for the Hermiticity check on construction.
pub const HERMITIAN_TOL: f64 = 1e-12;

impl ReducedDensityMatrix {
    /// Initial (t = 0) density matrix. `trunc_error` bounds the probability weight
    /// discarded by truncation.
    pub fn new(entries: DMatrix<Complex64>, basis: Basis, trunc_error: f64) -> Result<Self> {
        if entries.nrows() != entries.ncols() || entries.nrows() == 0 {
            return Err(Error::domain(format!(
                "density matrix must be square and non-empty, got {}x{}",
                entries.nrows(),
                entries.ncols()
            )));
        }
        if basis == Basis::DickeHalf && entries.nrows() != 2 {
            return Err(Error::domain("the j = 1/2 Dicke basis has dimension 2"));
        }
        if !(trunc_error >= 0.0) {
            return Err(Error::domain(format!("trunc_error must be >= 0, got {trunc_error}")));
        }
        let rho = Self {
            entries,
            basis,
            t: 0.0,
            trunc_error,
            prenorm_trace: None,
        };
        let dev = rho.hermiticity_error();
        if dev > HERMITIAN_TOL {
            return Err(Error::domain(format!("density matrix is not Hermitian (max deviation {dev:e})")));
        }
        Ok(rho)
    }

    /// Pure state `|c⟩⟨c|`.
    pub fn from_pure(coeffs: &[Complex64], basis: Basis, trunc_error: f64) -> Result<Self> {
        let n = coeffs.len();
        let entries = DMatrix::from_fn(n, n, |i, j| coeffs[i] * coeffs[j].conj());
        Self::new(entries, basis, trunc_error)
    }

    pub(crate) fn with_prenorm_trace(mut self, trace: f64) -> Self {
        self.prenorm_trace = Some(trace);
        self
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn trunc_error(&self) -> f64 {
        self.trunc_error
    }

    /// Trace before renormalisation, for builders that renormalise.
    pub fn prenorm_trace(&self) -> Option<f64> {
        self.prenorm_trace
    }

    pub fn trace(&self) -> Complex64 {
        self.entries.trace()
    }

    pub fn get(&self, n: usize, m: usize) -> Complex64 {
        self.entries[(n, m)]
    }

    pub fn hermiticity_error(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self.entries[(i, j)] - self.entries[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// Smallest eigenvalue of the Hermitian part.
    pub fn min_eigenvalue(&self) -> f64 {
        let herm = (&self.entries + self.entries.adjoint()) * Complex64::new(0.5, 0.0);
        herm.symmetric_eigenvalues().iter().copied().fold(f64::INFINITY, f64::min)
    }
}

fn energies(spec: &SystemSpec, basis: Basis, dim: usize) -> Result<Vec<f64>> {
    (0..dim).map(|n| energy(spec, basis, n)).collect()
}

/// Evolve an initial density matrix to time `t` using the closed-form bath kernels.
pub fn propagate(rho0: &ReducedDensityMatrix, spec: &SystemSpec, bath: &BathParams, t: f64) -> Result<ReducedDensityMatrix> {
    let kernels = bath.kernels(t, KernelMethod::Closed)?;
    propagate_with_kernels(rho0, spec, kernels, t)
}

/// Evolve an initial density matrix to time `t` given η(t) and γ(t).
pub fn propagate_with_kernels(
    rho0: &ReducedDensityMatrix,
    spec: &SystemSpec,
    kernels: KernelPair,
    t: f64,
) -> Result<ReducedDensityMatrix> {
    if rho0.t != 0.0 {
        return Err(Error::Usage(format!(
            "propagate expects an initial (t = 0) density matrix, got one at t = {}",
            rho0.t
        )));
    }
    if t < 0.0 || !t.is_finite() {
        return Err(Error::domain(format!("time must be finite and >= 0, got {t}")));
    }
    let dim = rho0.dim();
    let e = energies(spec, rho0.basis, dim)?;
    let mut entries = rho0.entries.clone();
    for n in 0..dim {
        for m in 0..dim {
            if n == m {
                continue;
            }
            entries[(n, m)] *= decoherence_factor(e[n], e[m], kernels, t);
        }
    }
    Ok(ReducedDensityMatrix {
        entries,
        basis: rho0.basis,
        t,
        trunc_error: rho0.trunc_error,
        prenorm_trace: rho0.prenorm_trace,
    })
}

/// The factor multiplying `ρ_nm(0)` for energies `e_n`, `e_m`.
pub fn decoherence_factor(e_n: f64, e_m: f64, kernels: KernelPair, t: f64) -> Complex64 {
    let de = e_n - e_m;
    let phase = -de * t + kernels.eta * (e_n * e_n - e_m * e_m);
    let damping = -de * de * kernels.gamma;
    Complex64::from_polar(damping.exp(), phase)
}

/// Right-hand side of the QND master equation,
/// `dρ_nm/dt = [−i(E_n−E_m) + iη̇(E_n²−E_m²) − (E_n−E_m)² γ̇] ρ_nm`.
pub fn master_equation_rhs(
    rho: &ReducedDensityMatrix,
    spec: &SystemSpec,
    eta_dot: f64,
    gamma_dot: f64,
) -> Result<DMatrix<Complex64>> {
    let dim = rho.dim();
    let e = energies(spec, rho.basis, dim)?;
    Ok(DMatrix::from_fn(dim, dim, |n, m| {
        let de = e[n] - e[m];
        let rate = Complex64::new(-de * de * gamma_dot, -de + eta_dot * (e[n] * e[n] - e[m] * e[m]));
        rate * rho.entries[(n, m)]
    }))
}
