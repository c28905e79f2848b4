//! Quantum phase diffusion under energy-preserving (QND) system-bath coupling.
//!
//! The crate is organised bottom-up:
//!
//! * [`specfun`] – Hermite polynomials, terminating ₂F₁, log-gamma/beta and Wigner small-d.
//! * [`bath`] – dephasing kernels η(t), γ(t) of an Ohmic squeezed thermal bath, in
//!   closed form and by adaptive quadrature.
//! * [`systems`] – energy spectra and the QND propagator for the reduced density matrix.
//! * [`states`] – initial states (coherent, squeezed coherent, Kerr, squeezed Kerr and
//!   the three atomic families).
//! * [`phasedist`] – phase distributions on angular grids plus circular statistics.
//!
//! Units are ħ = k_B = 1 throughout.

pub mod bath;
pub mod error;
pub mod phasedist;
pub mod quadrature;
pub mod specfun;
pub mod states;
pub mod systems;

pub use error::{Error, Result};
