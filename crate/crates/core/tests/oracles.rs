//! Cross-checks against independent oracles: dense matrix exponentials, direct
//! diagonalisation and a second quadrature scheme.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use nalgebra::DMatrix;
use num_complex::Complex64;

use qnd_phase::bath::{BathParams, KernelMethod, CUTOFF_MULTIPLE};
use qnd_phase::phasedist::{circular_stats, oscillator_phase_distribution, su11_phase_distribution, DEFAULT_GRID};
use qnd_phase::specfun::{wigner_d, HalfInt};
use qnd_phase::states::{
    coherent_coeffs, coherent_coeffs_auto, kerr_coeffs_auto, squeeze_matrix_element, squeezed_coherent_dm,
    squeezed_coherent_dm_auto, CoherentParams, KerrParams, SqueezeParams, DEFAULT_TAIL_TOL,
};
use qnd_phase::systems::{energy, propagate, Basis, SystemSpec};

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn annihilation(dim: usize) -> DMatrix<Complex64> {
    DMatrix::from_fn(dim, dim, |i, j| if j == i + 1 { c((j as f64).sqrt()) } else { c(0.0) })
}

/// `exp(½ w a†² − ½ w* a²)` on a truncated Fock space.
fn squeeze_generator_exp(dim: usize, w: Complex64) -> DMatrix<Complex64> {
    let a = annihilation(dim);
    let ad = a.adjoint();
    let gen = (&ad * &ad) * (w * 0.5) - (&a * &a) * (w.conj() * 0.5);
    gen.exp()
}

/// `d^j(β)` from `exp(−iβJ_Y)` with the basis ordered m = −j, ..., j.
fn rotation_matrix(two_j: i32, beta: f64) -> DMatrix<Complex64> {
    let dim = (two_j + 1) as usize;
    let j = two_j as f64 / 2.0;
    let m_of = |i: usize| i as f64 - j;
    let jp = DMatrix::from_fn(dim, dim, |r, col| {
        let m = m_of(col);
        if r == col + 1 {
            c((j * (j + 1.0) - m * (m + 1.0)).sqrt())
        } else {
            c(0.0)
        }
    });
    let jm = jp.adjoint();
    let jy = (&jp - &jm) * Complex64::new(0.0, -0.5);
    (jy * Complex64::new(0.0, -beta)).exp()
}

#[test]
fn wigner_d_matches_rotation_exponential() {
    let dense = rotation_matrix(2, PI / 3.0);
    let d = wigner_d(HalfInt::from_int(1), HalfInt::from_int(0), HalfInt::from_int(0), PI / 3.0).unwrap();
    assert!((d - dense[(1, 1)].re).abs() < 1e-14);
    assert!((d - 0.5).abs() < 1e-14);

    for two_j in 1..=4 {
        for beta in [0.3, FRAC_PI_2, 2.2] {
            let dense = rotation_matrix(two_j, beta);
            for (row, tn) in (-two_j..=two_j).step_by(2).enumerate() {
                for (col, tp) in (-two_j..=two_j).step_by(2).enumerate() {
                    let ours =
                        wigner_d(HalfInt::from_twice(two_j), HalfInt::from_twice(tn), HalfInt::from_twice(tp), beta).unwrap();
                    let e = dense[(row, col)];
                    assert!(e.im.abs() < 1e-13);
                    assert!((ours - e.re).abs() < 1e-13, "2j={two_j} 2n={tn} 2p={tp}: {ours} vs {}", e.re);
                }
            }
        }
    }
}

#[test]
fn squeeze_elements_match_generator_exponential() {
    let (r1, phi) = (0.4, 0.3);
    let dense = squeeze_generator_exp(200, Complex64::from_polar(r1, phi));
    let s = SqueezeParams::new(r1, phi).unwrap();
    assert!((dense[(0, 0)].re - 1.0 / r1.cosh().sqrt()).abs() < 1e-13);
    for m in 0..24 {
        for p in 0..24 {
            let g = squeeze_matrix_element(m, p, &s).unwrap();
            assert!((g - dense[(m, p)]).norm() < 1e-12, "G[{m},{p}] = {g} vs {}", dense[(m, p)]);
        }
    }
}

#[test]
fn squeezed_coherent_matches_squeeze_times_displacement() {
    let dim = 200;
    let coh = CoherentParams::from_mean_number(5.0, 0.7).unwrap();
    let (r1, psi) = (0.5, FRAC_PI_4);
    // S(ξ) = exp(½ξ* a² − ½ξ a†²), the generator above with w = −ξ.
    let s_op = squeeze_generator_exp(dim, -Complex64::from_polar(r1, psi));
    // D(α)|0⟩ by the amplitude recurrence c_{n+1} = α c_n / √(n+1).
    let mut alpha = vec![Complex64::from_polar((-2.5f64).exp(), 0.0)];
    for n in 0..dim - 1 {
        let next = alpha[n] * coh.alpha() / ((n + 1) as f64).sqrt();
        alpha.push(next);
    }
    let v = s_op * DMatrix::from_column_slice(dim, 1, &alpha);
    let rho = squeezed_coherent_dm(&coh, &SqueezeParams::new(r1, psi).unwrap(), 60).unwrap();
    for m in 0..40 {
        for n in 0..40 {
            let expected = v[m] * v[n].conj();
            assert!((rho.get(m, n) - expected).norm() < 1e-11, "({m},{n})");
        }
    }
}

#[test]
fn squeezed_vacuum_against_squeeze_column() {
    let vac = CoherentParams::new(0.0, 0.0).unwrap();
    let (r1, psi) = (0.5, 0.9);
    let rho = squeezed_coherent_dm(&vac, &SqueezeParams::new(r1, psi).unwrap(), 80).unwrap();
    // Unnormalised ρ₀₀ = 1/cosh r₁.
    let pre = rho.prenorm_trace().unwrap();
    assert!((rho.get(0, 0).re * pre - 1.0 / r1.cosh()).abs() < 1e-14);
    let s = SqueezeParams::new(r1, psi + PI).unwrap();
    for m in 0..30 {
        let g_m = squeeze_matrix_element(m, 0, &s).unwrap();
        for n in 0..30 {
            let g_n = squeeze_matrix_element(n, 0, &s).unwrap();
            assert!((rho.get(m, n) * pre - g_m * g_n.conj()).norm() < 1e-13, "({m},{n})");
        }
    }
}

#[test]
fn anharmonic_energies_match_diagonalization() {
    let (omega, lambda) = (1.0, 0.02);
    let dim = 20;
    let a = annihilation(dim);
    let ad = a.adjoint();
    let h = (&ad * &a + DMatrix::identity(dim, dim) * c(0.5)) * c(omega) + (&ad * &ad * &a * &a) * c(0.5 * lambda);
    let mut eig: Vec<f64> = h.symmetric_eigenvalues().iter().copied().collect();
    eig.sort_by(f64::total_cmp);
    let spec = SystemSpec::anharmonic(omega, lambda).unwrap();
    let mut ours: Vec<f64> = (0..dim / 2)
        .flat_map(|m| {
            [
                energy(&spec, Basis::Su11Even, m).unwrap(),
                energy(&spec, Basis::Su11Odd, m).unwrap(),
            ]
        })
        .collect();
    ours.sort_by(f64::total_cmp);
    for (x, y) in ours.iter().zip(&eig) {
        assert!((x - y).abs() < 1e-12, "{x} vs {y}");
    }
    assert!((energy(&spec, Basis::Su11Even, 2).unwrap() - 4.62).abs() < 1e-12);
}

// Composite Gauss–Legendre with nodes found by Newton iteration on P_n.
fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

fn composite<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize, rule: &[(f64, f64)]) -> f64 {
    let h = (b - a) / panels as f64;
    let mut sum = 0.0;
    for k in 0..panels {
        let mid = a + (k as f64 + 0.5) * h;
        for &(x, w) in rule {
            sum += w * f(mid + 0.5 * h * x);
        }
    }
    0.5 * h * sum
}

#[test]
fn two_quadrature_schemes_agree() {
    let bath = BathParams::zero_temperature(0.0025, 100.0, 2.0, 0.0).unwrap();
    let rule = gauss_legendre(20);
    let upper = CUTOFF_MULTIPLE * bath.omega_c();
    for t in [0.1, 0.5] {
        let adaptive = bath.gamma_quadrature(t).unwrap();
        // Resolve the ω ≈ 0 region finely, then the oscillating tail.
        let f = |w: f64| bath.gamma_integrand(w, t);
        let gl = composite(f, 0.0, 1.0, 200, &rule) + composite(f, 1.0, upper, 20_000, &rule);
        assert!((adaptive - gl).abs() < 1e-8, "t={t}: {adaptive} vs {gl}");
        assert!(adaptive > 0.0);
        assert!((adaptive - bath.gamma_closed(t).unwrap()).abs() < 1e-7 * adaptive.max(1.0));
    }
}

#[test]
fn golden_zero_temperature_gamma() {
    let bath = BathParams::zero_temperature(0.0025, 100.0, 2.0, 0.0).unwrap();
    let q = bath.gamma_quadrature(0.1).unwrap();
    assert!((q - GOLDEN_GAMMA_T0_R2_T01).abs() < 1e-9, "{q:.15e}");
    let thermal = BathParams::zero_temperature(0.0025, 100.0, 0.0, 0.0).unwrap();
    assert!((thermal.gamma_closed(0.1).unwrap() - 1.8363e-3).abs() < 1e-7);
    assert!((thermal.eta_closed(0.1).unwrap() + 1.1707e-3).abs() < 1e-7);
}

/// γ(0.1) at T = 0, r = 2, γ₀ = 0.0025, ω_c = 100 from 30-digit mpmath quadrature.
const GOLDEN_GAMMA_T0_R2_T01: f64 = 6.771_632_482_655_104e-2;

#[test]
fn eta_is_independent_of_temperature_and_squeezing() {
    let reference = BathParams::zero_temperature(0.0025, 100.0, 0.0, 0.0).unwrap();
    for bath in [
        BathParams::zero_temperature(0.0025, 100.0, 2.0, 0.3).unwrap(),
        BathParams::high_temperature(0.0025, 100.0, 300.0, 1.0, 0.0).unwrap(),
    ] {
        for t in [0.01, 0.1, 1.0, 7.0] {
            assert_eq!(bath.eta_closed(t).unwrap(), reference.eta_closed(t).unwrap());
        }
    }
    assert!((reference.eta_closed(1e6).unwrap() + 0.00125).abs() < 1e-9);
}

#[test]
fn thermal_gamma_increases_on_unit_interval() {
    let bath = BathParams::zero_temperature(0.0025, 100.0, 0.0, 0.0).unwrap();
    let values: Vec<f64> = (1..=100).map(|k| bath.gamma_closed(k as f64 / 100.0).unwrap()).collect();
    assert!(values.windows(2).all(|w| w[1] > w[0]));
}

#[test]
fn coherence_shrinks_by_decoherence_factor() {
    let spec = SystemSpec::harmonic(1.0).unwrap();
    let bath = BathParams::zero_temperature(0.0025, 100.0, 2.0, 0.0).unwrap();
    let rho0 = coherent_coeffs(&CoherentParams::from_mean_number(5.0, 0.0).unwrap(), 60)
        .unwrap()
        .density_matrix()
        .unwrap();
    let rho = propagate(&rho0, &spec, &bath, 0.1).unwrap();
    let gamma = bath.gamma_closed(0.1).unwrap();
    let ratio = rho.get(0, 1).norm() / rho0.get(0, 1).norm();
    assert!((ratio - (-gamma).exp()).abs() < 1e-14);
}

#[test]
fn sector_union_reproduces_number_basis_at_zero_anharmonicity() {
    let harmonic = SystemSpec::harmonic(1.0).unwrap();
    let flat = SystemSpec::anharmonic(1.0, 0.0).unwrap();
    let bath = BathParams::high_temperature(0.0025, 100.0, 300.0, 1.0, 0.0).unwrap();
    let coeffs = kerr_coeffs_auto(
        &KerrParams::new(0.0, CoherentParams::from_mean_number(5.0, 0.0).unwrap()).unwrap(),
        DEFAULT_TAIL_TOL,
    )
    .unwrap();
    let (even, odd) = coeffs.sector_density_matrices().unwrap();
    let number = propagate(&coeffs.density_matrix().unwrap(), &harmonic, &bath, 0.2).unwrap();
    let even = propagate(&even, &flat, &bath, 0.2).unwrap();
    let odd = propagate(&odd, &flat, &bath, 0.2).unwrap();
    for m in 0..even.dim() {
        for n in 0..even.dim() {
            assert!((even.get(m, n) - number.get(2 * m, 2 * n)).norm() < 1e-12);
        }
    }
    for m in 0..odd.dim() {
        for n in 0..odd.dim() {
            assert!((odd.get(m, n) - number.get(2 * m + 1, 2 * n + 1)).norm() < 1e-12);
        }
    }
}

#[test]
fn full_anharmonic_path_reduces_to_harmonic() {
    let coh = CoherentParams::from_mean_number(5.0, 0.0).unwrap();
    let bath = BathParams::zero_temperature(0.0025, 100.0, 2.0, 0.0).unwrap();
    let harmonic_rho = coherent_coeffs_auto(&coh, DEFAULT_TAIL_TOL).unwrap().density_matrix().unwrap();
    let kerr_rho = kerr_coeffs_auto(&KerrParams::new(0.0, coh).unwrap(), DEFAULT_TAIL_TOL)
        .unwrap()
        .density_matrix()
        .unwrap();
    for t in [0.1, 0.5] {
        let h = propagate(&harmonic_rho, &SystemSpec::harmonic(1.0).unwrap(), &bath, t).unwrap();
        let a = propagate(&kerr_rho, &SystemSpec::anharmonic(1.0, 0.0).unwrap(), &bath, t).unwrap();
        let ph = oscillator_phase_distribution(&h, DEFAULT_GRID).unwrap();
        let pa = oscillator_phase_distribution(&a, DEFAULT_GRID).unwrap();
        assert!(ph.sup_distance(&pa).unwrap() < 1e-12);
    }
}

#[test]
fn sector_sum_is_pi_periodic() {
    let kerr = KerrParams::new(0.02, CoherentParams::from_mean_number(5.0, 0.0).unwrap()).unwrap();
    let (even, odd) = kerr_coeffs_auto(&kerr, DEFAULT_TAIL_TOL).unwrap().sector_density_matrices().unwrap();
    let pd = su11_phase_distribution(&even, &odd, 512).unwrap();
    let v = pd.values();
    for i in 0..256 {
        assert_eq!(v[i], v[i + 256]);
    }
}

/// Offset of the unitary peak from θ₀, wrapped to [0, π].
fn peak_offset(pd: &qnd_phase::phasedist::PhaseDistribution, theta0: f64) -> f64 {
    let d = (circular_stats(pd).peak_angle - theta0).rem_euclid(2.0 * PI);
    d.min(2.0 * PI - d)
}

#[test]
fn squeezed_coherent_unitary_curve_is_more_tilted() {
    let coh = CoherentParams::from_mean_number(5.0, 0.0).unwrap();
    let spec = SystemSpec::harmonic(1.0).unwrap();
    let unitary = BathParams::zero_temperature(0.0, 100.0, 0.0, 0.0).unwrap();
    let t = 0.1;
    let plain = coherent_coeffs_auto(&coh, DEFAULT_TAIL_TOL).unwrap().density_matrix().unwrap();
    let squeezed = squeezed_coherent_dm_auto(&coh, &SqueezeParams::new(0.5, FRAC_PI_4).unwrap(), DEFAULT_TAIL_TOL).unwrap();
    let p_plain = oscillator_phase_distribution(&propagate(&plain, &spec, &unitary, t).unwrap(), DEFAULT_GRID).unwrap();
    let p_sq = oscillator_phase_distribution(&propagate(&squeezed, &spec, &unitary, t).unwrap(), DEFAULT_GRID).unwrap();
    let (o_plain, o_sq) = (peak_offset(&p_plain, 0.0), peak_offset(&p_sq, 0.0));
    assert!((o_plain - t).abs() < 1e-6, "coherent peak rotates rigidly: {o_plain}");
    assert!(o_sq > o_plain, "squeezed offset {o_sq} vs coherent {o_plain}");
}

#[test]
fn quadrature_kernel_method_agrees_with_closed() {
    let bath = BathParams::zero_temperature(0.0025, 100.0, 1.0, 0.0).unwrap();
    let k_closed = bath.kernels(0.2, KernelMethod::Closed).unwrap();
    let k_quad = bath.kernels(0.2, KernelMethod::Quadrature).unwrap();
    assert!((k_closed.eta - k_quad.eta).abs() < 1e-8);
    assert!((k_closed.gamma - k_quad.gamma).abs() < 1e-7);
}
