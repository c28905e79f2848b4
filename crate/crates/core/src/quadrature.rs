//! Globally adaptive Gauss–Kronrod (10/21-point) integration on a finite interval.
//!
//! The interval with the largest error estimate is bisected until the summed estimate
//! drops below the absolute target or the subdivision budget is exhausted.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

// Kronrod abscissae (positive half, descending) and weights from QUADPACK qk21.
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

// Gauss weights for the 10-point rule, attached to XGK[1], XGK[3], ..., XGK[9].
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[derive(Debug, Clone, Copy)]
pub struct QuadratureConfig {
    /// Absolute error target for the whole interval.
    pub abs_tol: f64,
    /// Maximum number of subintervals.
    pub max_intervals: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            max_intervals: 20_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    pub intervals: usize,
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[10];
    let mut gauss = 0.0;
    for (i, (&x, &w)) in XGK[..10].iter().zip(&WGK[..10]).enumerate() {
        let dx = half * x;
        let pair = f(center - dx) + f(center + dx);
        kronrod += w * pair;
        if i % 2 == 1 {
            gauss += WG[i / 2] * pair;
        }
    }
    let value = kronrod * half;
    let error = ((kronrod - gauss) * half).abs();
    Segment { a, b, value, error }
}

/// Integrate `f` over `[a, b]`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, cfg: QuadratureConfig) -> Result<QuadratureResult> {
    let first = kronrod21(&f, a, b);
    let mut total_error = first.error;
    let mut heap = BinaryHeap::new();
    heap.push(first);

    while total_error > cfg.abs_tol {
        if heap.len() >= cfg.max_intervals {
            return Err(Error::Quadrature {
                estimate: total_error,
                target: cfg.abs_tol,
                intervals: heap.len(),
            });
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Interval cannot be split further in floating point.
            return Err(Error::Quadrature {
                estimate: total_error,
                target: cfg.abs_tol,
                intervals: heap.len() + 1,
            });
        }
        let left = kronrod21(&f, worst.a, mid);
        let right = kronrod21(&f, mid, worst.b);
        total_error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        // Re-sum periodically so the running estimate does not drift.
        if heap.len() % 64 == 0 {
            total_error = heap.iter().map(|s| s.error).sum();
        }
    }

    let mut segments = heap.into_vec();
    segments.sort_by(|x, y| x.a.total_cmp(&y.a));
    Ok(QuadratureResult {
        value: segments.iter().map(|s| s.value).sum(),
        error_estimate: segments.iter().map(|s| s.error).sum(),
        intervals: segments.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        let r = integrate(|x| 3.0 * x * x - x + 2.0, -1.0, 2.0, QuadratureConfig::default()).unwrap();
        assert!((r.value - 13.5).abs() < 1e-13);
        assert_eq!(r.intervals, 1);
    }

    #[test]
    fn oscillatory_integrand() {
        // ∫_0^50 e^{-x/10} sin(3x) dx = Im[(1 - e^{(-0.1+3i)50}) / (0.1 - 3i)]
        let exact = {
            let (re, im) = (0.1f64, -3.0f64);
            let decay = (-5.0f64).exp();
            let (s, c) = (150.0f64).sin_cos();
            let num_re = 1.0 - decay * c;
            let num_im = -decay * s;
            let den = re * re + im * im;
            (num_im * re - num_re * im) / den
        };
        let r = integrate(|x| (-x / 10.0).exp() * (3.0 * x).sin(), 0.0, 50.0, QuadratureConfig::default()).unwrap();
        assert!((r.value - exact).abs() < 1e-10, "{} vs {exact}", r.value);
    }

    #[test]
    fn budget_exhaustion_reports_estimate() {
        let cfg = QuadratureConfig {
            abs_tol: 1e-15,
            max_intervals: 4,
        };
        match integrate(|x: f64| (1.0 / x).sin(), 1e-6, 1.0, cfg) {
            Err(Error::Quadrature { estimate, intervals, .. }) => {
                assert!(estimate > 1e-15);
                assert_eq!(intervals, 4);
            }
            other => panic!("expected quadrature failure, got {other:?}"),
        }
    }
}
