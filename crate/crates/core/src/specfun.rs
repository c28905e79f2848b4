//! Special functions used by the state generators and the atomic overlaps.
//!
//! Every ratio of factorials is assembled from [`LogFactorialTable`] and exponentiated
//! once, which keeps amplitudes finite for indices up to [`N_MAX`].

use std::fmt;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default capacity for factorial tables and Hermite degrees.
pub const N_MAX: usize = 128;

/// `values[n] = ln(n!)` for `n = 0..=capacity`.
#[derive(Debug, Clone)]
pub struct LogFactorialTable {
    values: Vec<f64>,
}

impl LogFactorialTable {
    pub fn new(capacity: usize) -> Self {
        let mut values = Vec::with_capacity(capacity + 1);
        values.push(0.0);
        for n in 1..=capacity {
            let prev = values[n - 1];
            values.push(prev + (n as f64).ln());
        }
        Self { values }
    }

    /// Largest `n` for which `ln(n!)` is stored.
    pub fn capacity(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn ln_factorial(&self, n: usize) -> Result<f64> {
        self.values.get(n).copied().ok_or(Error::Capacity {
            index: n,
            capacity: self.capacity(),
        })
    }
}

/// Shared table of capacity [`N_MAX`], built on first use.
pub fn log_factorials() -> &'static LogFactorialTable {
    static TABLE: OnceLock<LogFactorialTable> = OnceLock::new();
    TABLE.get_or_init(|| LogFactorialTable::new(N_MAX))
}

/// Physicists' Hermite polynomial `H_n(z)` by the three-term recurrence.
pub fn hermite(n: usize, z: Complex64) -> Result<Complex64> {
    if n > N_MAX {
        return Err(Error::Capacity {
            index: n,
            capacity: N_MAX,
        });
    }
    let mut prev = Complex64::new(1.0, 0.0);
    if n == 0 {
        return Ok(prev);
    }
    let mut cur = 2.0 * z;
    for k in 1..n {
        let next = 2.0 * z * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// `H_n(z) / sqrt(2^n n!)` for `n < len`.
///
/// The scaled recurrence `h_{n+1} = z sqrt(2/(n+1)) h_n - sqrt(n/(n+1)) h_{n-1}` never
/// forms the factorials, so it stays finite where `H_n` itself would overflow.
pub fn scaled_hermite_sequence(len: usize, z: Complex64) -> Result<Vec<Complex64>> {
    if len > N_MAX + 1 {
        return Err(Error::Capacity {
            index: len - 1,
            capacity: N_MAX,
        });
    }
    let mut out = Vec::with_capacity(len);
    if len == 0 {
        return Ok(out);
    }
    out.push(Complex64::new(1.0, 0.0));
    if len == 1 {
        return Ok(out);
    }
    out.push(z * std::f64::consts::SQRT_2);
    for n in 1..len - 1 {
        let nf = n as f64;
        let next = z * (2.0 / (nf + 1.0)).sqrt() * out[n] - (nf / (nf + 1.0)).sqrt() * out[n - 1];
        out.push(next);
    }
    Ok(out)
}

/// Terminating Gauss hypergeometric function ₂F₁(−p, −m; c; x).
///
/// The series stops after `min(p, m)` terms. The summand recurrence is symmetric in
/// `p` and `m`, so swapping them gives a bit-identical result.
pub fn hyp2f1_terminating(p: usize, m: usize, c: f64, x: f64) -> Result<f64> {
    if !(c > 0.0) {
        return Err(Error::domain(format!("2F1 lower parameter c must be > 0, got {c}")));
    }
    if p > N_MAX || m > N_MAX {
        return Err(Error::Capacity {
            index: p.max(m),
            capacity: N_MAX,
        });
    }
    let mut term = 1.0;
    let mut sum = 1.0;
    for s in 0..p.min(m) {
        let sf = s as f64;
        term *= (sf - p as f64) * (sf - m as f64) / ((c + sf) * (sf + 1.0)) * x;
        sum += term;
    }
    Ok(sum)
}

pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(format!("ln_gamma needs a positive finite argument, got {x}")));
    }
    Ok(statrs::function::gamma::ln_gamma(x))
}

/// Euler beta function `B(a, b) = Γ(a)Γ(b)/Γ(a+b)`.
pub fn beta(a: f64, b: f64) -> Result<f64> {
    Ok((ln_gamma(a)? + ln_gamma(b)? - ln_gamma(a + b)?).exp())
}

/// A half-integer stored as twice its value, e.g. `HalfInt::from_twice(-1)` is −1/2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfInt(i32);

impl HalfInt {
    pub const HALF: HalfInt = HalfInt(1);
    pub const MINUS_HALF: HalfInt = HalfInt(-1);

    pub const fn from_twice(twice: i32) -> Self {
        HalfInt(twice)
    }

    pub const fn from_int(n: i32) -> Self {
        HalfInt(2 * n)
    }

    pub const fn twice(self) -> i32 {
        self.0
    }

    pub fn value(self) -> f64 {
        self.0 as f64 / 2.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// Wigner small-d element `d^j_{np}(β) = ⟨j,n| exp(−iβJ_Y) |j,p⟩`.
pub fn wigner_d(j: HalfInt, n: HalfInt, p: HalfInt, beta: f64) -> Result<f64> {
    if j.twice() < 0 {
        return Err(Error::domain(format!("angular momentum j = {j} must be nonnegative")));
    }
    if n.twice().abs() > j.twice() || p.twice().abs() > j.twice() {
        return Err(Error::domain(format!(
            "projections must satisfy |n|, |p| <= j (j = {j}, n = {n}, p = {p})"
        )));
    }
    if (j.twice() - n.twice()) % 2 != 0 || (j.twice() - p.twice()) % 2 != 0 {
        return Err(Error::domain(format!(
            "j - n and j - p must be integers (j = {j}, n = {n}, p = {p})"
        )));
    }
    if beta == 0.0 {
        return Ok(if n == p { 1.0 } else { 0.0 });
    }

    // All of these are integers by the checks above.
    let j_plus_n = ((j.twice() + n.twice()) / 2) as i64;
    let j_minus_n = ((j.twice() - n.twice()) / 2) as i64;
    let j_plus_p = ((j.twice() + p.twice()) / 2) as i64;
    let j_minus_p = ((j.twice() - p.twice()) / 2) as i64;
    let p_minus_n = j_plus_p - j_plus_n;
    let two_j = (j.twice()) as i64;

    let table = log_factorials();
    let lf = |k: i64| table.ln_factorial(k as usize);
    let ln_prefactor = 0.5 * (lf(j_plus_n)? + lf(j_minus_n)? + lf(j_plus_p)? + lf(j_minus_p)?);

    let (sin_half, cos_half) = (beta / 2.0).sin_cos();
    let k_min = 0.max(p_minus_n);
    let k_max = j_plus_p.min(j_minus_n);
    let mut sum = 0.0;
    for k in k_min..=k_max {
        let ln_den = lf(j_plus_p - k)? + lf(k)? + lf(j_minus_n - k)? + lf(k - p_minus_n)?;
        let sign = if (k - p_minus_n).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        let cos_pow = (two_j - 2 * k + p_minus_n) as i32;
        let sin_pow = (2 * k - p_minus_n) as i32;
        sum += sign
            * (ln_prefactor - ln_den).exp()
            * cos_half.powi(cos_pow)
            * sin_half.powi(sin_pow);
    }
    Ok(sum)
}
