//! Integer-order cylindrical Bessel and Hankel functions.
//!
//! `J` uses the ascending series for small arguments and Miller's backward
//! recurrence (normalized by `J0 + 2·ΣJ2k = 1`) elsewhere. `Y0`/`Y1` come from
//! the Neumann expansions over the same `J` sequence and higher orders from
//! forward recurrence, which is stable for `Y`.

use std::f64::consts::{FRAC_2_PI, PI};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{FdtdError, Result};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
/// Below this magnitude the ascending series is used for `J`.
const SERIES_LIMIT: f64 = 5.0;
const RESCALE: f64 = 1e200;

trait Arg:
    Copy
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Mul<f64, Output = Self>
    + Neg<Output = Self>
{
    fn real(v: f64) -> Self;
    fn magnitude(self) -> f64;
}

impl Arg for f64 {
    fn real(v: f64) -> Self {
        v
    }
    fn magnitude(self) -> f64 {
        self.abs()
    }
}

impl Arg for Complex64 {
    fn real(v: f64) -> Self {
        Complex64::new(v, 0.0)
    }
    fn magnitude(self) -> f64 {
        self.norm()
    }
}

fn series<T: Arg>(m: u32, z: T) -> T {
    let h = z * 0.5;
    let mut term = T::real(1.0);
    for k in 1..=m {
        term = term * h * (1.0 / k as f64);
    }
    let mut sum = term;
    let h2 = -(h * h);
    for k in 1..200u32 {
        term = term * h2 * (1.0 / (k as f64 * (k + m) as f64));
        sum = sum + term;
        if term.magnitude() <= 1e-17 * sum.magnitude() && k as f64 > h.magnitude() {
            break;
        }
    }
    sum
}

/// `J0..=J_top` by backward recurrence, where `top ≥ max_order` is chosen
/// large enough for the normalization sum to converge.
fn miller<T: Arg>(max_order: u32, z: T) -> Vec<T> {
    let n = (max_order as f64).max(z.magnitude()).ceil() as usize;
    let mut start = n + (160.0 * n as f64).sqrt() as usize + 20;
    start += start % 2;
    let inv = T::real(1.0) / z;
    let mut j = vec![T::real(0.0); start + 2];
    j[start] = T::real(1e-30);
    for k in (1..=start).rev() {
        j[k - 1] = inv * (2.0 * k as f64) * j[k] - j[k + 1];
        if j[k - 1].magnitude() > RESCALE {
            for v in &mut j[k - 1..] {
                *v = *v * (1.0 / RESCALE);
            }
        }
    }
    let mut norm = j[0];
    for k in (2..=start).step_by(2) {
        norm = norm + j[k] * 2.0;
    }
    let scale = T::real(1.0) / norm;
    j.truncate(start + 1);
    j.iter().map(|&v| v * scale).collect()
}

fn check_arg(x: f64, name: &str) -> Result<()> {
    if !x.is_finite() || x < 0.0 {
        return Err(FdtdError::domain(format!(
            "{name} needs a finite x >= 0, got {x}"
        )));
    }
    Ok(())
}

/// Bessel function of the first kind `J_m(x)` for `x ≥ 0`.
pub fn bessel_j(m: u32, x: f64) -> Result<f64> {
    check_arg(x, "bessel_j")?;
    Ok(j_real(m, x))
}

fn j_real(m: u32, x: f64) -> f64 {
    if x == 0.0 {
        return if m == 0 { 1.0 } else { 0.0 };
    }
    if x < SERIES_LIMIT {
        series(m, x)
    } else {
        miller(m, x)[m as usize]
    }
}

/// `J_m(z)` for complex `z`, used for lossy interior wavenumbers. Accurate
/// while `|Im z|` stays moderate (a few tens at most).
pub fn bessel_j_complex(m: u32, z: Complex64) -> Complex64 {
    if z == Complex64::new(0.0, 0.0) {
        return if m == 0 { z + 1.0 } else { z };
    }
    if z.norm() < SERIES_LIMIT {
        series(m, z)
    } else {
        miller(m, z)[m as usize]
    }
}

/// Bessel function of the second kind `Y_m(x)` for `x > 0`.
pub fn bessel_y(m: u32, x: f64) -> Result<f64> {
    check_arg(x, "bessel_y")?;
    if x == 0.0 {
        return Err(FdtdError::domain("bessel_y is singular at x = 0"));
    }
    let j = miller(1, x);
    let log_term = (0.5 * x).ln() + EULER_GAMMA;
    let (mut s0, mut s1) = (0.0, 0.0);
    let mut sign = -1.0;
    let mut k = 1;
    while 2 * k + 1 < j.len() {
        s0 += sign * j[2 * k] / k as f64;
        s1 += sign * (j[2 * k - 1] - j[2 * k + 1]) / k as f64;
        sign = -sign;
        k += 1;
    }
    let y0 = FRAC_2_PI * log_term * j[0] - 2.0 * FRAC_2_PI * s0;
    if m == 0 {
        return Ok(y0);
    }
    let y1 = FRAC_2_PI * (log_term * j[1] - j[0] / x) + FRAC_2_PI * s1;
    let (mut prev, mut cur) = (y0, y1);
    for n in 1..m {
        let next = 2.0 * n as f64 / x * cur - prev;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Outgoing (for `e^{jωt}`) Hankel function `H²_m(x) = J_m(x) − j·Y_m(x)`.
pub fn hankel2(m: u32, x: f64) -> Result<Complex64> {
    Ok(Complex64::new(bessel_j(m, x)?, -bessel_y(m, x)?))
}

/// `H¹_m(x) = J_m(x) + j·Y_m(x)`.
pub fn hankel1(m: u32, x: f64) -> Result<Complex64> {
    Ok(hankel2(m, x)?.conj())
}

/// Derivative of an order sequence via `f'_m = (f_{m−1} − f_{m+1}) / 2`,
/// with `f'_0 = −f_1`.
pub(crate) fn derivative<T: Copy + Sub<Output = T> + Neg<Output = T> + Mul<f64, Output = T>>(
    f: impl Fn(u32) -> T,
    m: u32,
) -> T {
    if m == 0 {
        -f(1)
    } else {
        (f(m - 1) - f(m + 1)) * 0.5
    }
}

/// Used by tests and the validation suite as an oracle independent of the
/// recurrences: trapezoidal rule on `J_m(x) = (1/π)∫₀^π cos(mτ − x·sin τ) dτ`,
/// which converges geometrically for this periodic integrand.
pub fn bessel_j_quadrature(m: u32, x: f64) -> f64 {
    let n = 2 * (x.abs() as usize + m as usize) + 64;
    let h = PI / n as f64;
    let f = |tau: f64| (m as f64 * tau - x * tau.sin()).cos();
    let mut s = 0.5 * (f(0.0) + f(PI));
    for i in 1..n {
        s += f(i as f64 * h);
    }
    s * h / PI
}
