//! Closed forms for power-law integrals, asymptotic oscillatory tails and
//! tail sums of slowly decaying series.

use alloc::format;
use num_complex::Complex64;

use super::quad::{adaptive_to_infinity, Tolerance};
use crate::error::{Error, Result};
use crate::math::pochhammer;

/// `int_a^b v^p dv` for `0 < a <= b <= inf`.
pub fn power_integral(p: f64, a: f64, b: f64) -> Result<f64> {
    debug_assert!(a > 0.0 && b >= a);
    if b.is_infinite() {
        if p >= -1.0 {
            return Err(Error::DivergentIntegral(format!("int_{a}^inf v^{p} dv")));
        }
        return Ok(a.powf(p + 1.0) / (-p - 1.0));
    }
    let lr = ((b - a) / a).ln_1p();
    let e = p + 1.0;
    if e.abs() < 1e-14 {
        Ok(lr)
    } else {
        Ok(a.powf(e) * (e * lr).exp_m1() / e)
    }
}

/// Moments `I_j = int_{-L}^{L} s^j e^{i k s} ds` for `j = 0, 1, 2`.
pub fn exp_moments(k: f64, l: f64) -> [Complex64; 3] {
    let x = k * l;
    if x.abs() < 0.5 {
        let (mut i0, mut i1, mut i2) = (0.0, 0.0, 0.0);
        let mut t_even = 1.0; // (-1)^m x^{2m} / (2m)!
        let mut m = 0u32;
        while m < 14 {
            let fm = f64::from(m);
            let t_odd = t_even * x / (2.0 * fm + 1.0); // (-1)^m x^{2m+1}/(2m+1)!
            i0 += t_even / (2.0 * fm + 1.0);
            i2 += t_even / (2.0 * fm + 3.0);
            i1 += t_odd / (2.0 * fm + 3.0);
            t_even = -t_odd * x / (2.0 * fm + 2.0);
            if t_even.abs() < 1e-18 {
                break;
            }
            m += 1;
        }
        [Complex64::new(2.0 * l * i0, 0.0), Complex64::new(0.0, 2.0 * l * l * i1), Complex64::new(2.0 * l * l * l * i2, 0.0)]
    } else {
        let (s, c) = x.sin_cos();
        let i0 = 2.0 * s / k;
        let i1 = 2.0 * (s - x * c) / (k * k);
        let i2 = 2.0 * ((x * x - 2.0) * s + 2.0 * x * c) / (k * k * k);
        [Complex64::new(i0, 0.0), Complex64::new(0.0, i1), Complex64::new(i2, 0.0)]
    }
}

/// `int_x^inf v^{-p} e^{i w v} dv` by repeated integration by parts.
/// Returns the value and a bound on the truncation error.
pub fn power_exp_tail(p: f64, w: f64, x: f64) -> (Complex64, f64) {
    const TERMS: u32 = 8;
    let iw = Complex64::new(0.0, w);
    let phase = Complex64::new(0.0, w * x).exp();
    let mut acc = Complex64::new(0.0, 0.0);
    let mut denom = iw;
    for m in 0..TERMS {
        acc += pochhammer(p, m) * x.powf(-p - f64::from(m)) / denom;
        denom *= iw;
    }
    let bound = pochhammer(p, TERMS) / w.abs().powi(TERMS as i32) * x.powf(1.0 - p - f64::from(TERMS)) / (p + f64::from(TERMS) - 1.0);
    (-phase * acc, bound)
}

/// Smallest start point from which [`power_exp_tail`] is accurate.
pub fn asymptotic_start(p: f64, w: f64) -> f64 {
    40.0 * (p + 8.0) / w.abs()
}

/// Approximates `sum_{n >= n0} g(n)` for a smooth, eventually monotone `g`
/// via explicit summation followed by Euler-Maclaurin.  Returns the value
/// and an error estimate.
pub fn sum_tail<G: Fn(f64) -> f64>(g: G, n0: u64) -> Result<(f64, f64)> {
    let explicit = 256u64;
    let mut acc = 0.0;
    for n in n0..n0 + explicit {
        acc += g(n as f64);
    }
    let m = (n0 + explicit) as f64;
    let integral = adaptive_to_infinity(&g, m, Tolerance::rel(1e-13))
        .map_err(|_| Error::DivergentSum(format!("tail integral from {m} does not converge")))?;
    let hstep = 1e-2 * m;
    let d1 = (8.0 * (g(m + hstep) - g(m - hstep)) - g(m + 2.0 * hstep) + g(m - 2.0 * hstep)) / (12.0 * hstep);
    let d3 = (g(m + 2.0 * hstep) - 2.0 * g(m + hstep) + 2.0 * g(m - hstep) - g(m - 2.0 * hstep)) / (2.0 * hstep.powi(3));
    let value = acc + integral.value + 0.5 * g(m) - d1 / 12.0 + d3 / 720.0;
    if !value.is_finite() {
        return Err(Error::DivergentSum(format!("series from {n0}")));
    }
    let err = integral.error + (d3 / 720.0).abs() + 1e-14 * value.abs();
    Ok((value, err))
}

/// Integral-test bracket `[int_{n0}^inf g, int_{n0-1}^inf g]` on
/// `sum_{n >= n0} g(n)` for decreasing `g`.
pub fn sum_tail_bracket<G: Fn(f64) -> f64>(g: G, n0: u64) -> Result<(f64, f64)> {
    let n0 = n0 as f64;
    let lo = adaptive_to_infinity(&g, n0, Tolerance::rel(1e-12)).map_err(|_| Error::DivergentSum(format!("tail from {n0}")))?.value;
    let hi = lo + g(n0);
    Ok((lo, hi))
}
