//! Elementary helpers: sinc, binomials, trigonometric expansions.

use core::f64::consts::PI;

pub const SQRT_2PI: f64 = 2.506_628_274_631_000_7;
pub const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

/// `sin(pi x)` with exact argument reduction.
pub fn sin_pi(x: f64) -> f64 {
    if !x.is_finite() {
        return f64::NAN;
    }
    let r = x - 2.0 * (x * 0.5).round();
    (PI * r).sin()
}

/// Normalised sinc, `sin(pi x) / (pi x)`.
pub fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        let y = PI * x;
        let y2 = y * y;
        1.0 - y2 / 6.0 + y2 * y2 / 120.0
    } else {
        sin_pi(x) / (PI * x)
    }
}

pub fn binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0;
    for i in 0..k {
        acc = acc * f64::from(n - i) / f64::from(i + 1);
    }
    acc.round()
}

/// Cosine coefficients of `(2 sin(x/2))^(2r) = a_0 + sum_k a_k cos(k x)`.
pub fn diff_cos_coeffs(r: u32) -> alloc::vec::Vec<f64> {
    let n = 2 * r;
    let mut out = alloc::vec::Vec::with_capacity(r as usize + 1);
    out.push(binomial(n, r));
    for k in 1..=r {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        out.push(2.0 * sign * binomial(n, r + k));
    }
    out
}

/// Cosine coefficients of `sin^(2j)(s) = a_0 + sum_k a_k cos(2 k s)`.
pub fn sin_pow_cos_coeffs(j: u32) -> alloc::vec::Vec<f64> {
    let scale = 0.25f64.powi(j as i32);
    diff_cos_coeffs(j).into_iter().map(|a| a * scale).collect()
}

/// Rising factorial `(p)_m`.
pub fn pochhammer(p: f64, m: u32) -> f64 {
    (0..m).fold(1.0, |acc, i| acc * (p + f64::from(i)))
}

pub fn is_even_integer(w: f64) -> bool {
    (0.0..=64.0).contains(&w) && w == w.round() && (w as i64) % 2 == 0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sinc_values() {
        assert_eq!(sinc(0.0), 1.0);
        assert!(sinc(3.0).abs() < 1e-16);
        assert!(sin_pi(1e9 + 1.0).abs() < 1e-15);
        assert!((sinc(0.5) - 2.0 / PI).abs() < 1e-15);
        assert!((sinc(1e-5) - (PI * 1e-5).sin() / (PI * 1e-5)).abs() < 1e-15);
    }

    #[test]
    fn diff_coeffs_reconstruct() {
        for r in 1..5u32 {
            let a = diff_cos_coeffs(r);
            for &x in &[0.3f64, 1.7, -2.4, 5.0] {
                let direct = (2.0 * (x / 2.0).sin()).powi(2 * r as i32);
                let series: f64 = a.iter().enumerate().map(|(k, c)| c * (k as f64 * x).cos()).sum();
                assert!((direct - series).abs() < 1e-12, "r={r} x={x}");
            }
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 3), 20.0);
        assert_eq!(binomial(4, 0), 1.0);
        assert_eq!(binomial(3, 5), 0.0);
    }
}
