//! Moduli of smoothness in `L^2`, evaluated on the spectral side through
//! `||Delta_h^r f||_2^2 = int (2 sin(h v / 2))^(2r) |f^(v)|^2 dv`, and the
//! dyadic Besov seminorm.

use alloc::vec::Vec;

use crate::counterexamples::Family;
use crate::error::{require, Result};
use crate::math::{binomial, diff_cos_coeffs};
use crate::numerics::{integrate_weighted, Estimate, Region, Weight};
use crate::rates::{log_grid, loglog_fit, RateFit};
use crate::spectrum::Spectrum;

/// Points per modulus grid: `h_i = delta 2^(-8 i / n)`.
pub const DEFAULT_GRID: usize = 64;

fn check(r: u32, h: f64) -> Result<()> {
    require(r >= 1, "r", "must be at least 1")?;
    require(h.is_finite() && h > 0.0, "h", "must be positive")
}

/// `int (2 sin(h v/2))^(2r) |v|^(2s) |f^(v)|^2 dv`.
fn difference_sq(s: &Spectrum, r: u32, h: f64, deriv: u32) -> Result<Estimate<f64>> {
    let w = Weight::Difference { h, r, power: 2.0 * f64::from(deriv) };
    integrate_weighted(s, 2.0, &w, &Region::all())
}

/// `||Delta_h^r f||_2`.
pub fn difference_norm(s: &Spectrum, r: u32, h: f64) -> Result<f64> {
    check(r, h)?;
    Ok(difference_sq(s, r, h, 0)?.value.max(0.0).sqrt())
}

/// `||Delta_h^r f^(deriv)||_2`.
pub fn difference_norm_derivative(s: &Spectrum, r: u32, h: f64, deriv: u32) -> Result<f64> {
    check(r, h)?;
    Ok(difference_sq(s, r, h, deriv)?.value.max(0.0).sqrt())
}

/// `||Delta_h^r f||_2` of the full series behind a truncated spectrum.
///
/// The omitted atoms contribute `int (2 sin(hv/2))^(2r) |atom|^2`, whose
/// mean part is `C(2r, r)` times their mass; the cosine part is bounded by
/// Abel summation when atom centres are equally spaced and by the trivial
/// bracket `[0, 4^r]` times the mass otherwise.
pub fn difference_norm_budgeted(s: &Spectrum, r: u32, h: f64) -> Result<Estimate<f64>> {
    check(r, h)?;
    let mut e = difference_sq(s, r, h, 0)?;
    if let Some(spec) = s.truncation() {
        let f = spec.family;
        if !f.is_power_tail() {
            let mass = spec.omitted(|n| f.l2_sq_law(n))?;
            let mean = binomial(2 * r, r);
            let cap = 4f64.powi(r as i32);
            let mut osc = cap.max(2.0 * mean) * mass.value;
            if let Family::GammaDelta { .. } = f {
                let first = f.l2_sq_law((spec.n_terms + 1) as f64);
                let coeffs = diff_cos_coeffs(r);
                let abel: f64 =
                    coeffs.iter().enumerate().skip(1).map(|(k, a)| a.abs() * first / (0.5 * k as f64 * h).sin().abs().max(1e-300)).sum();
                osc = osc.min(abel);
            }
            e.value += mean * mass.value;
            e.error += osc.min((cap - mean).max(mean) * mass.value) + mean * mass.error;
        }
    }
    let v = e.value.max(0.0).sqrt();
    let lo = (e.value - e.error).max(0.0).sqrt();
    let hi = (e.value + e.error).sqrt();
    Ok(Estimate { value: v, error: (hi - v).max(v - lo) + 1e-13 * v })
}

/// Steps `delta 2^(-8 i / n)`, `i = 0..n`.
pub fn modulus_grid(delta: f64, n: usize) -> Vec<f64> {
    let n = n.max(1);
    (0..n).map(|i| delta * (-8.0 * i as f64 / n as f64).exp2()).collect()
}

/// `omega_r(f; delta)` as the maximum of `||Delta_h^r f||` over
/// [`modulus_grid`]; a lower bound for the supremum over `|h| <= delta`.
pub fn modulus(s: &Spectrum, r: u32, delta: f64, grid_size: usize) -> Result<f64> {
    modulus_of_derivative(s, r, 0, delta, grid_size)
}

/// `omega_r(f^(deriv); delta)` on the same grid.
pub fn modulus_of_derivative(s: &Spectrum, r: u32, deriv: u32, delta: f64, grid_size: usize) -> Result<f64> {
    check(r, delta)?;
    let mut best: f64 = 0.0;
    for h in modulus_grid(delta, grid_size) {
        best = best.max(difference_sq(s, r, h, deriv)?.value.max(0.0).sqrt());
    }
    Ok(best)
}

/// `omega_r(f; delta)` for every `delta` in `deltas`, from one shared grid:
/// eight points per octave from `min(delta) / 256` up to `max(delta)` plus
/// each `delta` itself, with a running maximum so the result is
/// nondecreasing in `delta`.
pub fn modulus_sweep(s: &Spectrum, r: u32, deltas: &[f64]) -> Result<Vec<f64>> {
    modulus_sweep_with(s, r, deltas, |h| difference_norm(s, r, h))
}

/// As [`modulus_sweep`] with the truncation budget of each step; the value
/// is the running maximum and the budget the largest budget among the
/// steps at or below `delta`.
pub fn modulus_sweep_budgeted(s: &Spectrum, r: u32, deltas: &[f64]) -> Result<Vec<Estimate<f64>>> {
    let mut budgets = Vec::new();
    let values = modulus_sweep_with(s, r, deltas, |h| {
        let e = difference_norm_budgeted(s, r, h)?;
        budgets.push((h, e.error));
        Ok(e.value)
    })?;
    Ok(deltas
        .iter()
        .zip(values)
        .map(|(&d, value)| Estimate { value, error: budgets.iter().filter(|b| b.0 <= d).map(|b| b.1).fold(0.0, f64::max) })
        .collect())
}

fn modulus_sweep_with<F: FnMut(f64) -> Result<f64>>(_s: &Spectrum, r: u32, deltas: &[f64], mut eval: F) -> Result<Vec<f64>> {
    require(r >= 1, "r", "must be at least 1")?;
    if deltas.is_empty() {
        return Ok(Vec::new());
    }
    require(deltas.iter().all(|d| d.is_finite() && *d > 0.0), "delta", "must be positive")?;
    let lo = deltas.iter().copied().fold(f64::INFINITY, f64::min) / 256.0;
    let hi = deltas.iter().copied().fold(0.0, f64::max);
    let mut hs: Vec<f64> = Vec::new();
    let mut h = hi;
    while h >= lo {
        hs.push(h);
        h *= (-0.125f64).exp2();
    }
    hs.extend_from_slice(deltas);
    hs.sort_by(f64::total_cmp);
    hs.dedup();
    let mut run = Vec::with_capacity(hs.len());
    let mut best: f64 = 0.0;
    for &h in &hs {
        best = best.max(eval(h)?);
        run.push(best);
    }
    Ok(deltas
        .iter()
        .map(|d| {
            let i = hs.partition_point(|h| h <= d);
            run[i - 1]
        })
        .collect())
}

/// `sup_{k <= k_max} 2^(alpha k) (int chi_k |f^|^2)^(1/2)` with `chi_0` the
/// indicator of `[-1, 1]` and `chi_k` that of `2^(k-1) <= |v| < 2^k`.
pub fn besov_seminorm(s: &Spectrum, alpha: f64, k_max: u32) -> Result<f64> {
    require(alpha.is_finite() && alpha > 0.0, "alpha", "must be positive")?;
    let mut best: f64 = 0.0;
    for k in 0..=k_max {
        let region = if k == 0 {
            Region::inside(1.0)
        } else {
            let a = f64::from(k - 1).exp2();
            Region::abs_band(a, 2.0 * a)
        };
        let band = integrate_weighted(s, 2.0, &Weight::Power(0.0), &region)?.value.max(0.0).sqrt();
        best = best.max((alpha * f64::from(k)).exp2() * band);
    }
    Ok(best)
}

/// Log-log fit of `omega_r(f; delta)` over `n_points` log-spaced steps.
pub fn lipschitz_slope(s: &Spectrum, r: u32, delta_min: f64, delta_max: f64, n_points: usize) -> Result<RateFit> {
    require(delta_min > 0.0 && delta_min < delta_max, "delta", "need 0 < delta_min < delta_max")?;
    let deltas = log_grid(delta_min, delta_max, n_points);
    let values = modulus_sweep(s, r, &deltas)?;
    let pts: Vec<(f64, f64)> = deltas.into_iter().zip(values).collect();
    loglog_fit(&pts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::sinc;
    use crate::numerics::{adaptive, Tolerance};
    use core::f64::consts::PI;

    #[test]
    fn sinc_first_difference() {
        let s = Spectrum::sinc();
        for &h in &[1.0, 0.3, 2.5] {
            let want = (2.0 * (1.0 - sinc(h))).sqrt();
            assert!((difference_norm(&s, 1, h).unwrap() - want).abs() < 1e-12, "{h}");
        }
        assert!((difference_norm(&s, 1, 1.0).unwrap() - 2f64.sqrt()).abs() < 1e-12);
        assert!(modulus(&s, 1, 1.0, DEFAULT_GRID).unwrap() >= 2f64.sqrt() - 1e-12);
    }

    #[test]
    fn second_difference_matches_quadrature() {
        let s = Spectrum::triangle(1.0, 0.7, 1.2, 0.3).unwrap();
        for &h in &[0.01, 0.4, 3.0] {
            let m = |v: f64| (2.0 * (0.5 * h * v).sin()).powi(4) * s.density_abs(v).powi(2);
            let (lo, hi) = (1.2 - 1.4 * PI, 1.2 + 1.4 * PI);
            let want = adaptive(m, &[lo, 1.2, hi], Tolerance::rel(1e-13)).unwrap().value.sqrt();
            let got = difference_norm(&s, 2, h).unwrap();
            assert!((got - want).abs() < 1e-10 * want.max(1e-3), "{h} {got} {want}");
        }
    }

    #[test]
    fn modulus_bounds() {
        let s = Spectrum::triangle(1.0, 1.0, 0.0, 0.0).unwrap();
        let l2 = s.l2_norm().unwrap();
        let m1 = modulus(&s, 2, 0.5, DEFAULT_GRID).unwrap();
        let m2 = modulus(&s, 2, 1.0, DEFAULT_GRID).unwrap();
        assert!(m2 <= 9.0 * m1 && m1 <= m2 && m2 <= 4.0 * l2);
        let sweep = modulus_sweep(&s, 2, &[0.1, 0.2, 0.5, 1.0]).unwrap();
        assert!(sweep.windows(2).all(|w| w[0] <= w[1]));
        assert_eq!(modulus(&Spectrum::from_atoms(alloc::vec![]).unwrap(), 1, 1.0, 8).unwrap(), 0.0);
    }

    #[test]
    fn besov_of_sinc_and_empty() {
        let s = Spectrum::sinc();
        let b = besov_seminorm(&s, 1.0, 2).unwrap();
        assert_eq!(b, besov_seminorm(&s, 1.0, 12).unwrap());
        assert!(b > 0.0);
        assert_eq!(besov_seminorm(&Spectrum::from_atoms(alloc::vec![]).unwrap(), 1.0, 5).unwrap(), 0.0);
    }

    #[test]
    fn bandlimited_slope_saturates() {
        let s = Spectrum::triangle(1.0, 1.0, 0.0, 0.0).unwrap();
        let fit = lipschitz_slope(&s, 1, 1e-4, 1e-2, 8).unwrap();
        assert!((fit.slope - 1.0).abs() < 1e-3, "{fit:?}");
    }
}
