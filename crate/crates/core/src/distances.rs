//! Distances from Bernstein spaces, `dist_q(f, B_sigma) = ||f^||_{L^q(|v| >= sigma)}`,
//! their derivative and fractional variants, and the derivative-free
//! integral built from the modulus of smoothness.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{require, Error, Result};
use crate::numerics::{integrate_weighted, power_integral, Estimate, Region, Weight};
use crate::spectrum::Spectrum;

fn check(q: f64, sigma: f64) -> Result<()> {
    require((1.0..=2.0).contains(&q), "q", "must lie in [1, 2]")?;
    require(sigma.is_finite() && sigma >= 0.0, "sigma", "must be nonnegative")
}

/// `int_{|v| >= sigma} |v|^w |f^|^q` on the spectrum as given.
fn tail(s: &Spectrum, q: f64, w: f64, sigma: f64) -> Result<Estimate<f64>> {
    integrate_weighted(s, q, &Weight::Power(w), &Region::outside(sigma))
}

/// Tail integral with the omitted atoms of a truncated series added; the
/// error covers quadrature and the omitted-atom bracket.
pub fn budgeted_tail(s: &Spectrum, q: f64, w: f64, sigma: f64) -> Result<Estimate<f64>> {
    let mut e = tail(s, q, w, sigma)?;
    if let Some(spec) = s.truncation() {
        let o = spec.omitted_tail_mass(q, w, sigma).map_err(|err| match err {
            Error::DivergentSum(m) => Error::DivergentIntegral(m),
            other => other,
        })?;
        e.value += o.value;
        e.error += o.error;
    }
    e.error += 1e-13 * e.value.abs();
    Ok(e)
}

fn root(e: Estimate<f64>, q: f64) -> Estimate<f64> {
    let v = e.value.max(0.0).powf(1.0 / q);
    let lo = (e.value - e.error).max(0.0).powf(1.0 / q);
    let hi = (e.value + e.error).powf(1.0 / q);
    Estimate { value: v, error: (hi - v).max(v - lo) }
}

/// `dist_q(f, B_sigma)`.
pub fn dist(s: &Spectrum, q: f64, sigma: f64) -> Result<f64> {
    check(q, sigma)?;
    Ok(tail(s, q, 0.0, sigma)?.value.max(0.0).powf(1.0 / q))
}

/// `dist_q` of the full series behind a truncated spectrum, with budget.
pub fn dist_budgeted(s: &Spectrum, q: f64, sigma: f64) -> Result<Estimate<f64>> {
    check(q, sigma)?;
    Ok(root(budgeted_tail(s, q, 0.0, sigma)?, q))
}

/// `dist_q(f^(k), B_sigma) = (int_{|v| >= sigma} |v^k f^(v)|^q dv)^(1/q)`.
pub fn dist_derivative(s: &Spectrum, q: f64, sigma: f64, k: u32) -> Result<f64> {
    check(q, sigma)?;
    Ok(tail(s, q, q * f64::from(k), sigma)?.value.max(0.0).powf(1.0 / q))
}

pub fn dist_derivative_budgeted(s: &Spectrum, q: f64, sigma: f64, k: u32) -> Result<Estimate<f64>> {
    check(q, sigma)?;
    Ok(root(budgeted_tail(s, q, q * f64::from(k), sigma)?, q))
}

/// `int_{|v| >= sigma} |v|^(2 beta) |f^(v)|^2 dv`.
pub fn fractional_tail(s: &Spectrum, sigma: f64, beta: f64) -> Result<f64> {
    check(2.0, sigma)?;
    require(beta.is_finite() && beta >= 0.0, "beta", "must be nonnegative")?;
    Ok(tail(s, 2.0, 2.0 * beta, sigma)?.value)
}

pub fn fractional_tail_budgeted(s: &Spectrum, sigma: f64, beta: f64) -> Result<Estimate<f64>> {
    check(2.0, sigma)?;
    require(beta.is_finite() && beta >= 0.0, "beta", "must be nonnegative")?;
    budgeted_tail(s, 2.0, 2.0 * beta, sigma)
}

/// Samples `(delta, omega(delta))` with increasing `delta`, read as a
/// piecewise power law.
#[derive(Clone, Debug)]
pub struct ModulusCurve {
    points: Vec<(f64, f64)>,
}

impl ModulusCurve {
    pub fn new(mut points: Vec<(f64, f64)>) -> Result<Self> {
        points.retain(|p| p.0 > 0.0);
        points.sort_by(|a, b| a.0.total_cmp(&b.0));
        points.dedup_by(|a, b| a.0 == b.0);
        require(points.len() >= 2, "delta_grid", "needs at least two positive steps")?;
        require(points.iter().all(|p| p.1 > 0.0 && p.1.is_finite()), "omega", "values must be positive")?;
        Ok(Self { points })
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    /// Log-log slope on segment `i` (between points `i` and `i + 1`).
    fn slope(&self, i: usize) -> f64 {
        let (a, b) = (self.points[i], self.points[i + 1]);
        (b.1 / a.1).ln() / (b.0 / a.0).ln()
    }

    pub fn eval(&self, delta: f64) -> f64 {
        let p = &self.points;
        let i = p.partition_point(|x| x.0 <= delta).saturating_sub(1).min(p.len() - 2);
        p[i].1 * (delta / p[i].0).powf(self.slope(i))
    }

    /// `int_sigma^inf v^(-q/2) omega(1/v)^q dv`, exact for the piecewise
    /// power law; below the smallest step the first segment is extended.
    pub fn integral(&self, q: f64, sigma: f64) -> Result<f64> {
        require(sigma > 0.0, "sigma", "must be positive")?;
        // substitute d = 1/v: int_0^{1/sigma} d^(q/2 - 2) omega(d)^q dd
        let top = 1.0 / sigma;
        let p = &self.points;
        let mut acc = 0.0;
        let seg = |i: usize, a: f64, b: f64| -> Result<f64> {
            let s = self.slope(i);
            let (d0, w0) = p[i];
            let e = q / 2.0 - 2.0 + q * s;
            let c = w0.powf(q) * d0.powf(-q * s);
            Ok(c * power_integral(e, a, b)?)
        };
        let s0 = self.slope(0);
        let e0 = q / 2.0 - 2.0 + q * s0;
        if e0 <= -1.0 {
            return Err(Error::NonConvergence(format!("modulus slope {s0} too small for convergence at delta -> 0")));
        }
        let lo0 = p[0].0.min(top);
        acc += p[0].1.powf(q) * p[0].0.powf(-q * s0) * lo0.powf(e0 + 1.0) / (e0 + 1.0);
        for i in 0..p.len() - 1 {
            let a = p[i].0.max(lo0);
            let b = p[i + 1].0.min(top);
            if b > a {
                acc += seg(i, a, b)?;
            }
        }
        let last = p[p.len() - 1].0;
        if top > last {
            acc += seg(p.len() - 2, last, top)?;
        }
        Ok(acc)
    }
}

/// The integral factor `(int_sigma^inf v^(-q/2) [omega_r(f, 1/v)]^q dv)^(1/q)`
/// of the derivative-free estimate, with `omega_r` sampled on `delta_grid`.
pub fn derivative_free_bound(s: &Spectrum, r: u32, q: f64, sigma: f64, delta_grid: &[f64]) -> Result<f64> {
    check(q, sigma)?;
    let curve = modulus_curve(s, r, delta_grid)?;
    Ok(curve.integral(q, sigma)?.powf(1.0 / q))
}

pub fn modulus_curve(s: &Spectrum, r: u32, delta_grid: &[f64]) -> Result<ModulusCurve> {
    let values = crate::smoothness::modulus_sweep(s, r, delta_grid)?;
    ModulusCurve::new(delta_grid.iter().copied().zip(values).collect())
}

/// Ratio `dist_q / integral factor` over a sigma sweep.  The largest ratio
/// is an empirical lower estimate of the unknown constant `c_{r,q}`.
#[derive(Clone, Debug)]
pub struct ConstantEstimate {
    pub sigmas: Vec<f64>,
    pub dists: Vec<f64>,
    pub integrals: Vec<f64>,
    pub ratios: Vec<f64>,
    pub max_ratio: f64,
}

pub fn derivative_free_ratio(s: &Spectrum, r: u32, q: f64, sigmas: &[f64], delta_grid: &[f64]) -> Result<ConstantEstimate> {
    let curve = modulus_curve(s, r, delta_grid)?;
    let mut out =
        ConstantEstimate { sigmas: sigmas.to_vec(), dists: Vec::new(), integrals: Vec::new(), ratios: Vec::new(), max_ratio: 0.0 };
    for &sg in sigmas {
        check(q, sg)?;
        let d = dist(s, q, sg)?;
        let i = curve.integral(q, sg)?.powf(1.0 / q);
        let ratio = if i > 0.0 { d / i } else { 0.0 };
        out.dists.push(d);
        out.integrals.push(i);
        out.ratios.push(ratio);
        out.max_ratio = out.max_ratio.max(ratio);
    }
    Ok(out)
}
