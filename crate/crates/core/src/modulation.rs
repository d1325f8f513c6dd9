//! Modulation norms of a function read off its transform: the classical
//! `M^{2,1}` norm `sum_n ||f^||_{L^2[n, n+1]}`, the rescaled band sums
//! `N_h`, their supremum over `h`, dilation bounds and the uniform tail
//! diagnostic.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{require, Error, Result};
use crate::numerics::{integrate_weighted, power_integral, sum_tail, Estimate, Region, Weight};
use crate::spectrum::{PowerTail, Spectrum};

/// Explicit bands summed before the closed-form tail of power-law parts.
const EXPLICIT_TAIL_BANDS: i64 = 256;
/// Refuse band sums that would need more explicit bands than this.
const MAX_BANDS: usize = 4_000_000;

/// `int_a^b |f^|^2`.
fn mass(s: &Spectrum, a: f64, b: f64) -> Result<Estimate<f64>> {
    integrate_weighted(s, 2.0, &Weight::Power(0.0), &Region::interval(a, b))
}

/// `int_a^{a + w} |tail(v)|^2 dv`, tails only.
fn tail_band(tails: &[PowerTail], a: f64, w: f64) -> f64 {
    let mut acc = 0.0;
    for x in tails {
        for y in tails {
            let p = -(x.gamma + y.gamma);
            let lo = x.cutoff.max(y.cutoff);
            let part = if lo <= a {
                // written with the width so that huge `a` stays smooth
                let e = p + 1.0;
                a.powf(e) * (e * (w / a).ln_1p()).exp_m1() / e
            } else if a + w > lo {
                power_integral(p, lo, a + w).unwrap_or(0.0)
            } else {
                0.0
            };
            acc += x.amp * y.amp * part;
        }
    }
    acc
}

/// `sum_{keep(n)} ((1/h) int_{n/h}^{(n+1)/h} |f^|^2)^(1/2)` over the
/// spectrum as given.
fn band_sum<K: Fn(i64) -> bool>(s: &Spectrum, h: f64, keep: K) -> Result<Estimate<f64>> {
    let tails = s.tails();
    if let Some(t) = tails.iter().find(|t| t.gamma <= 1.0) {
        return Err(Error::DivergentSum(format!("band norms of |v|^-{} are not summable", t.gamma)));
    }
    let mut bands: Vec<i64> = Vec::new();
    for a in s.atoms() {
        let (lo, hi) = a.support();
        let first = (lo * h).floor() as i64;
        let last = ((hi * h).ceil() as i64 - 1).max(first);
        if bands.len() + (last - first) as usize > MAX_BANDS {
            return Err(Error::NonConvergence(format!("more than {MAX_BANDS} bands at h = {h}")));
        }
        bands.extend(first..=last);
    }
    let mut far = None;
    if !tails.is_empty() {
        let cmin = tails.iter().map(|t| t.cutoff).fold(f64::INFINITY, f64::min);
        let cmax = tails.iter().map(|t| t.cutoff).fold(0.0, f64::max);
        let hull = s.max_frequency_of_atoms();
        let start = (cmin * h).floor() as i64;
        let end = ((cmax.max(hull) * h).ceil() as i64).max(start) + EXPLICIT_TAIL_BANDS;
        if bands.len() + 2 * (end - start) as usize > MAX_BANDS {
            return Err(Error::NonConvergence(format!("more than {MAX_BANDS} bands at h = {h}")));
        }
        for n in start..=end {
            bands.push(n);
            bands.push(-n - 1);
        }
        far = Some(end + 1);
    }
    bands.sort_unstable();
    bands.dedup();
    let inv = 1.0 / h;
    let mut out = Estimate::default();
    for n in bands {
        if !keep(n) {
            continue;
        }
        let m = mass(s, n as f64 * inv, (n + 1) as f64 * inv)?;
        let v = (m.value.max(0.0) * inv).sqrt();
        out.value += v;
        if v > 0.0 {
            out.error += 0.5 * m.error * inv / v;
        }
    }
    if let Some(n0) = far {
        let g = |n: f64| (tail_band(tails, n * inv, inv) * inv).sqrt();
        let (pos, e) = sum_tail(g, n0 as u64)?;
        // bands n >= n0 and their mirrors n <= -n0 - 1
        let both = [keep(n0), keep(-n0 - 1)].iter().filter(|k| **k).count() as f64;
        out.value += both * pos;
        out.error += both * e;
    }
    out.error += 1e-14 * out.value;
    Ok(out)
}

fn check_h(h: f64) -> Result<()> {
    require(h.is_finite() && h > 0.0 && h <= 1.0, "h", "must lie in (0, 1]")
}

/// `||f||_{M^{2,1}} = sum_n ||f^||_{L^2[n, n+1]}`.  For a truncated series
/// the omitted atoms each fill part of a single unit band, so their exact
/// contribution is added from the term law.
pub fn m21_norm(s: &Spectrum) -> Result<Estimate<f64>> {
    let mut e = band_sum(s, 1.0, |_| true)?;
    if let Some(spec) = s.truncation() {
        let f = spec.family;
        let o = spec.omitted(|n| f.band_law(n))?;
        e.value += o.value;
        e.error += o.error;
    }
    Ok(e)
}

/// Bracket `[lo, hi]` on the contribution of the atoms a truncated series
/// omits to a band sum at step `h`.  Atom `n` meets at most two bands, so
/// it adds at most `(2 / h)^(1/2) ||atom_n||_2`; when consecutive omitted
/// supports are more than `1/h` apart no band holds two atoms and each adds
/// at least `h^(-1/2) ||atom_n||_2`.
fn omitted_bracket(s: &Spectrum, h: f64) -> Result<(f64, f64)> {
    let Some(spec) = s.truncation() else {
        return Ok((0.0, 0.0));
    };
    if spec.family.is_power_tail() {
        return Ok((0.0, 0.0));
    }
    let f = spec.family;
    let o = spec.omitted(|n| f.band_law(n))?;
    let n = spec.n_terms as f64;
    let gap = f.support(n + 1.0).0 - f.support(n).1;
    let lo = if gap > 1.0 / h { (o.value - o.error).max(0.0) / h.sqrt() } else { 0.0 };
    Ok((lo, (2.0 / h).sqrt() * (o.value + o.error)))
}

fn with_omitted(mut e: Estimate<f64>, s: &Spectrum, h: f64) -> Result<Estimate<f64>> {
    let (lo, hi) = omitted_bracket(s, h)?;
    e.value += 0.5 * (lo + hi);
    e.error += 0.5 * (hi - lo);
    Ok(e)
}

/// `N_h(f) = sum_{n != -1, 0} ((1/h) int_{n/h}^{(n+1)/h} |f^|^2)^(1/2)`.
///
/// For a truncated series the kept atoms give a lower bound because the
/// supports are disjoint; the omitted atoms are bracketed and the estimate
/// is the midpoint of the bracket.
pub fn n_h(s: &Spectrum, h: f64) -> Result<Estimate<f64>> {
    check_h(h)?;
    with_omitted(band_sum(s, h, |n| n != -1 && n != 0)?, s, h)
}

/// `sum_{n >= n0 or n <= -n0 - 1} ((1/h) int_{n/h}^{(n+1)/h} |f^|^2)^(1/2)`.
pub fn scaled_tail(s: &Spectrum, h: f64, n0: u64) -> Result<Estimate<f64>> {
    require(h.is_finite() && h > 0.0, "h", "must be positive")?;
    let n0 = n0 as i64;
    with_omitted(band_sum(s, h, |n| n >= n0 || n < -n0)?, s, h)
}

/// `{2^(-k/4) : 0 <= k <= 40}` together with `n0 / c` for every atom centre
/// `c >= 1` and `n0 in {1, 2, 4, 8}` inside `[2^-10, 1]`, sorted descending.
pub fn default_h_grid(s: &Spectrum) -> Vec<f64> {
    let mut grid: Vec<f64> = (0..=40).map(|k| (-f64::from(k) / 4.0).exp2()).collect();
    for a in s.atoms() {
        let c = a.center().abs();
        if c >= 1.0 {
            for n0 in [1.0, 2.0, 4.0, 8.0] {
                let h = n0 / c;
                if (1.0 / 1024.0..=1.0).contains(&h) {
                    grid.push(h);
                }
            }
        }
    }
    grid.sort_by(|a, b| b.total_cmp(a));
    grid.dedup();
    grid
}

/// `N_h` over a grid of steps.  `sup_lower_bound` is a certified lower
/// bound for `N(f) = sup_{0 < h <= 1} N_h(f)`.
#[derive(Clone, Debug)]
pub struct ModulationProfile {
    pub h_grid: Vec<f64>,
    /// Certified lower bound on `N_h` per step.
    pub values: Vec<f64>,
    /// Width of the bracket above each value: `N_h` lies in
    /// `[values[i], values[i] + budgets[i]]`.
    pub budgets: Vec<f64>,
    pub sup_lower_bound: f64,
    pub argmax: f64,
    pub m21: Estimate<f64>,
}

/// Profile of `N_h` over `h_grid`; `h = 1` is added when missing.
pub fn n_sup(s: &Spectrum, h_grid: &[f64]) -> Result<ModulationProfile> {
    for &h in h_grid {
        check_h(h)?;
    }
    let mut grid = h_grid.to_vec();
    if !grid.contains(&1.0) {
        grid.insert(0, 1.0);
    }
    let mut values = Vec::with_capacity(grid.len());
    let mut budgets = Vec::with_capacity(grid.len());
    let (mut best, mut argmax) = (0.0, 1.0);
    for &h in &grid {
        let e = n_h(s, h)?;
        let lower = (e.value - e.error).max(0.0);
        if lower > best {
            best = lower;
            argmax = h;
        }
        values.push(lower);
        budgets.push(2.0 * e.error);
    }
    Ok(ModulationProfile { h_grid: grid, values, budgets, sup_lower_bound: best, argmax, m21: m21_norm(s)? })
}

/// Two-sided bounds on `||g(lambda .)||_{2,1}` in terms of `||g||_{2,1}` for
/// `g = f^` in the amalgam `W(L^2, l^1)`.
#[derive(Clone, Debug)]
pub struct DilationReport {
    pub lambda: f64,
    pub norm: f64,
    pub dilated: f64,
    pub lower: f64,
    pub upper: f64,
    pub holds: bool,
}

/// `||g(lambda .)||_{2,1}` against
/// `(1/6) lambda^(-3/2) ||g|| <= . <= 3 lambda^(1/2) ||g||` for `lambda >= 1`
/// and `(1/3) lambda^(1/2) ||g|| <= . <= 6 lambda^(-3/2) ||g||` below 1.
pub fn dilation_bounds_check(s: &Spectrum, lambda: f64) -> Result<DilationReport> {
    require(lambda.is_finite() && lambda > 0.0, "lambda", "must be positive")?;
    let plain = Spectrum::new(s.atoms().to_vec(), s.tails().to_vec())?;
    let norm = band_sum(&plain, 1.0, |_| true)?.value;
    // g(lambda v) is the transform of t -> f(t / lambda) / lambda
    let dilated = band_sum(&plain.dilate(1.0 / lambda)?, 1.0, |_| true)?.value / lambda;
    let (lo, hi) =
        if lambda >= 1.0 { (lambda.powf(-1.5) / 6.0, 3.0 * lambda.sqrt()) } else { (lambda.sqrt() / 3.0, 6.0 * lambda.powf(-1.5)) };
    let (lower, upper) = (lo * norm, hi * norm);
    let slack = 1e-12 * norm;
    Ok(DilationReport { lambda, norm, dilated, lower, upper, holds: dilated >= lower - slack && dilated <= upper + slack })
}

/// Uniform-tail diagnostic: for each `n0`, the supremum over `h_grid` of
/// [`scaled_tail`].  A tail supremum that stays away from zero as `n0`
/// grows witnesses non-uniform convergence; a vanishing one is consistent
/// with it but proves nothing about steps off the grid.
#[derive(Clone, Debug)]
pub struct MStarReport {
    pub h_grid: Vec<f64>,
    pub n0_list: Vec<u64>,
    /// `tails[i][j]` is a lower bound on the scaled tail for `n0_list[i]`
    /// at `h_grid[j]`.
    pub tails: Vec<Vec<f64>>,
    pub sups: Vec<f64>,
    pub vanishing: bool,
}

/// Ratio of the last to the first tail supremum below which the tails are
/// read as vanishing.
pub const MSTAR_VANISH_RATIO: f64 = 0.25;

pub fn mstar_uniformity(s: &Spectrum, h_grid: &[f64], n0_list: &[u64]) -> Result<MStarReport> {
    require(!h_grid.is_empty() && !n0_list.is_empty(), "grid", "needs at least one step and one n0")?;
    for &h in h_grid {
        check_h(h)?;
    }
    let mut tails = Vec::with_capacity(n0_list.len());
    let mut sups = Vec::with_capacity(n0_list.len());
    for &n0 in n0_list {
        let row: Vec<f64> = h_grid.iter().map(|&h| scaled_tail(s, h, n0).map(|e| (e.value - e.error).max(0.0))).collect::<Result<_>>()?;
        sups.push(row.iter().copied().fold(0.0, f64::max));
        tails.push(row);
    }
    let first = sups[0];
    let last = sups[sups.len() - 1];
    let vanishing = last == 0.0 || last <= MSTAR_VANISH_RATIO * first;
    Ok(MStarReport { h_grid: h_grid.to_vec(), n0_list: n0_list.to_vec(), tails, sups, vanishing })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counterexamples::{Family, FamilySpec};
    use core::f64::consts::PI;

    fn dyadic_log(n: u64) -> Spectrum {
        FamilySpec::new(Family::DyadicLog, n).unwrap().build().unwrap()
    }

    #[test]
    fn m21_of_single_atom() {
        // psi_n has unit-band norm 2 sqrt(2 pi / 3)
        let s = Spectrum::triangle(1.0, 1.0 / (4.0 * PI), 7.5, 0.0).unwrap();
        let want = 2.0 * (2.0 * PI / 3.0).sqrt();
        assert!((m21_norm(&s).unwrap().value - want).abs() < 1e-13);
        let inside = Spectrum::triangle(1.0, 1.0 / (8.0 * PI), 0.5, 0.0).unwrap();
        assert!((m21_norm(&inside).unwrap().value - inside.l2_norm().unwrap()).abs() < 1e-14);
        assert_eq!(m21_norm(&Spectrum::from_atoms(Vec::new()).unwrap()).unwrap().value, 0.0);
    }

    #[test]
    fn m21_of_dyadic_log() {
        let want = PI * PI / 3.0 * (2.0 * PI / 3.0).sqrt();
        let e = m21_norm(&dyadic_log(32)).unwrap();
        assert!((e.value - want).abs() <= e.error + 1e-12, "{e:?}");
        assert!((e.value - 4.76116).abs() < 1e-4);
    }

    #[test]
    fn m21_of_power_tail() {
        let s = Spectrum::power_tail(1.5).unwrap();
        let g = |n: f64| power_integral(-3.0, n, n + 1.0).unwrap().sqrt();
        let want = 2.0 * (1..200_000).map(|n| g(n as f64)).sum::<f64>();
        // remainder of the explicit sum is about 2 * 2 / sqrt(2e5)
        let e = m21_norm(&s).unwrap();
        assert!((e.value - want - 2.0 * 2.0 / (2e5f64).sqrt()).abs() < 1e-4, "{e:?} {want}");
        assert!(matches!(m21_norm(&Spectrum::power_tail(0.9).unwrap()), Err(Error::DivergentSum(_))));
    }

    #[test]
    fn bandlimited_profile_vanishes() {
        let s = Spectrum::triangle(1.0, 1.0 / (2.0 * PI), 0.0, 0.0).unwrap();
        for h in [1.0, 0.5, 0.01] {
            assert_eq!(n_h(&s, h).unwrap().value, 0.0);
        }
        let p = n_sup(&s, &default_h_grid(&s)).unwrap();
        assert_eq!(p.sup_lower_bound, 0.0);
        assert_eq!(p.h_grid[0], 1.0);
    }

    #[test]
    fn dyadic_log_grows_along_dyadic_steps() {
        let s = dyadic_log(32);
        for k in 1..=10 {
            let h = (-f64::from(k)).exp2();
            let bound = (2.0 * PI / 3.0).sqrt() * (f64::from(k) / 2.0 + 1.0).exp2() / (f64::from(k) + 1.0);
            let e = n_h(&s, h).unwrap();
            assert!(e.value - e.error >= bound, "k = {k}");
        }
    }

    #[test]
    fn dyadic_sqrt_stays_bounded() {
        let s = FamilySpec::new(Family::DyadicSqrt, 40).unwrap().build().unwrap();
        let cap = 4.0 / (2f64.sqrt() - 1.0) * (PI / 3.0).sqrt();
        let p = n_sup(&s, &default_h_grid(&s)).unwrap();
        for (v, b) in p.values.iter().zip(&p.budgets) {
            assert!(v + b <= cap);
        }
    }

    #[test]
    fn dilation_identity_and_bounds() {
        let s = dyadic_log(20);
        let r = dilation_bounds_check(&s, 1.0).unwrap();
        assert!((r.dilated - r.norm).abs() < 1e-12 * r.norm);
        for l in [0.25, 0.5, 2.0, 4.0] {
            assert!(dilation_bounds_check(&s, l).unwrap().holds, "{l}");
        }
    }

    #[test]
    fn mstar_of_bandlimited() {
        let s = Spectrum::sinc().scale(0.5).unwrap().dilate(1.0 / PI).unwrap();
        let r = mstar_uniformity(&s, &[1.0, 0.5, 0.1], &[1, 2, 4]).unwrap();
        assert!(r.sups.iter().all(|x| *x == 0.0) && r.vanishing);
    }
}
