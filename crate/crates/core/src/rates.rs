//! Log-log slope fits and trend tests that turn `O`/`o` statements into
//! numbers.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{require, Error, Result};

/// Least-squares line through `(ln x, ln y)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RateFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub window: (f64, f64),
    pub n_points: usize,
}

pub fn loglog_fit(points: &[(f64, f64)]) -> Result<RateFit> {
    if points.len() < 4 {
        return Err(Error::DegenerateFit(format!("{} points, need at least 4", points.len())));
    }
    if let Some(p) = points.iter().find(|p| !(p.0 > 0.0 && p.1 > 0.0 && p.0.is_finite() && p.1.is_finite())) {
        return Err(Error::DegenerateFit(format!("non-positive or non-finite point ({}, {})", p.0, p.1)));
    }
    let n = points.len() as f64;
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my) * (y - my)).sum();
    if sxx <= 0.0 {
        return Err(Error::DegenerateFit("all abscissae coincide".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r_squared = if syy <= 1e-300 { 1.0 } else { (sxy * sxy / (sxx * syy)).clamp(0.0, 1.0) };
    let lo = points.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
    let hi = points.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
    Ok(RateFit { slope, intercept, r_squared, window: (lo, hi), n_points: points.len() })
}

/// `n` log-spaced parameters from `a` to `b` inclusive.
pub fn log_grid(a: f64, b: f64, n: usize) -> Vec<f64> {
    if n <= 1 {
        return alloc::vec![a];
    }
    let (la, lb) = (a.ln(), b.ln());
    (0..n)
        .map(|i| match i {
            0 => a,
            _ if i == n - 1 => b,
            _ => (la + (lb - la) * i as f64 / (n - 1) as f64).exp(),
        })
        .collect()
}

/// Evaluates `quantity` at `n` log-spaced points of `range`.
pub fn sweep<F: FnMut(f64) -> Result<f64>>(mut quantity: F, range: (f64, f64), n: usize) -> Result<Vec<(f64, f64)>> {
    require(range.0 > 0.0 && range.0 < range.1, "range", "must be positive and increasing")?;
    log_grid(range.0, range.1, n).into_iter().map(|x| quantity(x).map(|y| (x, y))).collect()
}

/// Direction in which the asymptotic statement is taken.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Limit {
    Infinity,
    Zero,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    LittleO,
    BigOTight,
    Inconclusive,
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::LittleO => "LITTLE_O",
            Verdict::BigOTight => "BIG_O_TIGHT",
            Verdict::Inconclusive => "INCONCLUSIVE",
        }
    }
}

/// Thresholds on the trend ratio: below `LITTLE_O_BELOW` the scaled quantity
/// is taken to vanish, inside `[TIGHT_BAND, 1/TIGHT_BAND]` to stabilise.
pub const LITTLE_O_BELOW: f64 = 0.5;
pub const TIGHT_BAND: f64 = 0.9;

#[derive(Clone, Debug, PartialEq)]
pub struct TrendReport {
    pub verdict: Verdict,
    /// Mean of `y x^exponent` over the quartile nearest the limit divided by
    /// the mean over the quartile farthest from it.
    pub ratio: f64,
    pub scaled: Vec<(f64, f64)>,
}

/// Classifies `y x^exponent` along `points` as vanishing or stabilising.
pub fn classify_trend(points: &[(f64, f64)], exponent: f64, toward: Limit) -> Result<TrendReport> {
    if points.len() < 4 {
        return Err(Error::DegenerateFit(format!("{} points, need at least 4", points.len())));
    }
    let mut scaled: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x, y * x.powf(exponent))).collect();
    scaled.sort_by(|a, b| a.0.total_cmp(&b.0));
    if toward == Limit::Zero {
        scaled.reverse();
    }
    let q = (scaled.len() / 4).max(1);
    let first = scaled[..q].iter().map(|p| p.1).sum::<f64>() / q as f64;
    let last = scaled[scaled.len() - q..].iter().map(|p| p.1).sum::<f64>() / q as f64;
    if !(first > 0.0) {
        return Err(Error::DegenerateFit("scaled quantity vanishes away from the limit".into()));
    }
    let ratio = last / first;
    let verdict = if ratio < LITTLE_O_BELOW {
        Verdict::LittleO
    } else if (TIGHT_BAND..=1.0 / TIGHT_BAND).contains(&ratio) {
        Verdict::BigOTight
    } else {
        Verdict::Inconclusive
    };
    Ok(TrendReport { verdict, ratio, scaled })
}

/// Sweeps `quantity` over `range` and classifies `y x^exponent`.
pub fn oh_vs_big_oh<F: FnMut(f64) -> Result<f64>>(
    quantity: F,
    range: (f64, f64),
    n: usize,
    exponent: f64,
    toward: Limit,
) -> Result<TrendReport> {
    let pts = sweep(quantity, range, n)?;
    classify_trend(&pts, exponent, toward)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_power() {
        let pts: Vec<_> = log_grid(1.0, 100.0, 9).into_iter().map(|x| (x, x * x)).collect();
        let f = loglog_fit(&pts).unwrap();
        assert!((f.slope - 2.0).abs() < 1e-12 && (f.r_squared - 1.0).abs() < 1e-12);
        let c: Vec<_> = pts.iter().map(|p| (p.0, 3.0)).collect();
        assert!(loglog_fit(&c).unwrap().slope.abs() < 1e-12);
    }

    #[test]
    fn perturbed_power() {
        let pts: Vec<_> = log_grid(1.0, 1e6, 40).into_iter().map(|x: f64| (x, x.powf(-0.5) * (1.0 + 0.01 * x.ln().sin()))).collect();
        assert!((loglog_fit(&pts).unwrap().slope + 0.5).abs() < 0.02);
    }

    #[test]
    fn degenerate_inputs() {
        assert!(matches!(loglog_fit(&[(1.0, 1.0), (2.0, 2.0), (3.0, 3.0)]), Err(Error::DegenerateFit(_))));
        assert!(matches!(loglog_fit(&[(1.0, 1.0), (2.0, 0.0), (3.0, 3.0), (4.0, 1.0)]), Err(Error::DegenerateFit(_))));
        assert!(matches!(loglog_fit(&[(2.0, 1.0); 5]), Err(Error::DegenerateFit(_))));
    }

    #[test]
    fn trends() {
        let r = oh_vs_big_oh(|_| Ok(4.0), (1.0, 10.0), 12, 0.0, Limit::Infinity).unwrap();
        assert_eq!(r.verdict, Verdict::BigOTight);
        // sigma^{-1-2a} against sigma^{2a}
        let r = oh_vs_big_oh(|s: f64| Ok(s.powf(-2.5)), (16.0, 4096.0), 16, 1.5, Limit::Infinity).unwrap();
        assert_eq!(r.verdict, Verdict::LittleO);
        let r = oh_vs_big_oh(|d: f64| Ok(d.sqrt()), (1e-4, 1e-1), 16, -0.5, Limit::Zero).unwrap();
        assert_eq!(r.verdict, Verdict::BigOTight);
    }
}
