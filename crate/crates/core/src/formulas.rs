//! Sampling and reconstruction formulas beyond band-limited functions, each
//! with its remainder: the Whittaker-Kotel'nikov-Shannon series, the
//! reproducing kernel formula, the Parseval sampling formula, and the
//! Bernstein and Nikol'skii inequalities.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::distances::{dist, dist_derivative};
use crate::error::{require, Error, Result};
use crate::math::{sinc, INV_SQRT_2PI};
use crate::numerics::{adaptive_split, integrate_abs_q, integrate_weighted, invert, Estimate, Region, Tolerance, Weight};
use crate::spectrum::{Atom, RectAtom, Spectrum};

/// Target ratio of the sample-sum truncation budget to the partial sum.
pub const SAMPLE_REL_TOL: f64 = 1e-8;
/// Largest sample index used when the truncation is chosen automatically.
pub const MAX_SAMPLE_INDEX: usize = 1 << 16;

/// A formula evaluated at one point: the approximation, the reference
/// value, their difference and the analytic bound on it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RemainderReport {
    pub approx: Complex64,
    pub exact: Complex64,
    pub remainder: Complex64,
    /// Bound on `|remainder|`; `None` when the formula has no explicit one.
    pub bound: Option<f64>,
    /// Truncation and quadrature error of `approx` and `exact`.
    pub truncation_budget: f64,
}

impl RemainderReport {
    fn new(approx: Complex64, exact: Complex64, bound: Option<f64>, truncation_budget: f64) -> Self {
        Self { approx, exact, remainder: exact - approx, bound, truncation_budget }
    }

    /// `|remainder| <= bound + truncation_budget`.
    pub fn holds(&self) -> Option<bool> {
        self.bound.map(|b| self.remainder.norm() <= b + self.truncation_budget + 1e-13 * (1.0 + self.exact.norm()))
    }
}

/// A truncated sum over sample indices `|k| <= k_max`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SampleSum {
    pub value: Complex64,
    /// Bound on the omitted terms.
    pub budget: f64,
    pub k_max: usize,
}

/// Bound `sum coef / |k - centre|^p` on a sequence of sample values.
#[derive(Clone, Debug, Default)]
struct Envelope {
    terms: Vec<(f64, f64, f64)>,
}

impl Envelope {
    /// `|f(h k)|` for the atoms of `s`.
    fn samples(s: &Spectrum, h: f64) -> Self {
        let terms = s
            .atoms()
            .iter()
            .map(|a| match a {
                Atom::Triangle(x) => (x.amp.abs() / (PI * x.b * h).powi(2), 2.0, x.tau / h),
                Atom::Rect(x) => (x.amp.abs() / (PI * h), 1.0, x.tau / h),
            })
            .collect();
        Self { terms }
    }

    /// `|sinc(t / h - k)|`.
    fn sinc(t: f64, h: f64) -> Self {
        Self { terms: alloc::vec![(1.0 / PI, 1.0, t / h)] }
    }

    fn reach(&self) -> f64 {
        self.terms.iter().map(|t| t.2.abs()).fold(0.0, f64::max)
    }
}

/// Bound on `sum_{|k| > K} e1(k) e2(k)` by the integral test.
fn product_tail(e1: &Envelope, e2: &Envelope, k: usize) -> f64 {
    let k = k as f64;
    let mut total = 0.0;
    for side in [1.0, -1.0] {
        let c = e1.terms.iter().chain(&e2.terms).map(|t| side * t.2).fold(f64::NEG_INFINITY, f64::max);
        let d = k - c;
        if !(d >= 1.0) {
            return f64::INFINITY;
        }
        for a in &e1.terms {
            for b in &e2.terms {
                let p = a.1 + b.1;
                total += a.0 * b.0 * d.powf(1.0 - p) / (p - 1.0);
            }
        }
    }
    total
}

/// `sum_{|k| <= K} term(k)` with `K` fixed or doubled until the budget
/// falls below [`SAMPLE_REL_TOL`] of the sum.
fn sample_sum<T, B>(term: T, budget: B, reach: f64, k_fixed: Option<usize>, floor: f64) -> SampleSum
where
    T: Fn(i64) -> Complex64,
    B: Fn(usize) -> f64,
{
    let start = k_fixed.unwrap_or_else(|| (2.0 * reach.ceil() + 64.0).min(MAX_SAMPLE_INDEX as f64) as usize);
    let mut value = Complex64::new(0.0, 0.0);
    for k in -(start as i64)..=(start as i64) {
        value += term(k);
    }
    let mut k = start;
    if k_fixed.is_none() {
        while budget(k) > SAMPLE_REL_TOL * value.norm() + floor && k < MAX_SAMPLE_INDEX {
            let next = (2 * k).min(MAX_SAMPLE_INDEX);
            for i in (k + 1) as i64..=next as i64 {
                value += term(i) + term(-i);
            }
            k = next;
        }
    }
    SampleSum { value, budget: budget(k), k_max: k }
}

fn check_h(h: f64) -> Result<()> {
    require(h.is_finite() && h > 0.0, "h", "must be positive")
}

fn eval(s: &Spectrum, t: f64) -> Complex64 {
    s.atoms().iter().map(|a| a.time(t)).sum()
}

fn sup_norm(s: &Spectrum) -> f64 {
    s.atoms().iter().map(|a| a.time_envelope(a.tau())).sum()
}

/// `sum_{|k| <= K} f(hk) sinc(t/h - k)`; `K = None` picks the smallest
/// doubling with a budget below [`SAMPLE_REL_TOL`] of the sum.
pub fn wks_series(s: &Spectrum, h: f64, t: f64, k: Option<usize>) -> Result<SampleSum> {
    check_h(h)?;
    if !s.is_tail_free() {
        return Err(Error::UnsupportedTimeEval);
    }
    let ef = Envelope::samples(s, h);
    let es = Envelope::sinc(t, h);
    let reach = ef.reach().max(es.reach());
    let floor = 1e-15 * sup_norm(s);
    Ok(sample_sum(|i| eval(s, h * i as f64) * sinc(t / h - i as f64), |kk| product_tail(&ef, &es, kk), reach, k, floor))
}

/// The sampling series against `f(t)`, with the bound
/// `sqrt(2/pi) dist_1(f, B_{pi/h})`.
pub fn wks_report(s: &Spectrum, h: f64, t: f64, k: Option<usize>) -> Result<RemainderReport> {
    let series = wks_series(s, h, t, k)?;
    let exact = s.time_eval(t)?;
    let bound = (2.0 / PI).sqrt() * dist(s, 1.0, PI / h)?;
    Ok(RemainderReport::new(series.value, exact, Some(bound), series.budget))
}

/// Band indices `k != 0` whose band `[(2k-1) pi/h, (2k+1) pi/h]` meets an
/// atom support.
fn bands(s: &Spectrum, h: f64) -> Vec<i64> {
    let w = 2.0 * PI / h;
    let mut out = Vec::new();
    for a in s.atoms() {
        let (lo, hi) = a.support();
        let k0 = (lo / w - 0.5).floor() as i64;
        let k1 = (hi / w + 0.5).ceil() as i64;
        out.extend((k0..=k1).filter(|&k| k != 0));
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// The sampling remainder from the band expansion
/// `(1/sqrt(2 pi)) sum_k (1 - e^{-i 2 pi k t / h}) int_{band k} f^(v) e^{ivt} dv`,
/// over `|k| <= k_freq` (all bands meeting the support when `None`).
pub fn wks_remainder_spectral(s: &Spectrum, h: f64, t: f64, k_freq: Option<usize>) -> Result<Estimate<Complex64>> {
    check_h(h)?;
    if !s.is_tail_free() {
        return Err(Error::UnsupportedTimeEval);
    }
    let mut value = Complex64::new(0.0, 0.0);
    let mut error = 0.0;
    for k in bands(s, h) {
        if k_freq.is_some_and(|m| k.unsigned_abs() as usize > m) {
            continue;
        }
        let kf = k as f64;
        let factor = Complex64::new(1.0, 0.0) - Complex64::from_polar(1.0, -2.0 * PI * kf * t / h);
        if factor.norm() == 0.0 {
            continue;
        }
        let band = Region::interval((2.0 * kf - 1.0) * PI / h, (2.0 * kf + 1.0) * PI / h);
        let e = invert(s, t, &band, None)?;
        value += factor * e.value;
        error += 2.0 * e.error;
    }
    if let Some(m) = k_freq {
        let cut = (2.0 * m as f64 + 1.0) * PI / h;
        error += 2.0 * INV_SQRT_2PI * integrate_abs_q(s, 1.0, 0.0, &Region::outside(cut))?;
    }
    Ok(Estimate { value, error: error + 1e-14 * value.norm() })
}

/// `sinc(2t/h - 1)`, for which the sampling bound is attained.
pub fn wks_extremal(h: f64) -> Result<Spectrum> {
    check_h(h)?;
    Spectrum::rect(0.5 * h, 2.0 * PI / h, 0.0, 0.5 * h)
}

/// `max_t |R(t)| / (sqrt(2/pi) dist_1(f, B_{pi/h}))` over `t_grid`.
pub fn wks_ratio(s: &Spectrum, h: f64, t_grid: &[f64]) -> Result<f64> {
    let mut best: f64 = 0.0;
    let mut bound = 0.0;
    for &t in t_grid {
        let r = wks_report(s, h, t, None)?;
        bound = r.bound.unwrap_or(0.0);
        best = best.max(r.remainder.norm());
    }
    if !(bound > 0.0) {
        return Err(Error::DegenerateFit("sampling bound vanishes".into()));
    }
    Ok(best / bound)
}

/// [`wks_ratio`] for the extremal function `sinc(2t/h - 1)`.
pub fn wks_extremal_ratio(h: f64, t_grid: &[f64]) -> Result<f64> {
    wks_ratio(&wks_extremal(h)?, h, t_grid)
}

/// `(1/h) int f(u) sinc((t-u)/h) du = (1/sqrt(2 pi)) int_{|v| <= pi/h} f^(v) e^{ivt} dv`.
pub fn rkf_approx(s: &Spectrum, h: f64, t: f64) -> Result<Estimate<Complex64>> {
    check_h(h)?;
    let sigma = PI / h;
    let atoms = Spectrum::from_atoms(s.atoms().to_vec())?;
    let mut e = invert(&atoms, t, &Region::inside(sigma), None)?;
    for tail in s.tails() {
        if sigma > tail.cutoff {
            let g = |v: f64| tail.amp * v.powf(-tail.gamma) * (v * t).cos();
            let len = if t != 0.0 { PI / t.abs() } else { f64::INFINITY };
            let part = adaptive_split(g, tail.cutoff, sigma, len, Tolerance::rel(1e-12))?;
            e.value += 2.0 * INV_SQRT_2PI * part.value;
            e.error += 2.0 * INV_SQRT_2PI * part.error;
        }
    }
    Ok(e)
}

/// The reproducing kernel formula against `f(t)`, with the bound
/// `(1/sqrt(2 pi)) dist_1(f, B_{pi/h})`.
pub fn rkf_report(s: &Spectrum, h: f64, t: f64) -> Result<RemainderReport> {
    let approx = rkf_approx(s, h, t)?;
    let exact = s.time_eval(t)?;
    let bound = INV_SQRT_2PI * dist(s, 1.0, PI / h)?;
    Ok(RemainderReport::new(approx.value, exact, Some(bound), approx.error + 1e-14 * exact.norm()))
}

/// `sinc(2t/h)`, for which the reproducing kernel bound is attained at `t = 0`.
pub fn rkf_extremal(h: f64) -> Result<Spectrum> {
    check_h(h)?;
    Spectrum::rect(0.5 * h, 2.0 * PI / h, 0.0, 0.0)
}

/// `h sum_{|k| <= K} f(hk) conj(g(hk))`.
pub fn parseval_sum(sf: &Spectrum, sg: &Spectrum, h: f64, k: Option<usize>) -> Result<SampleSum> {
    check_h(h)?;
    if !(sf.is_tail_free() && sg.is_tail_free()) {
        return Err(Error::UnsupportedTimeEval);
    }
    let ef = Envelope::samples(sf, h);
    let eg = Envelope::samples(sg, h);
    let floor = 1e-15 * h * sup_norm(sf) * sup_norm(sg);
    let mut out = sample_sum(
        |i| eval(sf, h * i as f64) * eval(sg, h * i as f64).conj(),
        |kk| product_tail(&ef, &eg, kk),
        ef.reach().max(eg.reach()),
        k,
        floor / h,
    );
    out.value *= h;
    out.budget *= h;
    Ok(out)
}

/// `int f conj(g) = h sum f(hk) conj(g(hk)) + R_h(f, g)`, the integral taken
/// spectrally; no explicit bound.
pub fn parseval(sf: &Spectrum, sg: &Spectrum, h: f64, k: Option<usize>) -> Result<RemainderReport> {
    let sum = parseval_sum(sf, sg, h, k)?;
    let exact = sf.inner_product(sg)?;
    Ok(RemainderReport::new(sum.value, exact, None, sum.budget + 1e-13 * exact.norm()))
}

/// `R_h(f, g)` from Poisson summation:
/// `-sum_{m != 0} int f^(v) conj(g^(v - 2 pi m / h)) dv`, exact for
/// tail-free spectra since only finitely many shifts overlap.
pub fn parseval_aliasing(sf: &Spectrum, sg: &Spectrum, h: f64) -> Result<Complex64> {
    check_h(h)?;
    if !(sf.is_tail_free() && sg.is_tail_free()) {
        return Err(Error::UnsupportedTimeEval);
    }
    let w = 2.0 * PI / h;
    let mut acc = Complex64::new(0.0, 0.0);
    for a in sf.atoms() {
        let fa = Spectrum::from_atoms(alloc::vec![*a])?;
        let (alo, ahi) = a.support();
        for b in sg.atoms() {
            let (blo, bhi) = b.support();
            let m0 = ((alo - bhi) / w).floor() as i64;
            let m1 = ((ahi - blo) / w).ceil() as i64;
            for m in m0..=m1 {
                if m == 0 {
                    continue;
                }
                let omega = m as f64 * w;
                if !(alo < bhi + omega && blo + omega < ahi) {
                    continue;
                }
                let moved = match *b {
                    Atom::Triangle(mut x) => {
                        x.c += omega;
                        Atom::Triangle(x)
                    }
                    Atom::Rect(x) => Atom::Rect(RectAtom { c: x.c + omega, ..x }),
                };
                let gb = Spectrum::from_atoms(alloc::vec![moved])?;
                acc -= fa.inner_product(&gb)? * Complex64::from_polar(1.0, -omega * b.tau());
            }
        }
    }
    Ok(acc)
}

/// A pair `(f, g)` with `f^(m), g^(m)` in the readapted modulation space
/// whose Parseval remainder decays exactly like `h^(m + 1/2)` along
/// `h = 2 pi 2^(-k)`: `f` has triangle atoms of amplitude `2^(-n(m+1/2))`
/// on `[2^n - 1, 2^n]`, `n = 1..=n_terms`, and `g` one atom on `[-1, 0]`.
pub fn parseval_rate_pair(m: u32, n_terms: u32) -> Result<(Spectrum, Spectrum)> {
    require((1..=60).contains(&n_terms), "n_terms", "must lie in 1..=60")?;
    let b = 1.0 / (4.0 * PI);
    let e = f64::from(m) + 0.5;
    let atoms = (1..=n_terms)
        .map(|n| {
            let n = f64::from(n);
            Ok(Atom::Triangle(crate::spectrum::TriangleAtom::new((-n * e).exp2(), b, n.exp2() - 0.5, 0.0)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((Spectrum::from_atoms(atoms)?, Spectrum::triangle(1.0, b, -0.5, 0.0)?))
}

/// Terms of `||f^(s)|| <= ||f_0^(s)|| + ||f_1^(s)|| <= sigma^s ||f_0|| + dist_2(f^(s), B_sigma)
/// <= sigma^s ||f|| + dist_2(f^(s), B_sigma)` with `f_0` the part of `f`
/// with spectrum in `[-sigma, sigma]` and `f_1 = f - f_0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BernsteinReport {
    pub order: u32,
    pub sigma: f64,
    /// `||f^(s)||_2`.
    pub derivative_norm: f64,
    /// `||f_0^(s)||_2`.
    pub low_derivative_norm: f64,
    /// `||f_1^(s)||_2 = dist_2(f^(s), B_sigma)`.
    pub dist_term: f64,
    /// `||f_0||_2`.
    pub low_norm: f64,
    /// `||f||_2`.
    pub norm: f64,
    /// `sigma^s ||f||_2 + dist_2(f^(s), B_sigma)`.
    pub bound: f64,
    pub margin: f64,
    pub holds: bool,
}

fn in_sobolev(s: &Spectrum, order: u32) -> Result<()> {
    match integrate_weighted(s, 2.0, &Weight::Power(2.0 * f64::from(order)), &Region::outside(1.0)) {
        Ok(_) => Ok(()),
        Err(Error::DivergentIntegral(m)) => Err(Error::NotInSpace(alloc::format!("f^({order}) not in L^2: {m}"))),
        Err(e) => Err(e),
    }
}

/// Bernstein's inequality beyond band-limited functions.
pub fn bernstein_check(s: &Spectrum, order: u32, sigma: f64) -> Result<BernsteinReport> {
    require(order >= 1, "s", "must be at least 1")?;
    require(sigma.is_finite() && sigma > 0.0, "sigma", "must be positive")?;
    in_sobolev(s, order)?;
    let w = 2.0 * f64::from(order);
    let inside = Region::inside(sigma);
    let low_derivative_norm = integrate_abs_q(s, 2.0, w, &inside)?.max(0.0).sqrt();
    let dist_term = dist_derivative(s, 2.0, sigma, order)?;
    let derivative_norm = integrate_abs_q(s, 2.0, w, &Region::all())?.max(0.0).sqrt();
    let low_norm = integrate_abs_q(s, 2.0, 0.0, &inside)?.max(0.0).sqrt();
    let norm = s.l2_norm()?;
    let bound = sigma.powi(order as i32) * norm + dist_term;
    let margin = bound - derivative_norm;
    Ok(BernsteinReport {
        order,
        sigma,
        derivative_norm,
        low_derivative_norm,
        dist_term,
        low_norm,
        norm,
        bound,
        margin,
        holds: margin >= -1e-12 * bound,
    })
}

/// `{h sum_k |f(hk)|^2}^(1/2)` with its truncation budget.
pub fn nikolskii_sum(s: &Spectrum, h: f64, k: Option<usize>) -> Result<Estimate<f64>> {
    let sum = parseval_sum(s, s, h, k)?;
    let v = sum.value.re.max(0.0);
    let root = v.sqrt();
    let hi = (v + sum.budget).sqrt();
    Ok(Estimate { value: root, error: hi - root })
}

/// `{h sum |f(hk)|^2}^(1/2) <= (1 + h sigma) ||f||_2 + h dist_2(f', B_sigma)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NikolskiiReport {
    pub h: f64,
    pub sigma: f64,
    pub sum: f64,
    pub truncation_budget: f64,
    pub norm: f64,
    pub dist_term: f64,
    pub bound: f64,
    pub margin: f64,
    pub holds: bool,
}

pub fn nikolskii_check(s: &Spectrum, h: f64, sigma: f64) -> Result<NikolskiiReport> {
    require(sigma.is_finite() && sigma > 0.0, "sigma", "must be positive")?;
    let sum = nikolskii_sum(s, h, None)?;
    let norm = s.l2_norm()?;
    let dist_term = dist_derivative(s, 2.0, sigma, 1)?;
    let bound = (1.0 + h * sigma) * norm + h * dist_term;
    let margin = bound - sum.value;
    Ok(NikolskiiReport {
        h,
        sigma,
        sum: sum.value,
        truncation_budget: sum.error,
        norm,
        dist_term,
        bound,
        margin,
        holds: margin >= -sum.error - 1e-12 * bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rates::loglog_fit;
    use crate::spectrum::TriangleAtom;

    fn tri() -> Spectrum {
        Spectrum::triangle(1.0, 1.0, 0.0, 0.0).unwrap()
    }

    #[test]
    fn sinc_sampling_is_exact() {
        let s = Spectrum::sinc();
        for &t in &[0.0, 0.3, -2.7, 5.5] {
            let r = wks_series(&s, 1.0, t, Some(10)).unwrap();
            assert!((r.value - sinc(t)).norm() < 1e-15, "{t}");
        }
        let r = wks_series(&s, 0.5, 0.3, Some(1000)).unwrap();
        assert!((r.value.re - sinc(0.3)).abs() <= r.budget);
        assert!(r.budget < 1e-3);
        let spec = wks_remainder_spectral(&s, 0.5, 0.3, None).unwrap();
        assert!(spec.value.norm() < 1e-14);
    }

    #[test]
    fn triangle_remainder_bounds() {
        let s = tri();
        let r = wks_report(&s, 0.1, 0.0, None).unwrap();
        assert!(r.holds().unwrap(), "{r:?}");
        let r = wks_report(&s, 0.8, 0.3, None).unwrap();
        let spec = wks_remainder_spectral(&s, 0.8, 0.3, None).unwrap();
        assert!((spec.value - r.remainder).norm() < 1e-6 + r.truncation_budget, "{r:?} {spec:?}");
        assert!(r.remainder.norm() > 1e-3);
        let on_grid = wks_remainder_spectral(&s, 0.8, 1.6, None).unwrap();
        assert!(on_grid.value.norm() < 1e-12);
    }

    #[test]
    fn extremal_sampling_ratio() {
        let h = 0.5;
        let grid: Vec<f64> = (0..=1000).map(|i| f64::from(i) * 1e-3).collect();
        let r = wks_extremal_ratio(h, &grid).unwrap();
        assert!((0.99..=1.0 + 1e-12).contains(&r), "{r}");
        let t = wks_ratio(&Spectrum::triangle(1.0, 0.2, 0.0, 0.0).unwrap(), 3.0, &grid).unwrap();
        assert!(t < 1.0, "{t}");
    }

    #[test]
    fn reproducing_kernel() {
        let s = Spectrum::sinc();
        let r = rkf_report(&s, 1.0, 0.4).unwrap();
        assert!(r.remainder.norm() < 1e-13);
        let h = 0.7;
        let e = rkf_report(&rkf_extremal(h).unwrap(), h, 0.0).unwrap();
        assert!((e.remainder.norm() - e.bound.unwrap()).abs() < 1e-12, "{e:?}");
        let t = rkf_report(&tri(), 1.0, 0.2).unwrap();
        assert!(t.holds().unwrap() && t.remainder.norm() < t.bound.unwrap());
        let p = Spectrum::power_tail(1.5).unwrap();
        let a = rkf_approx(&p, 0.1, 0.0).unwrap().value.re;
        let want = 4.0 * INV_SQRT_2PI * (1.0 - (10.0 * PI).powf(-0.5));
        assert!((a - want).abs() < 1e-10, "{a} {want}");
    }

    #[test]
    fn parseval_identities() {
        let s = Spectrum::sinc();
        let r = parseval(&s, &s, 1.0, Some(8)).unwrap();
        assert!(r.remainder.norm() < 1e-14);
        let r = parseval(&s, &s, 0.5, None).unwrap();
        assert!(r.remainder.norm() <= r.truncation_budget, "{r:?}");
        let f = Spectrum::from_atoms(alloc::vec![
            Atom::Triangle(TriangleAtom::new(1.0, 0.4, 0.5, 0.2).unwrap()),
            Atom::Triangle(TriangleAtom::new(0.6, 0.3, -1.0, -0.5).unwrap()),
        ])
        .unwrap();
        let g = Spectrum::triangle(0.8, 0.5, 0.3, 0.1).unwrap();
        for &h in &[1.0, 2.0, 3.0] {
            let r = parseval(&f, &g, h, None).unwrap();
            let alias = parseval_aliasing(&f, &g, h).unwrap();
            assert!((r.remainder - alias).norm() <= r.truncation_budget + 1e-10, "{h} {r:?} {alias}");
        }
        assert!(parseval(&f, &g, 3.0, None).unwrap().remainder.norm() > 1e-3);
    }

    #[test]
    fn parseval_rate() {
        let m = 1;
        let (f, g) = parseval_rate_pair(m, 30).unwrap();
        let pts: Vec<(f64, f64)> = (3..=12)
            .map(|k| {
                let h = 2.0 * PI * (-f64::from(k)).exp2();
                (h, parseval_aliasing(&f, &g, h).unwrap().norm())
            })
            .collect();
        let fit = loglog_fit(&pts).unwrap();
        assert!((fit.slope - (f64::from(m) + 0.5)).abs() < 0.15, "{fit:?}");
        let h = 2.0 * PI / 8.0;
        let direct = parseval(&f, &g, h, None).unwrap();
        let alias = parseval_aliasing(&f, &g, h).unwrap();
        assert!((direct.remainder - alias).norm() <= direct.truncation_budget + 1e-9);
    }

    #[test]
    fn bernstein() {
        let s = Spectrum::triangle(1.0, 0.5, 0.0, 0.0).unwrap();
        let r = bernstein_check(&s, 1, 2.0 * PI).unwrap();
        assert!(r.dist_term == 0.0 && r.holds);
        for i in 1..=12 {
            let sigma = 0.25 * f64::from(i);
            let r = bernstein_check(&tri(), 1, sigma).unwrap();
            assert!(r.holds);
            let split = r.low_derivative_norm.powi(2) + r.dist_term.powi(2);
            assert!((split - r.derivative_norm.powi(2)).abs() < 1e-10 * split);
            assert!(r.derivative_norm <= r.low_derivative_norm + r.dist_term + 1e-12);
            assert!(r.low_derivative_norm <= sigma * r.low_norm + 1e-12);
            assert!(r.low_norm <= r.norm + 1e-12);
        }
        assert!(matches!(bernstein_check(&Spectrum::power_tail(1.2).unwrap(), 1, 1.0), Err(Error::NotInSpace(_))));
    }

    #[test]
    fn nikolskii() {
        let s = Spectrum::sinc();
        let one = nikolskii_sum(&s, 1.0, None).unwrap();
        assert!((one.value - 1.0).abs() < 1e-14);
        let half = nikolskii_sum(&s, 0.5, None).unwrap();
        assert!((half.value - 1.0).abs() <= half.error + 1e-12, "{half:?}");
        assert!(nikolskii_check(&s, 1.0, PI).unwrap().holds);
        for i in 0..8 {
            for j in 0..8 {
                let h = 0.1 * 1.6f64.powi(i);
                let sigma = 0.5 * 1.6f64.powi(j);
                assert!(nikolskii_check(&tri(), h, sigma).unwrap().holds, "{h} {sigma}");
            }
        }
    }
}
