//! Quadrature over spectra: weighted `L^q` integrals of the transform on
//! unions of intervals, and Fourier inversion.

mod quad;
mod tables;
mod tails;

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

pub use quad::{
    adaptive, adaptive_quadrature, adaptive_split, adaptive_to_infinity, fixed, split_points, Estimate, QuadValue, Rule, Tolerance,
};
pub use tails::{asymptotic_start, exp_moments, power_exp_tail, power_integral, sum_tail, sum_tail_bracket};

use crate::error::{invalid, Error, Result};
use crate::math::{diff_cos_coeffs, is_even_integer, INV_SQRT_2PI};
use crate::spectrum::{Layout, Piece, PowerTail, Spectrum};

/// Finite union of intervals on the frequency axis.
#[derive(Clone, Debug, PartialEq)]
pub struct Region {
    parts: Vec<(f64, f64)>,
}

impl Region {
    pub fn all() -> Self {
        Self { parts: alloc::vec![(f64::NEG_INFINITY, f64::INFINITY)] }
    }

    /// `|v| >= sigma`.
    pub fn outside(sigma: f64) -> Self {
        if sigma <= 0.0 {
            return Self::all();
        }
        Self { parts: alloc::vec![(f64::NEG_INFINITY, -sigma), (sigma, f64::INFINITY)] }
    }

    /// `|v| <= sigma`.
    pub fn inside(sigma: f64) -> Self {
        Self::interval(-sigma, sigma)
    }

    pub fn interval(a: f64, b: f64) -> Self {
        if b > a {
            Self { parts: alloc::vec![(a, b)] }
        } else {
            Self { parts: Vec::new() }
        }
    }

    /// `a <= |v| < b`.
    pub fn abs_band(a: f64, b: f64) -> Self {
        let a = a.max(0.0);
        if b <= a {
            return Self { parts: Vec::new() };
        }
        if a == 0.0 {
            return Self::interval(-b, b);
        }
        Self { parts: alloc::vec![(-b, -a), (a, b)] }
    }

    pub fn from_parts(mut parts: Vec<(f64, f64)>) -> Self {
        parts.retain(|p| p.1 > p.0);
        Self { parts }
    }

    pub fn parts(&self) -> &[(f64, f64)] {
        &self.parts
    }
}

/// Nonnegative multiplier applied to `|f^|^q`.
#[derive(Clone, Copy)]
pub enum Weight<'a> {
    /// `|v|^w`.
    Power(f64),
    /// `(2 |sin(h v / 2)|)^(2 r) |v|^power`.
    Difference { h: f64, r: u32, power: f64 },
    /// Arbitrary multiplier; `growth` bounds its power-law growth at
    /// infinity and `scale` is its oscillation length.
    Custom { f: &'a (dyn Fn(f64) -> f64 + Sync), growth: f64, scale: f64 },
}

impl Weight<'_> {
    pub fn eval(&self, v: f64) -> f64 {
        match *self {
            Weight::Power(w) => pow_abs(v, w),
            Weight::Difference { h, r, power } => (2.0 * (0.5 * h * v).sin()).abs().powi(2 * r as i32) * pow_abs(v, power),
            Weight::Custom { f, .. } => f(v),
        }
    }

    fn split_len(&self) -> f64 {
        match *self {
            Weight::Power(_) => f64::INFINITY,
            Weight::Difference { h, r, .. } => PI / (h.abs() * f64::from(r.max(1))),
            Weight::Custom { scale, .. } => scale,
        }
    }

    fn growth(&self) -> f64 {
        match *self {
            Weight::Power(w) => w,
            Weight::Difference { power, .. } => power,
            Weight::Custom { growth, .. } => growth,
        }
    }
}

fn pow_abs(v: f64, w: f64) -> f64 {
    if w == 0.0 {
        1.0
    } else if w == 2.0 {
        v * v
    } else {
        v.abs().powf(w)
    }
}

const PIECE_TOL: f64 = 1e-11;

/// `int_region |f^(v)|^q |v|^w dv`.
pub fn integrate_abs_q(s: &Spectrum, q: f64, w: f64, region: &Region) -> Result<f64> {
    integrate_weighted(s, q, &Weight::Power(w), region).map(|e| e.value)
}

/// `int_region |f^(v)|^q weight(v) dv` with an error estimate.
pub fn integrate_weighted(s: &Spectrum, q: f64, weight: &Weight<'_>, region: &Region) -> Result<Estimate<f64>> {
    if !(q.is_finite() && q >= 1.0) {
        return Err(invalid("q", "must be at least 1"));
    }
    let l = s.layout();
    let mut total = 0.0;
    let mut err = 0.0;
    let fast = matches!(weight, Weight::Power(w) if *w == 0.0) && (q == 1.0 || q == 2.0);
    for &(a, b) in region.parts() {
        if !l.pieces.is_empty() {
            let lo = a.max(l.breaks[0]);
            let hi = b.min(l.breaks[l.breaks.len() - 1]);
            if lo < hi {
                let range = l.pieces_between(lo, hi);
                if fast && range.len() > 2 {
                    let prefix = if q == 2.0 { &l.prefix_l2 } else { &l.prefix_l1 };
                    let inner = (range.start + 1)..(range.end - 1);
                    let (x, y) = (prefix[inner.end], prefix[inner.start]);
                    let d = (x.0 - y.0) + (x.1 - y.1);
                    total += d;
                    err += 4.0 * f64::EPSILON * d.abs() + 1e-30 * x.0.abs();
                    for i in [range.start, range.end - 1] {
                        let e = piece_part(s, &l.pieces[i], lo, hi, q, weight)?;
                        total += e.value;
                        err += e.error;
                    }
                } else {
                    for i in range {
                        let e = piece_part(s, &l.pieces[i], lo, hi, q, weight)?;
                        total += e.value;
                        err += e.error;
                    }
                }
            }
        }
        if !s.tails().is_empty() {
            let (first, last) = match (l.breaks.first(), l.breaks.last()) {
                (Some(&f), Some(&g)) => (f, g),
                _ => (0.0, 0.0),
            };
            let ra = a.max(last);
            if ra < b {
                let e = tail_integral(s.tails(), ra, b, 1.0, q, weight)?;
                total += e.value;
                err += e.error;
            }
            let lb = b.min(first);
            if a < lb {
                let e = tail_integral(s.tails(), -lb, -a, -1.0, q, weight)?;
                total += e.value;
                err += e.error;
            }
        }
    }
    Ok(Estimate { value: total, error: err })
}

fn piece_density(s: &Spectrum, p: &Piece, u: f64) -> Complex64 {
    let l = s.layout();
    let v = p.mid + u;
    let mut acc = Complex64::new(0.0, 0.0);
    for t in &l.terms[p.start as usize..p.end as usize] {
        acc += Complex64::from_polar(t.e + t.s * u, -v * t.tau);
    }
    if p.tails {
        for t in s.tails() {
            acc += t.density(v);
        }
    }
    acc
}

/// Integral over `piece ∩ [lo, hi]`.
fn piece_part(s: &Spectrum, p: &Piece, lo: f64, hi: f64, q: f64, weight: &Weight<'_>) -> Result<Estimate<f64>> {
    let a = lo.max(p.lo);
    let b = hi.min(p.hi);
    if !(b > a) {
        return Ok(Estimate::default());
    }
    let (u1, u2) = (a - p.mid, b - p.mid);
    if p.coherent {
        if p.e == 0.0 && p.s == 0.0 {
            return Ok(Estimate::default());
        }
        if let Some(v) = coherent_closed_form(p, u1, u2, q, weight) {
            return Ok(Estimate { value: v, error: 0.0 });
        }
        let (e, sl) = (p.e, p.s);
        let mut br = Vec::new();
        push_with_root(&mut br, u1, u2, e, sl, weight.split_len());
        let f = |u: f64| (e + sl * u).abs().powf(q) * weight.eval(p.mid + u);
        return adaptive(f, &br, Tolerance::rel(PIECE_TOL));
    }
    let mut br = Vec::new();
    split_points(u1, u2, weight.split_len(), &mut br);
    let f = |u: f64| {
        let d = piece_density(s, p, u).norm();
        if q == 2.0 {
            d * d * weight.eval(p.mid + u)
        } else {
            d.powf(q) * weight.eval(p.mid + u)
        }
    };
    adaptive(f, &br, Tolerance { max_intervals: 4 * br.len() + 100_000, ..Tolerance::rel(PIECE_TOL) })
}

fn push_with_root(br: &mut Vec<f64>, u1: f64, u2: f64, e: f64, s: f64, max_len: f64) {
    let root = if s != 0.0 { -e / s } else { f64::NAN };
    if root > u1 && root < u2 {
        split_points(u1, root, max_len, br);
        br.pop();
        split_points(root, u2, max_len, br);
    } else {
        split_points(u1, u2, max_len, br);
    }
}

/// Exact integrals of `|e + s u|^q * weight` over `[u1, u2]` when available.
fn coherent_closed_form(p: &Piece, u1: f64, u2: f64, q: f64, weight: &Weight<'_>) -> Option<f64> {
    let (e, s) = (p.e, p.s);
    let len = u2 - u1;
    let um = 0.5 * (u1 + u2);
    let pm = e + s * um;
    match *weight {
        Weight::Power(w) if w == 0.0 && q == 2.0 => Some(len * (pm * pm + s * s * len * len / 12.0)),
        Weight::Power(w) if w == 0.0 && q == 1.0 => Some(abs_linear(e, s, u1, u2)),
        Weight::Power(w) if is_even_integer(w) && w <= 28.0 && (q == 1.0 || q == 2.0) => {
            let mut f = |u: f64| {
                let d = e + s * u;
                let base = if q == 2.0 { d * d } else { d.abs() };
                base * pow_abs(p.mid + u, w)
            };
            let root = if s != 0.0 { -e / s } else { f64::NAN };
            if q == 1.0 && root > u1 && root < u2 {
                Some(fixed(&mut f, u1, root, Rule::Gl16) + fixed(&mut f, root, u2, Rule::Gl16))
            } else {
                Some(fixed(&mut f, u1, u2, Rule::Gl16))
            }
        }
        Weight::Difference { h, power, .. } if power == 0.0 && q == 2.0 && h.abs() * (p.mid.abs() + u1.abs().max(u2.abs())) < 1.0 => {
            let mut f = |u: f64| {
                let d = e + s * u;
                d * d * weight.eval(p.mid + u)
            };
            Some(fixed(&mut f, u1, u2, Rule::Gl16))
        }
        Weight::Difference { h, r, power } if power == 0.0 && q == 2.0 => {
            let coeffs = diff_cos_coeffs(r);
            let half = 0.5 * len;
            let mut acc = coeffs[0] * len * (pm * pm + s * s * len * len / 12.0);
            for (k, &ck) in coeffs.iter().enumerate().skip(1) {
                let kappa = k as f64 * h;
                let [i0, i1, i2] = exp_moments(kappa, half);
                let theta = kappa * (p.mid + um);
                let (sn, cs) = theta.sin_cos();
                let re = cs * (pm * pm * i0.re + s * s * i2.re) - sn * 2.0 * pm * s * i1.im;
                acc += ck * re;
            }
            Some(acc.max(0.0))
        }
        _ => None,
    }
}

fn abs_linear(e: f64, s: f64, u1: f64, u2: f64) -> f64 {
    let f1 = e + s * u1;
    let f2 = e + s * u2;
    if f1 * f2 >= 0.0 {
        0.5 * (u2 - u1) * (f1 + f2).abs()
    } else {
        let root = -e / s;
        0.5 * (f1.abs() * (root - u1) + f2.abs() * (u2 - root))
    }
}

/// Integral over `sign * v` in `[a, b]` (`0 < a`) where only tails are active.
fn tail_integral(tails: &[PowerTail], a: f64, b: f64, sign: f64, q: f64, weight: &Weight<'_>) -> Result<Estimate<f64>> {
    let gmin = tails.iter().map(|t| t.gamma).fold(f64::INFINITY, f64::min);
    let growth = weight.growth();
    if b.is_infinite() && q * gmin - growth <= 1.0 {
        return Err(Error::DivergentIntegral(format!("power tail |v|^-{gmin} in L^{q} with weight growth |v|^{growth}")));
    }
    let dens = |v: f64| tails.iter().map(|t| t.density(v)).sum::<f64>();
    let same_sign = tails.iter().all(|t| t.amp >= 0.0) || tails.iter().all(|t| t.amp <= 0.0);
    // Pairs (coefficient, exponent) with |f^|^q = sum coef v^-exponent.
    let pairs: Option<Vec<(f64, f64)>> = if tails.len() == 1 {
        Some(alloc::vec![(tails[0].amp.abs().powf(q), q * tails[0].gamma)])
    } else if q == 2.0 {
        let mut out = Vec::new();
        for x in tails {
            for y in tails {
                out.push((x.amp * y.amp, x.gamma + y.gamma));
            }
        }
        Some(out)
    } else if q == 1.0 && same_sign {
        Some(tails.iter().map(|t| (t.amp.abs(), t.gamma)).collect())
    } else {
        None
    };
    match (*weight, pairs) {
        (Weight::Power(w), Some(pairs)) => {
            let mut v = 0.0;
            for (c, g) in pairs {
                v += c * power_integral(w - g, a, b)?;
            }
            Ok(Estimate { value: v, error: 0.0 })
        }
        (Weight::Difference { h, r, power }, Some(pairs)) => {
            let gmax = pairs.iter().map(|p| p.1).fold(0.0, f64::max);
            let x = if b.is_infinite() { a.max(asymptotic_start(gmax - power, h)) } else { b };
            let f = |v: f64| dens(v).abs().powf(q) * weight.eval(sign * v);
            let head = adaptive_split(f, a, x, PI / (h.abs() * f64::from(r.max(1))), Tolerance::rel(PIECE_TOL))?;
            let mut value = head.value;
            let mut error = head.error;
            if b.is_infinite() {
                let coeffs = diff_cos_coeffs(r);
                for (c, g) in pairs {
                    let p = g - power;
                    value += c * coeffs[0] * power_integral(-p, x, f64::INFINITY)?;
                    for (k, &ck) in coeffs.iter().enumerate().skip(1) {
                        let (t, bound) = power_exp_tail(p, k as f64 * h.abs(), x);
                        value += c * ck * t.re;
                        error += (c * ck).abs() * bound;
                    }
                }
            }
            Ok(Estimate { value, error })
        }
        _ => {
            let f = |v: f64| dens(v).abs().powf(q) * weight.eval(sign * v);
            if b.is_infinite() {
                adaptive_to_infinity(f, a, Tolerance::rel(1e-10))
            } else {
                let mut br = Vec::new();
                geometric_points(a, b, weight.split_len(), &mut br);
                adaptive(f, &br, Tolerance { max_intervals: 4 * br.len() + 100_000, ..Tolerance::rel(1e-10) })
            }
        }
    }
}

/// Breakpoints on `[a, b]`, geometric for long ranges, capped at `max_len`.
fn geometric_points(a: f64, b: f64, max_len: f64, out: &mut Vec<f64>) {
    let mut x = a;
    out.push(a);
    while x < b {
        let step = (x.max(1e-300)).min(max_len).max((b - a) * 1e-6);
        x = (x + step).min(b);
        out.push(x);
    }
}

/// Adds `x` to the double word `(hi, lo)`.
fn two_sum_add(acc: &mut (f64, f64), x: f64) {
    let s = acc.0 + x;
    let bp = s - acc.0;
    let err = (acc.0 - (s - bp)) + (x - bp);
    let lo = acc.1 + err;
    let hi = s + lo;
    acc.1 = lo - (hi - s);
    acc.0 = hi;
}

/// Per-piece `L^2` and `L^1` masses as prefix sums.
#[allow(clippy::type_complexity)]
pub(crate) fn piece_prefix_sums(l: &Layout, tails: &[PowerTail]) -> Result<(Vec<(f64, f64)>, Vec<(f64, f64)>)> {
    let mut p2 = Vec::with_capacity(l.pieces.len() + 1);
    let mut p1 = Vec::with_capacity(l.pieces.len() + 1);
    let (mut a2, mut a1) = ((0.0, 0.0), (0.0, 0.0));
    p2.push(a2);
    p1.push(a1);
    for p in &l.pieces {
        let half = 0.5 * (p.hi - p.lo);
        let (m2, m1) = if p.coherent {
            let (u1, u2) = (p.lo - p.mid, p.hi - p.mid);
            let w = Weight::Power(0.0);
            (coherent_closed_form(p, u1, u2, 2.0, &w).unwrap_or(0.0), coherent_closed_form(p, u1, u2, 1.0, &w).unwrap_or(0.0))
        } else {
            let dens = |u: f64| {
                let v = p.mid + u;
                let mut acc = Complex64::new(0.0, 0.0);
                for t in &l.terms[p.start as usize..p.end as usize] {
                    acc += Complex64::from_polar(t.e + t.s * u, -v * t.tau);
                }
                if p.tails {
                    for t in tails {
                        acc += t.density(v);
                    }
                }
                acc.norm()
            };
            let m2 = adaptive(|u| dens(u).powi(2), &[-half, half], Tolerance::rel(PIECE_TOL))?.value;
            let m1 = adaptive(dens, &[-half, half], Tolerance::rel(PIECE_TOL))?.value;
            (m2, m1)
        };
        two_sum_add(&mut a2, m2);
        two_sum_add(&mut a1, m1);
        p2.push(a2);
        p1.push(a1);
    }
    Ok((p2, p1))
}

/// `(1/sqrt(2 pi)) int_region m(v) f^(v) e^{i v t} dv` for tail-free spectra.
pub fn invert(
    s: &Spectrum,
    t: f64,
    region: &Region,
    multiplier: Option<&(dyn Fn(f64) -> Complex64 + Sync)>,
) -> Result<Estimate<Complex64>> {
    if !s.is_tail_free() {
        return Err(Error::UnsupportedTimeEval);
    }
    let l = s.layout();
    let mut total = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    if l.pieces.is_empty() {
        return Ok(Estimate { value: total, error: 0.0 });
    }
    for &(a, b) in region.parts() {
        let lo = a.max(l.breaks[0]);
        let hi = b.min(l.breaks[l.breaks.len() - 1]);
        if !(lo < hi) {
            continue;
        }
        for i in l.pieces_between(lo, hi) {
            let p = &l.pieces[i];
            let pa = lo.max(p.lo);
            let pb = hi.min(p.hi);
            if !(pb > pa) || p.start == p.end {
                continue;
            }
            let (u1, u2) = (pa - p.mid, pb - p.mid);
            let uc = 0.5 * (u1 + u2);
            let half = 0.5 * (u2 - u1);
            match multiplier {
                None => {
                    for term in &l.terms[p.start as usize..p.end as usize] {
                        let kappa = t - term.tau;
                        let [i0, i1, _] = exp_moments(kappa, half);
                        let phase = Complex64::from_polar(1.0, kappa * (p.mid + uc) - 0.0);
                        total += phase * ((term.e + term.s * uc) * i0 + term.s * i1);
                    }
                }
                Some(m) => {
                    let kmax = l.terms[p.start as usize..p.end as usize].iter().map(|x| (t - x.tau).abs()).fold(0.0, f64::max);
                    let max_len = if kmax > 1e-8 { PI / kmax } else { f64::INFINITY };
                    let f = |u: f64| {
                        let v = p.mid + u;
                        let mut acc = Complex64::new(0.0, 0.0);
                        for term in &l.terms[p.start as usize..p.end as usize] {
                            acc += Complex64::from_polar(term.e + term.s * u, v * (t - term.tau));
                        }
                        acc * m(v)
                    };
                    let e = adaptive_split(f, u1, u2, max_len, Tolerance::rel(PIECE_TOL))?;
                    total += e.value;
                    err += e.error;
                }
            }
        }
    }
    Ok(Estimate { value: total * INV_SQRT_2PI, error: err * INV_SQRT_2PI })
}

/// `f(t)` recovered from the transform by quadrature.
pub fn oscillatory_inversion(s: &Spectrum, t: f64) -> Result<Complex64> {
    invert(s, t, &Region::all(), None).map(|e| e.value)
}
