//! Strong Riesz derivatives of fractional order in `L^2`: the normalising
//! constant `C_{alpha,2j}`, the multiplier `eta_{2j,alpha,eps}`, the
//! spectral derivative `|v|^alpha f^`, the time-domain singular integral
//! with central differences, and the Hilbert and Riemann identities.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{require, Error, Result};
use crate::math::{binomial, sin_pow_cos_coeffs};
use crate::numerics::{
    adaptive, asymptotic_start, fixed, integrate_weighted, invert, power_exp_tail, Estimate, Region, Rule, Tolerance, Weight,
};
use crate::spectrum::Spectrum;

/// Parameters of the singular integral `R^alpha_{2j,eps}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RieszConfig {
    pub alpha: f64,
    pub j: u32,
    pub epsilon: f64,
}

impl RieszConfig {
    pub fn new(alpha: f64, j: u32, epsilon: f64) -> Result<Self> {
        check_order(alpha, j)?;
        require(epsilon.is_finite() && epsilon > 0.0, "epsilon", "must be positive")?;
        Ok(Self { alpha, j, epsilon })
    }
}

fn check_order(alpha: f64, j: u32) -> Result<()> {
    require((1..=16).contains(&j), "j", "must lie in 1..=16")?;
    require(alpha.is_finite() && alpha > 0.0 && alpha < f64::from(2 * j), "alpha", "need 0 < alpha < 2j")
}

const SERIES_TERMS: usize = 28;

/// `P(x) = int_0^x s^(-1-alpha) sin^(2j)(s) ds` and its limit
/// `K = P(inf)`, tabulated once per `(alpha, j)`.
#[derive(Clone, Debug)]
pub struct EtaKernel {
    alpha: f64,
    j: u32,
    series: Vec<f64>,
    cos: Vec<f64>,
    x0: f64,
    step: f64,
    table: Vec<f64>,
    x_far: f64,
    k: f64,
}

impl EtaKernel {
    pub fn new(alpha: f64, j: u32) -> Result<Self> {
        check_order(alpha, j)?;
        let jf = f64::from(j);
        // Coefficients of (sin s / s)^(2j) in powers of s^2.
        let base: Vec<f64> = (0..SERIES_TERMS)
            .map(|m| {
                let mut f = 1.0;
                for i in 1..=(2 * m + 1) {
                    f *= i as f64;
                }
                if m % 2 == 0 {
                    1.0 / f
                } else {
                    -1.0 / f
                }
            })
            .collect();
        let mut series = alloc::vec![0.0; SERIES_TERMS];
        series[0] = 1.0;
        for _ in 0..2 * j {
            let mut next = alloc::vec![0.0; SERIES_TERMS];
            for (a, x) in series.iter().enumerate() {
                for (b, y) in base.iter().enumerate().take(SERIES_TERMS - a) {
                    next[a + b] += x * y;
                }
            }
            series = next;
        }
        let x0 = 1.0 / jf;
        let step = 0.5 / jf;
        let x_far = asymptotic_start(1.0 + alpha, 2.0).max(4.0 * x0);
        let mut kern = Self { alpha, j, series, cos: sin_pow_cos_coeffs(j), x0, step, table: Vec::new(), x_far, k: 0.0 };
        let n = ((x_far - x0) / step).ceil() as usize;
        let mut acc = kern.p_series(x0);
        kern.table.reserve(n + 1);
        kern.table.push(acc);
        for i in 0..n {
            let a = x0 + step * i as f64;
            acc += kern.piece(a, a + step);
            kern.table.push(acc);
        }
        kern.x_far = x0 + step * n as f64;
        kern.k = acc + kern.tail(kern.x_far);
        if !(kern.k.is_finite() && kern.k > 0.0) {
            return Err(Error::NonConvergence(format!("sine integral for alpha = {alpha}, j = {j}")));
        }
        Ok(kern)
    }

    fn integrand(&self, s: f64) -> f64 {
        s.powf(-1.0 - self.alpha) * s.sin().powi(2 * self.j as i32)
    }

    fn piece(&self, a: f64, b: f64) -> f64 {
        let mut f = |s: f64| self.integrand(s);
        fixed(&mut f, a, b, Rule::Gl32)
    }

    fn p_series(&self, x: f64) -> f64 {
        let e0 = f64::from(2 * self.j) - self.alpha;
        let x2 = x * x;
        let mut pw = x.powf(e0);
        let mut acc = 0.0;
        for (m, d) in self.series.iter().enumerate() {
            acc += d * pw / (e0 + 2.0 * m as f64);
            pw *= x2;
        }
        acc
    }

    /// `int_x^inf s^(-1-alpha) sin^(2j)(s) ds` for `x >= x_far`.
    fn tail(&self, x: f64) -> f64 {
        let p = 1.0 + self.alpha;
        let mut acc = self.cos[0] * x.powf(-self.alpha) / self.alpha;
        for (k, a) in self.cos.iter().enumerate().skip(1) {
            acc += a * power_exp_tail(p, 2.0 * k as f64, x).0.re;
        }
        acc
    }

    /// `P(x)`.
    pub fn partial(&self, x: f64) -> f64 {
        let x = x.abs();
        if x <= self.x0 {
            self.p_series(x)
        } else if x >= self.x_far {
            self.k - self.tail(x)
        } else {
            let i = (((x - self.x0) / self.step) as usize).min(self.table.len() - 1);
            let a = self.x0 + self.step * i as f64;
            self.table[i] + self.piece(a, x)
        }
    }

    /// `1 - P(x) / K`, computed without cancellation for large `x`.
    pub fn remainder_ratio(&self, x: f64) -> f64 {
        let x = x.abs();
        if x >= self.x_far {
            self.tail(x) / self.k
        } else {
            1.0 - self.partial(x) / self.k
        }
    }

    /// `int_0^inf s^(-1-alpha) sin^(2j)(s) ds`.
    pub fn integral(&self) -> f64 {
        self.k
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn j(&self) -> u32 {
        self.j
    }

    /// `C_{alpha,2j}`.
    pub fn constant(&self) -> f64 {
        let sign = if self.j.is_multiple_of(2) { 1.0 } else { -1.0 };
        sign * (f64::from(2 * self.j) - self.alpha).exp2() * self.k
    }

    /// `eta_{2j,alpha,eps}(v) = |v|^alpha (1 - P(eps |v| / 2) / K)`.
    pub fn eta(&self, v: f64, epsilon: f64) -> f64 {
        if v == 0.0 {
            return 0.0;
        }
        v.abs().powf(self.alpha) * self.remainder_ratio(0.5 * epsilon * v)
    }

    /// `sup_v |eta_{2j,alpha,eps}(v)| <= 2^alpha / (alpha eps^alpha K)`.
    pub fn eta_bound(&self, epsilon: f64) -> f64 {
        self.alpha.exp2() / (self.alpha * epsilon.powf(self.alpha) * self.k)
    }
}

/// `C_{alpha,2j} = (-1)^j 2^(2j-alpha) int_0^inf sin^(2j)(u) / u^(1+alpha) du`.
pub fn c_alpha(alpha: f64, j: u32) -> Result<f64> {
    Ok(EtaKernel::new(alpha, j)?.constant())
}

/// `Lambda_c(alpha) = 2 Gamma(alpha) cos(pi alpha / 2)`, continued to the
/// removable points `alpha = -1, -3, ...`.
pub fn lambda_c(alpha: f64) -> Result<f64> {
    require(alpha.is_finite(), "alpha", "must be finite")?;
    let n = (-alpha).round();
    if alpha <= 0.5 && (alpha + n).abs() < 1e-9 {
        let n = n as u32;
        if n.is_multiple_of(2) {
            return Err(Error::SingularParameter(format!("Lambda_c has a pole at alpha = {alpha}")));
        }
        let mut fact = 1.0;
        for i in 1..=n {
            fact *= f64::from(i);
        }
        let sign = if (n + (n - 1) / 2).is_multiple_of(2) { 1.0 } else { -1.0 };
        return Ok(sign * PI / fact);
    }
    if alpha > 0.0 && alpha == alpha.round() && (alpha as u64) % 2 == 1 {
        return Ok(0.0);
    }
    Ok(2.0 * libm::tgamma(alpha) * (0.5 * PI * alpha).cos())
}

/// `eta_{2j,alpha,eps}(v)`.
pub fn eta(v: f64, alpha: f64, j: u32, epsilon: f64) -> Result<f64> {
    let cfg = RieszConfig::new(alpha, j, epsilon)?;
    Ok(EtaKernel::new(cfg.alpha, cfg.j)?.eta(v, epsilon))
}

/// Fourier multiplier applied to a base spectrum.
#[derive(Clone, Debug)]
pub enum Multiplier {
    /// `|v|^alpha`.
    RieszPower(f64),
    /// `(i v)^s`.
    Derivative(u32),
    /// `-i sgn(v)`.
    Hilbert,
    /// `eta_{2j,alpha,eps}(v)`.
    Eta { kernel: EtaKernel, epsilon: f64 },
    /// `(2 i sin(h v / 2))^r / h^r`.
    CentralDifference { h: f64, r: u32 },
}

fn i_pow(s: u32) -> Complex64 {
    match s % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

impl Multiplier {
    pub fn eval(&self, v: f64) -> Complex64 {
        match self {
            Multiplier::RieszPower(a) => Complex64::new(if v == 0.0 { 0.0 } else { v.abs().powf(*a) }, 0.0),
            Multiplier::Derivative(s) => i_pow(*s) * v.powi(*s as i32),
            Multiplier::Hilbert => Complex64::new(0.0, -v.signum() * f64::from(u8::from(v != 0.0))),
            Multiplier::Eta { kernel, epsilon } => Complex64::new(kernel.eta(v, *epsilon), 0.0),
            Multiplier::CentralDifference { h, r } => i_pow(*r) * (2.0 * (0.5 * h * v).sin() / h).powi(*r as i32),
        }
    }
}

/// A spectrum `f^` together with a multiplier `m`, standing for the
/// function whose transform is `m f^`.
#[derive(Clone, Debug)]
pub struct WeightedSpectrum {
    pub base: Spectrum,
    pub multiplier: Multiplier,
}

impl WeightedSpectrum {
    pub fn new(base: Spectrum, multiplier: Multiplier) -> Self {
        Self { base, multiplier }
    }

    /// `m(v) f^(v)`.
    pub fn density(&self, v: f64) -> Complex64 {
        self.multiplier.eval(v) * self.base.density(v)
    }

    /// `||m f^||_2`.
    pub fn l2_norm(&self) -> Result<Estimate<f64>> {
        let all = Region::all();
        let sq = match &self.multiplier {
            Multiplier::RieszPower(a) => integrate_weighted(&self.base, 2.0, &Weight::Power(2.0 * a), &all)?,
            Multiplier::Derivative(s) => integrate_weighted(&self.base, 2.0, &Weight::Power(2.0 * f64::from(*s)), &all)?,
            Multiplier::Hilbert => integrate_weighted(&self.base, 2.0, &Weight::Power(0.0), &all)?,
            Multiplier::Eta { kernel, epsilon } => {
                let f = |v: f64| kernel.eta(v, *epsilon).powi(2);
                integrate_weighted(&self.base, 2.0, &Weight::Custom { f: &f, growth: 0.0, scale: 2.0 * PI / epsilon }, &all)?
            }
            Multiplier::CentralDifference { h, r } => {
                let e = integrate_weighted(&self.base, 2.0, &Weight::Difference { h: *h, r: *r, power: 0.0 }, &all)?;
                let k = h.powi(-2 * *r as i32);
                Estimate { value: e.value * k, error: e.error * k }
            }
        };
        Ok(root(sq))
    }

    /// The time-domain function `(1/sqrt(2 pi)) int m f^ e^{ivt} dv`.
    pub fn time_eval(&self, t: f64) -> Result<Estimate<Complex64>> {
        let m = |v: f64| self.multiplier.eval(v);
        invert(&self.base, t, &Region::all(), Some(&m))
    }
}

fn root(e: Estimate<f64>) -> Estimate<f64> {
    let v = e.value.max(0.0).sqrt();
    let lo = (e.value - e.error).max(0.0).sqrt();
    let hi = (e.value + e.error).max(0.0).sqrt();
    Estimate { value: v, error: (hi - v).max(v - lo) }
}

fn membership(s: &Spectrum, order: f64) -> Result<()> {
    match crate::distances::fractional_tail_budgeted(s, 0.0, order) {
        Ok(_) => Ok(()),
        Err(Error::DivergentIntegral(m) | Error::DivergentSum(m)) => {
            Err(Error::NotInSpace(format!("|v|^{order} f^ is not square integrable: {m}")))
        }
        Err(e) => Err(e),
    }
}

/// `D^alpha f` as `|v|^alpha f^`, after checking `|v|^alpha f^ in L^2`.
pub fn riesz_spectral(s: &Spectrum, alpha: f64) -> Result<WeightedSpectrum> {
    require(alpha.is_finite() && alpha > 0.0, "alpha", "must be positive")?;
    membership(s, alpha)?;
    Ok(WeightedSpectrum::new(s.clone(), Multiplier::RieszPower(alpha)))
}

/// The Hilbert transform, multiplier `-i sgn(v)`.
pub fn hilbert_spectrum(s: &Spectrum) -> WeightedSpectrum {
    WeightedSpectrum::new(s.clone(), Multiplier::Hilbert)
}

/// `R_eps f` on the spectral side, multiplier `eta_{2j,alpha,eps}`.
pub fn riesz_eta_spectrum(s: &Spectrum, cfg: RieszConfig) -> Result<WeightedSpectrum> {
    let kernel = EtaKernel::new(cfg.alpha, cfg.j)?;
    Ok(WeightedSpectrum::new(s.clone(), Multiplier::Eta { kernel, epsilon: cfg.epsilon }))
}

/// `||R_eps f - D^alpha f||_2 = ||(eta_{2j,alpha,eps} - |v|^alpha) f^||_2`
/// for each `eps`.
pub fn riesz_convergence(s: &Spectrum, alpha: f64, j: u32, epsilons: &[f64]) -> Result<Vec<f64>> {
    check_order(alpha, j)?;
    require(epsilons.iter().all(|e| e.is_finite() && *e > 0.0), "epsilon", "must be positive")?;
    membership(s, alpha)?;
    let kernel = EtaKernel::new(alpha, j)?;
    let mut out = Vec::with_capacity(epsilons.len());
    for &eps in epsilons {
        let f = |v: f64| {
            let g = v.abs().powf(alpha) * (1.0 - kernel.remainder_ratio(0.5 * eps * v));
            g * g
        };
        let w = Weight::Custom { f: &f, growth: 2.0 * alpha, scale: 2.0 * PI / eps };
        out.push(integrate_weighted(s, 2.0, &w, &Region::all())?.value.max(0.0).sqrt());
    }
    Ok(out)
}

/// `(2 sin(h v / 2) / h)^r - v^r`, with the small-argument difference
/// taken from the sine series.
fn riemann_gap(v: f64, h: f64, r: u32) -> f64 {
    let x = 0.5 * h * v;
    let d = if x.abs() < 0.1 {
        let x2 = x * x;
        let mut term = -x * x2 / 6.0;
        let mut acc = 0.0;
        let mut k = 1u32;
        while term.abs() > 1e-18 * x.abs() && k < 12 {
            acc += term;
            term *= -x2 / f64::from((2 * k + 2) * (2 * k + 3));
            k += 1;
        }
        2.0 * acc / h
    } else {
        2.0 * x.sin() / h - v
    };
    let a = d + v;
    let mut sum = 0.0;
    for i in 0..r {
        sum += a.powi((r - 1 - i) as i32) * v.powi(i as i32);
    }
    d * sum
}

/// `||Delta_h^r f / h^r - f^(r)||_2` for each `h`, with the central
/// difference of order `r`.
pub fn riemann_check(s: &Spectrum, r: u32, hs: &[f64]) -> Result<Vec<f64>> {
    require(r >= 1, "r", "must be at least 1")?;
    require(hs.iter().all(|h| h.is_finite() && *h > 0.0), "h", "must be positive")?;
    membership(s, f64::from(r))?;
    let mut out = Vec::with_capacity(hs.len());
    for &h in hs {
        let f = |v: f64| riemann_gap(v, h, r).powi(2);
        let w = Weight::Custom { f: &f, growth: 2.0 * f64::from(r), scale: PI / (h * f64::from(r)) };
        out.push(integrate_weighted(s, 2.0, &w, &Region::all())?.value.max(0.0).sqrt());
    }
    Ok(out)
}

/// Weights `(-1)^k C(2j, k)` and shifts `j - k` of the central difference
/// of order `2j`.
fn central_stencil(j: u32) -> Vec<(f64, i64)> {
    (0..=2 * j)
        .map(|k| {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            (sign * binomial(2 * j, k), i64::from(j) - i64::from(k))
        })
        .collect()
}

/// Bound on `int_U^inf |f(t + m u)| u^(-1-alpha) du` summed over the
/// non-central stencil points, valid once `U >= 2 max |t - tau|`.
fn far_bound(s: &Spectrum, stencil: &[(f64, i64)], alpha: f64, u: f64) -> f64 {
    let mut acc = 0.0;
    for &(w, m) in stencil {
        if m == 0 {
            continue;
        }
        let m = m.unsigned_abs() as f64;
        for a in s.atoms() {
            acc += w.abs()
                * match a {
                    crate::spectrum::Atom::Triangle(x) => {
                        4.0 * x.amp.abs() / (PI * PI * x.b * x.b * m * m) * u.powf(-2.0 - alpha) / (2.0 + alpha)
                    }
                    crate::spectrum::Atom::Rect(x) => 2.0 * x.amp.abs() / (PI * m) * u.powf(-1.0 - alpha) / (1.0 + alpha),
                };
        }
    }
    acc
}

/// Time-domain `R^alpha_{2j,eps} f(t)` for each `t`:
/// `(1/C) int_eps^inf Delta_u^(2j) f(t) u^(-1-alpha) du` with the central
/// difference `Delta_u^(2j) f(t) = sum_k (-1)^k C(2j,k) f(t + (j-k) u)`.
///
/// The integral runs to `u_max` (chosen automatically when `None`); the
/// central stencil term is integrated to infinity exactly and the rest of
/// the tail enters the error.
pub fn riesz_singular(s: &Spectrum, cfg: RieszConfig, t_grid: &[f64], u_max: Option<f64>) -> Result<Vec<Estimate<Complex64>>> {
    if !s.is_tail_free() {
        return Err(Error::UnsupportedTimeEval);
    }
    let RieszConfig { alpha, j, epsilon } = cfg;
    let c = c_alpha(alpha, j)?;
    let stencil = central_stencil(j);
    let centre = binomial(2 * j, j) * if j % 2 == 0 { 1.0 } else { -1.0 };
    let sup: f64 = s.atoms().iter().map(|a| a.time_envelope(a.tau())).sum();
    let generic = |u: f64| stencil.iter().filter(|p| p.1 != 0).map(|p| p.0.abs()).sum::<f64>() * sup * u.powf(-alpha) / alpha;
    let fmax = s.max_frequency_of_atoms();
    let period = if fmax > 0.0 { PI / (fmax * f64::from(j)) } else { f64::INFINITY };
    let f = |x: f64| s.atoms().iter().map(|a| a.time(x)).sum::<Complex64>();
    let mut out = Vec::with_capacity(t_grid.len());
    for &t in t_grid {
        if s.atoms().is_empty() {
            out.push(Estimate::default());
            continue;
        }
        let reach = s.atoms().iter().map(|a| (t - a.tau()).abs()).fold(0.0, f64::max);
        let bound = |u: f64| {
            let g = generic(u);
            if u >= 2.0 * reach {
                g.min(far_bound(s, &stencil, alpha, u))
            } else {
                g
            }
        };
        let big = match u_max {
            Some(u) => u.max(epsilon),
            None => {
                let mut u = (1e3 * epsilon).max(2.0 * reach + 1.0);
                while bound(u) > 1e-9 * sup.max(1e-300) && u < 1e6 {
                    u *= 2.0;
                }
                u
            }
        };
        let mut breaks = Vec::new();
        let mut a = epsilon;
        while a < big.min(1.0) {
            breaks.push(a);
            a = (2.0 * a).min(a + period);
        }
        breaks.push(big.min(1.0).max(epsilon));
        let start = *breaks.last().unwrap();
        let n = if period.is_finite() { ((big - start) / period).ceil() as usize } else { 1 };
        for i in 1..=n {
            breaks.push(start + (big - start) * i as f64 / n as f64);
        }
        breaks.dedup();
        let g = |u: f64| {
            let mut acc = Complex64::new(0.0, 0.0);
            for &(w, m) in &stencil {
                if m != 0 {
                    acc += f(t + m as f64 * u) * w;
                }
            }
            (acc + f(t) * centre) * u.powf(-1.0 - alpha)
        };
        let tol = Tolerance { rel: 1e-11, abs: 1e-12 * sup.max(1e-300), max_intervals: (8 * breaks.len()).max(200_000) };
        let q = adaptive(g, &breaks, tol)?;
        let tail = f(t) * centre * big.powf(-alpha) / alpha;
        out.push(Estimate { value: (q.value + tail) / c, error: (q.error + bound(big)) / c.abs() });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::{Atom, TriangleAtom};

    fn sine_integral_oracle(alpha: f64, j: u32) -> f64 {
        // sum_k a_k (2k)^alpha Gamma(-alpha) cos(pi alpha / 2)
        let a = sin_pow_cos_coeffs(j);
        let s: f64 = a.iter().enumerate().skip(1).map(|(k, c)| c * (2.0 * k as f64).powf(alpha)).sum();
        0.5 * lambda_c(-alpha).unwrap() * s
    }

    #[test]
    fn constants() {
        assert!((c_alpha(1.0, 1).unwrap() + PI).abs() < 1e-12);
        assert!((lambda_c(-1.0).unwrap() + PI).abs() < 1e-15);
        assert_eq!(lambda_c(1.0).unwrap(), 0.0);
        assert!((lambda_c(-3.0).unwrap() - lambda_c(-3.0 + 1e-7).unwrap()).abs() < 1e-5);
        assert!((lambda_c(-1.0).unwrap() - lambda_c(-1.0 - 1e-7).unwrap()).abs() < 1e-5);
        assert!(matches!(lambda_c(0.0), Err(Error::SingularParameter(_))));
        assert!(matches!(lambda_c(-2.0), Err(Error::SingularParameter(_))));
        for i in 1..40 {
            let a = 0.05 * f64::from(i);
            let c = c_alpha(a, 1).unwrap();
            assert!(c < 0.0);
            if (a - 1.0).abs() > 1e-9 {
                let want = 1.0 / lambda_c(-a).unwrap();
                assert!((1.0 / c - want).abs() < 1e-8 * want.abs().max(1.0), "{a} {c}");
            }
        }
    }

    #[test]
    fn higher_order_constant() {
        for &a in &[0.5, 1.0, 1.5, 2.5, 3.0, 3.5] {
            let k = EtaKernel::new(a, 2).unwrap().integral();
            let want = sine_integral_oracle(a, 2);
            assert!((k - want).abs() < 1e-10 * want, "{a} {k} {want}");
        }
        assert!(c_alpha(1.0, 2).unwrap() > 0.0);
        assert!(RieszConfig::new(2.0, 1, 1.0).is_err());
        assert!(RieszConfig::new(1.0, 1, 0.0).is_err());
    }

    #[test]
    fn eta_matches_definition() {
        let (alpha, j) = (0.7, 1);
        let k = EtaKernel::new(alpha, j).unwrap();
        let c = k.constant();
        for &(v, eps) in &[(1.0f64, 0.5f64), (3.0, 0.01), (0.2, 4.0), (-5.0, 2.0), (40.0, 1.0)] {
            let g = |u: f64| u.powf(-1.0 - alpha) * (0.5 * v * u).sin().powi(2);
            let x = eps.max(asymptotic_start(1.0 + alpha, v));
            let head = adaptive(g, &[eps, x], Tolerance { max_intervals: 2_000_000, ..Tolerance::rel(1e-13) }).unwrap().value;
            let rest = 0.5 * x.powf(-alpha) / alpha - 0.5 * power_exp_tail(1.0 + alpha, v, x).0.re;
            let want = -4.0 / c * (head + rest);
            let got = k.eta(v, eps);
            assert!((got - want).abs() < 1e-6 * want.abs(), "{v} {eps} {got} {want}");
        }
        assert_eq!(k.eta(0.0, 1.0), 0.0);
    }

    #[test]
    fn eta_continuity_across_regimes() {
        for &(a, j) in &[(0.3, 1), (1.5, 1), (2.5, 2), (0.9, 3)] {
            let k = EtaKernel::new(a, j).unwrap();
            for &x in &[k.x0, k.x_far] {
                let lo = k.partial(x * (1.0 - 1e-12));
                let hi = k.partial(x * (1.0 + 1e-12));
                assert!((lo - hi).abs() < 1e-11 * k.integral(), "{a} {j} {x}");
            }
            let far = 1e6f64;
            let lead = k.cos[0] * far.powf(-a) / a;
            assert!((k.partial(far) - (k.integral() - lead)).abs() < 1e-7 * k.integral());
        }
    }

    #[test]
    fn eta_pointwise_lemma() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let j = rng.gen_range(1..=3u32);
            let a = rng.gen_range(0.05..(2.0 * f64::from(j) - 0.05));
            let eps = 10f64.powf(rng.gen_range(-3.0..1.0));
            let v = rng.gen_range(-50.0..50.0);
            let k = EtaKernel::new(a, j).unwrap();
            let e = k.eta(v, eps);
            let p = v.abs().powf(a);
            assert!(e >= -1e-12 * p && e <= p * (1.0 + 1e-12), "{a} {j} {eps} {v}");
            assert!(e <= k.eta_bound(eps) * (1.0 + 1e-12));
            assert!(k.eta(v, 0.5 * eps) >= e * (1.0 - 1e-12));
        }
        let k = EtaKernel::new(1.0, 1).unwrap();
        let seq: Vec<f64> = (0..=10).map(|i| k.eta(1.0, (-f64::from(i)).exp2())).collect();
        assert!(seq.windows(2).all(|w| w[1] > w[0]));
        assert!((seq[10] - 1.0).abs() < 1e-3);
    }

    #[test]
    fn spectral_derivative() {
        let s = Spectrum::sinc();
        let d2 = riesz_spectral(&s, 2.0).unwrap();
        let f2 = WeightedSpectrum::new(s.clone(), Multiplier::Derivative(2));
        for &v in &[-2.0, 0.3, 1.7] {
            assert!((d2.density(v) + f2.density(v)).norm() < 1e-14);
        }
        let n2 = d2.l2_norm().unwrap().value;
        assert!((n2 - (PI.powi(5) / (5.0 * PI)).sqrt()).abs() < 1e-12);
        assert!(riesz_spectral(&Spectrum::power_tail(1.0).unwrap(), 0.4).is_ok());
        assert!(matches!(riesz_spectral(&Spectrum::power_tail(1.0).unwrap(), 0.6), Err(Error::NotInSpace(_))));
        let t = Spectrum::triangle(1.0, 0.8, 0.4, 0.2).unwrap();
        let a = 0.7;
        let exact = riesz_spectral(&t, a).unwrap().l2_norm().unwrap().value;
        let f = |v: f64| v.abs().powf(2.0 * a);
        let w = Weight::Custom { f: &f, growth: 2.0 * a, scale: 1.0 };
        let quad = integrate_weighted(&t, 2.0, &w, &Region::all()).unwrap().value.sqrt();
        assert!((exact - quad).abs() < 1e-8 * exact);
    }

    #[test]
    fn hilbert_identities() {
        let s = Spectrum::triangle(1.0, 0.5, 0.3, 0.1).unwrap();
        let h = hilbert_spectrum(&s);
        let n = h.l2_norm().unwrap().value;
        assert!((n - s.l2_norm().unwrap()).abs() < 1e-12 * n);
        for &v in &[-1.3, -0.2, 0.4, 2.0] {
            let m = Multiplier::Hilbert.eval(v);
            assert!((m * m + 1.0).norm() < 1e-15);
            let d1 = Multiplier::RieszPower(1.0).eval(v);
            let prod = m * Multiplier::Derivative(1).eval(v);
            assert!((d1 - prod).norm() < 1e-14);
        }
    }

    #[test]
    fn convergence_of_eta() {
        let s = Spectrum::triangle(1.0, 1.0, 0.0, 0.0).unwrap();
        let eps: Vec<f64> = (0..=10).map(|k| (-f64::from(k)).exp2()).collect();
        let errs = riesz_convergence(&s, 1.0, 1, &eps).unwrap();
        assert!(errs.windows(2).all(|w| w[1] < w[0]), "{errs:?}");
        let d = riesz_spectral(&s, 1.0).unwrap().l2_norm().unwrap().value;
        assert!(errs[10] < 1e-2 * d);
        let k = EtaKernel::new(1.0, 1).unwrap();
        let sup = (0..=2000)
            .map(|i| {
                let v = 2.0 * PI * f64::from(i) / 2000.0;
                (k.eta(v, 0.25) - v).abs()
            })
            .fold(0.0, f64::max);
        let e = riesz_convergence(&s, 1.0, 1, &[0.25]).unwrap()[0];
        assert!(e <= sup * s.l2_norm().unwrap() * (1.0 + 1e-9));
    }

    #[test]
    fn riemann_differences() {
        let s = Spectrum::triangle(1.0, 1.0, 0.0, 0.0).unwrap();
        let hs: Vec<f64> = (0..10).map(|k| (-f64::from(k)).exp2()).collect();
        let e = riemann_check(&s, 2, &hs).unwrap();
        assert!(e.windows(2).all(|w| w[1] < w[0]));
        // h^2 v^4 / 12 leading term
        let v = 3.0f64;
        for &h in &[1e-2, 1e-4] {
            let ratio = (-4.0 * (0.5 * h * v).sin().powi(2) / (h * h)) / (-v * v);
            assert!((ratio - 1.0).abs() < h * h * v * v / 10.0);
            assert!((riemann_gap(v, h, 2) / (-h * h * v.powi(4) / 12.0) - 1.0).abs() < 1e-3);
        }
        assert!(matches!(riemann_check(&Spectrum::power_tail(1.5).unwrap(), 1, &[0.1]), Err(Error::NotInSpace(_))));
    }

    #[test]
    fn singular_integral_matches_multiplier() {
        let s = Spectrum::triangle(1.0, 1.0, 0.0, 0.0).unwrap();
        let cfg = RieszConfig::new(1.0, 1, 1e-3).unwrap();
        let w = riesz_eta_spectrum(&s, cfg).unwrap();
        let ts = [0.0, 0.7, -2.3];
        let got = riesz_singular(&s, cfg, &ts, None).unwrap();
        for (t, g) in ts.iter().zip(&got) {
            let want = w.time_eval(*t).unwrap().value;
            assert!((g.value - want).norm() < 1e-4 && g.error < 1e-4, "{t} {g:?} {want}");
        }
        let empty = Spectrum::from_atoms(Vec::new()).unwrap();
        assert_eq!(riesz_singular(&empty, cfg, &[0.0], None).unwrap()[0].value, Complex64::new(0.0, 0.0));
        let two = Spectrum::from_atoms(alloc::vec![
            Atom::Triangle(TriangleAtom::new(1.0, 0.5, 1.0, 0.3).unwrap()),
            Atom::Triangle(TriangleAtom::new(-0.5, 0.3, -2.0, -1.0).unwrap()),
        ])
        .unwrap();
        let cfg = RieszConfig::new(1.5, 2, 1e-2).unwrap();
        let w = riesz_eta_spectrum(&two, cfg).unwrap();
        let got = riesz_singular(&two, cfg, &[0.4], None).unwrap();
        let want = w.time_eval(0.4).unwrap().value;
        assert!((got[0].value - want).norm() < 1e-4, "{got:?} {want}");
    }
}
