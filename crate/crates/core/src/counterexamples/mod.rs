//! The explicit series used as witnesses for the inclusion chain between
//! smoothness, Riesz and modulation classes.  Each family is a disjoint
//! sum of triangle atoms (or a single power tail) with a closed-form term
//! law, so truncated spectra come with analytic bounds on what was omitted.

mod report;

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

pub use report::{membership_report, Claim, MembershipReport};

use crate::error::{invalid, require, Result};
use crate::math::SQRT_2PI;
use crate::numerics::{integrate_weighted, power_integral, sum_tail, Estimate, Region, Weight};
use crate::spectrum::{Atom, PowerTail, Spectrum, TriangleAtom};

/// Names accepted by [`Family::from_name`].
pub const FAMILY_NAMES: [&str; 7] =
    ["f_gamma_delta", "dyadic_log", "dyadic_sqrt", "quadratic_ln34", "quadratic_plain", "quadratic_ln1", "power_tail"];

/// Default truncation index.
pub const DEFAULT_TERMS: u64 = 256;
/// Largest truncation index for the dyadic families (atom `n` sits near `2^n`).
pub const DYADIC_MAX_TERMS: u64 = 40;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Family {
    /// `sum_{n>=2} n^-gamma ln^-delta n sinc^2(t/(2 pi n)) e^{i(n+1/2)t}`.
    GammaDelta { gamma: f64, delta: f64 },
    /// `sinc^2(t/(4 pi)) sum_{n>=1} n^-2 e^{i(2^n-1/2)t}`.
    DyadicLog,
    /// `sinc^2(t/(4 pi)) sum_{n>=1} 2^{-n/2} e^{i(2^n-1/2)t}`.
    DyadicSqrt,
    /// `sinc^2(t/(4 pi)) sum_{n>=2} n^{-3/2} ln^{-3/4} n e^{i(n^2-1/2)t}`.
    QuadraticLn34,
    /// `sinc^2(t/(4 pi)) sum_{n>=2} n^{-3/2} e^{i(n^2-1/2)t}`.
    QuadraticPlain,
    /// `sinc^2(t/(4 pi)) sum_{n>=2} n^{-3/2} ln^{-1} n e^{i(n^2-1/2)t}`.
    QuadraticLn1,
    /// Transform `|v|^-gamma` for `|v| >= 1`.
    PowerTail { gamma: f64 },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::GammaDelta { .. } => "f_gamma_delta",
            Family::DyadicLog => "dyadic_log",
            Family::DyadicSqrt => "dyadic_sqrt",
            Family::QuadraticLn34 => "quadratic_ln34",
            Family::QuadraticPlain => "quadratic_plain",
            Family::QuadraticLn1 => "quadratic_ln1",
            Family::PowerTail { .. } => "power_tail",
        }
    }

    /// Family from its name; `gamma` and `delta` feed the parametrised ones.
    pub fn from_name(name: &str, gamma: Option<f64>, delta: Option<f64>) -> Result<Self> {
        let f = match name {
            "f_gamma_delta" => Family::GammaDelta { gamma: gamma.unwrap_or(1.75), delta: delta.unwrap_or(0.0) },
            "dyadic_log" => Family::DyadicLog,
            "dyadic_sqrt" => Family::DyadicSqrt,
            "quadratic_ln34" => Family::QuadraticLn34,
            "quadratic_plain" => Family::QuadraticPlain,
            "quadratic_ln1" => Family::QuadraticLn1,
            "power_tail" => Family::PowerTail { gamma: gamma.unwrap_or(1.25) },
            _ => return Err(invalid("family", format!("unknown family `{name}`; available: {}", FAMILY_NAMES.join(", ")))),
        };
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Family::GammaDelta { gamma, delta } => {
                require(gamma.is_finite() && gamma > 1.0, "gamma", "must exceed 1")?;
                require(delta.is_finite() && delta >= 0.0, "delta", "must be nonnegative")
            }
            Family::PowerTail { gamma } => require(gamma.is_finite() && gamma > 0.5, "gamma", "must exceed 1/2"),
            _ => Ok(()),
        }
    }

    pub fn is_power_tail(&self) -> bool {
        matches!(self, Family::PowerTail { .. })
    }

    pub fn is_dyadic(&self) -> bool {
        matches!(self, Family::DyadicLog | Family::DyadicSqrt)
    }

    /// Index of the first atom.
    pub fn first_index(&self) -> u64 {
        match self {
            Family::DyadicLog | Family::DyadicSqrt => 1,
            _ => 2,
        }
    }

    /// Coefficient of atom `n`.
    pub fn amplitude(&self, n: f64) -> f64 {
        match *self {
            Family::GammaDelta { gamma, delta } => {
                let l = if delta == 0.0 { 1.0 } else { n.ln().powf(delta) };
                1.0 / (n.powf(gamma) * l)
            }
            Family::DyadicLog => 1.0 / (n * n),
            Family::DyadicSqrt => (-0.5 * n * core::f64::consts::LN_2).exp(),
            Family::QuadraticLn34 => 1.0 / (n.powf(1.5) * n.ln().powf(0.75)),
            Family::QuadraticPlain => n.powf(-1.5),
            Family::QuadraticLn1 => 1.0 / (n.powf(1.5) * n.ln()),
            Family::PowerTail { .. } => 0.0,
        }
    }

    /// Width parameter `b` of atom `n` (transform half-width `2 pi b`).
    pub fn width(&self, n: f64) -> f64 {
        match self {
            Family::GammaDelta { .. } => 1.0 / (2.0 * PI * n),
            _ => 1.0 / (4.0 * PI),
        }
    }

    /// Modulation frequency of atom `n`.
    pub fn center(&self, n: f64) -> f64 {
        match self {
            Family::GammaDelta { .. } => n + 0.5,
            Family::DyadicLog | Family::DyadicSqrt => n.exp2() - 0.5,
            _ => n * n - 0.5,
        }
    }

    /// Transform support of atom `n`.
    pub fn support(&self, n: f64) -> (f64, f64) {
        let w = 2.0 * PI * self.width(n);
        let c = self.center(n);
        (c - w, c + w)
    }

    pub fn atom(&self, n: u64) -> Option<TriangleAtom> {
        if self.is_power_tail() || n < self.first_index() {
            return None;
        }
        let x = n as f64;
        Some(TriangleAtom { amp: self.amplitude(x), b: self.width(x), c: self.center(x), tau: 0.0 })
    }

    /// `||atom_n||_2^2 = amp^2 * 2 / (3 b)`.
    pub fn l2_sq_law(&self, n: f64) -> f64 {
        let a = self.amplitude(n);
        a * a * 2.0 / (3.0 * self.width(n))
    }

    /// `||atom_n^||_1 = sqrt(2 pi) amp`.
    pub fn l1_law(&self, n: f64) -> f64 {
        SQRT_2PI * self.amplitude(n)
    }

    /// `||atom_n||_2`, which is also its unit-band norm.
    pub fn band_law(&self, n: f64) -> f64 {
        self.l2_sq_law(n).sqrt()
    }

    /// Exponents `(p, q)` with `band_law(n) ~ C n^-p ln^-q n`, or `None` for
    /// geometric decay.
    pub fn band_exponents(&self) -> Option<(f64, f64)> {
        match *self {
            Family::GammaDelta { gamma, delta } => Some((gamma - 0.5, delta)),
            Family::DyadicLog => Some((2.0, 0.0)),
            Family::DyadicSqrt => None,
            Family::QuadraticLn34 => Some((1.5, 0.75)),
            Family::QuadraticPlain => Some((1.5, 0.0)),
            Family::QuadraticLn1 => Some((1.5, 1.0)),
            Family::PowerTail { gamma } => Some((gamma, 0.0)),
        }
    }
}

/// A family together with its truncation index `n_terms`, the last atom
/// index kept.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FamilySpec {
    pub family: Family,
    pub n_terms: u64,
}

impl FamilySpec {
    pub fn new(family: Family, n_terms: u64) -> Result<Self> {
        family.validate()?;
        if !family.is_power_tail() {
            require(n_terms >= family.first_index().max(2), "n_terms", "must be at least 2")?;
            if family.is_dyadic() {
                require(n_terms <= DYADIC_MAX_TERMS, "n_terms", "dyadic families allow at most 40 terms")?;
            }
        }
        Ok(Self { family, n_terms })
    }

    /// Default truncation: 256 terms, 40 for the dyadic families.
    pub fn with_default_terms(family: Family) -> Result<Self> {
        Self::new(family, if family.is_dyadic() { DYADIC_MAX_TERMS } else { DEFAULT_TERMS })
    }

    pub fn name(&self) -> &'static str {
        self.family.name()
    }

    /// Indices of the atoms kept.
    pub fn indices(&self) -> core::ops::RangeInclusive<u64> {
        if self.family.is_power_tail() {
            #[allow(clippy::reversed_empty_ranges)]
            return 1..=0;
        }
        self.family.first_index()..=self.n_terms
    }

    /// `sum_{n = a}^{b} law(n)` with `b = None` meaning infinity.
    pub fn law_sum<G: Fn(f64) -> f64>(&self, law: G, a: u64, b: Option<u64>) -> Result<Estimate<f64>> {
        const EXPLICIT: u64 = 4096;
        let explicit = |lo: u64, hi: u64| (lo..=hi).map(|n| law(n as f64)).sum::<f64>();
        match b {
            Some(b) if b < a => Ok(Estimate::default()),
            Some(b) if b - a < EXPLICIT => Ok(Estimate { value: explicit(a, b), error: 0.0 }),
            Some(b) => {
                let (x, ex) = sum_tail(&law, a)?;
                let (y, ey) = sum_tail(&law, b + 1)?;
                Ok(Estimate { value: x - y, error: ex + ey })
            }
            None => {
                let (x, e) = sum_tail(&law, a)?;
                Ok(Estimate { value: x, error: e })
            }
        }
    }

    /// `sum_{n > N} law(n)`: the contribution of the omitted atoms to an
    /// additive quantity.
    pub fn omitted<G: Fn(f64) -> f64>(&self, law: G) -> Result<Estimate<f64>> {
        if self.family.is_power_tail() {
            return Ok(Estimate::default());
        }
        self.law_sum(law, self.n_terms + 1, None)
    }

    /// Spectrum of the truncated series.
    pub fn build(&self) -> Result<Spectrum> {
        build(self)
    }

    /// Smallest atom index whose support lies entirely in `v >= sigma`.
    pub fn first_index_beyond(&self, sigma: f64) -> u64 {
        let f = &self.family;
        let (mut lo, mut hi) = (f.first_index(), f.first_index());
        while f.support(hi as f64).0 < sigma {
            lo = hi;
            hi = hi.saturating_mul(2);
            if f.is_dyadic() && hi > 1000 {
                return u64::MAX;
            }
        }
        if f.support(lo as f64).0 >= sigma {
            return lo;
        }
        while hi - lo > 1 {
            let m = lo + (hi - lo) / 2;
            if f.support(m as f64).0 >= sigma {
                hi = m;
            } else {
                lo = m;
            }
        }
        hi
    }

    /// `int_{|v| >= sigma} |f^|^q` from the term laws, over the kept atoms
    /// when `truncated` and over the whole series otherwise.
    pub fn tail_mass(&self, q: f64, sigma: f64, truncated: bool) -> Result<Estimate<f64>> {
        if let Family::PowerTail { gamma } = self.family {
            let s = sigma.max(1.0);
            return Ok(Estimate { value: 2.0 * power_integral(-q * gamma, s, f64::INFINITY)?, error: 0.0 });
        }
        let last = if truncated { Some(self.n_terms) } else { None };
        self.weighted_tail_mass(q, 0.0, sigma, self.family.first_index(), last)
    }

    /// Contribution of the omitted atoms to `int_{|v| >= sigma} |v|^w |f^|^q`.
    pub fn omitted_tail_mass(&self, q: f64, w: f64, sigma: f64) -> Result<Estimate<f64>> {
        if self.family.is_power_tail() {
            return Ok(Estimate::default());
        }
        self.weighted_tail_mass(q, w, sigma, self.n_terms + 1, None)
    }

    /// `sum_{a <= n <= b} int_{|v| >= sigma} |v|^w |atom_n|^q`.  For `w != 0`
    /// whole atoms are bracketed between the weight at their support ends;
    /// the value is the midpoint and the error the half-width.
    fn weighted_tail_mass(&self, q: f64, w: f64, sigma: f64, a: u64, b: Option<u64>) -> Result<Estimate<f64>> {
        let f = self.family;
        let law = move |n: f64| if q == 2.0 { f.l2_sq_law(n) } else { f.amplitude(n).powf(q) * atom_lq_unit(&f, n, q) };
        let n_full = self.first_index_beyond(sigma);
        let mut out = Estimate::default();
        if n_full == u64::MAX {
            return Ok(out);
        }
        let n = n_full.saturating_sub(1);
        if n >= a && b.is_none_or(|l| n <= l) && f.support(n as f64).1 > sigma {
            let atom = Atom::Triangle(f.atom(n).expect("atom index"));
            let e = integrate_weighted(&Spectrum::from_atoms(alloc::vec![atom])?, q, &Weight::Power(w), &Region::outside(sigma))?;
            out.value += e.value;
            out.error += e.error;
        }
        let start = n_full.max(a);
        if w == 0.0 {
            let s = self.law_sum(law, start, b)?;
            out.value += s.value;
            out.error += s.error;
        } else {
            let lo = self.law_sum(|n| law(n) * f.support(n).0.powf(w), start, b)?;
            let hi = self.law_sum(|n| law(n) * f.support(n).1.powf(w), start, b)?;
            out.value += 0.5 * (lo.value + hi.value);
            out.error += 0.5 * (hi.value - lo.value) + lo.error + hi.error;
        }
        Ok(out)
    }

    /// `sum_{n in Z} ||f^||_{L^2[n, n+1]}` of the infinite series.
    pub fn m21_exact(&self) -> Result<Estimate<f64>> {
        if let Family::PowerTail { gamma } = self.family {
            if gamma <= 1.0 {
                return Err(crate::error::Error::DivergentSum(format!("power tail with gamma = {gamma}")));
            }
            let g = |n: f64| power_integral(-2.0 * gamma, n, n + 1.0).unwrap_or(0.0).sqrt();
            let s = self.law_sum(g, 1, None)?;
            return Ok(Estimate { value: 2.0 * s.value, error: 2.0 * s.error });
        }
        let f = self.family;
        self.law_sum(|n| f.band_law(n), f.first_index(), None)
    }
}

/// `int |atom_n^|^q / amp^q`.
fn atom_lq_unit(f: &Family, n: f64, q: f64) -> f64 {
    let b = f.width(n);
    let peak = 1.0 / (SQRT_2PI * b);
    2.0 * 2.0 * PI * b * peak.powf(q) / (q + 1.0)
}

/// Spectrum of the truncated series.
pub fn build(spec: &FamilySpec) -> Result<Spectrum> {
    FamilySpec::new(spec.family, spec.n_terms)?;
    let s = match spec.family {
        Family::PowerTail { gamma } => Spectrum::new(Vec::new(), alloc::vec![PowerTail::new(gamma)?])?,
        f => {
            let atoms = spec.indices().filter_map(|n| f.atom(n)).map(Atom::Triangle).collect();
            Spectrum::from_atoms(atoms)?
        }
    };
    Ok(s.with_truncation(*spec))
}

/// `||f^||_{L^2[n, n+1]}` of the truncated series, in closed form.
pub fn band_l2(spec: &FamilySpec, n: i64) -> f64 {
    let f = &spec.family;
    if let Family::PowerTail { gamma } = *f {
        let (a, b) = (n as f64, n as f64 + 1.0);
        let (lo, hi) = if b <= 0.0 { (-b, -a) } else { (a, b) };
        let lo = lo.max(1.0);
        if hi <= lo {
            return 0.0;
        }
        return power_integral(-2.0 * gamma, lo, hi).unwrap_or(0.0).sqrt();
    }
    let m = match f {
        Family::GammaDelta { .. } => (n >= 2).then_some(n as u64),
        Family::DyadicLog | Family::DyadicSqrt => {
            let k = n + 1;
            (k >= 2 && (k & (k - 1)) == 0).then(|| k.trailing_zeros() as u64)
        }
        _ => {
            let k = n + 1;
            let r = (k.max(0) as f64).sqrt().round() as i64;
            (r >= 2 && r * r == k).then_some(r as u64)
        }
    };
    match m {
        Some(m) if m <= spec.n_terms => f.band_law(m as f64),
        _ => 0.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn supports_are_disjoint_and_in_unit_bands() {
        for f in [Family::GammaDelta { gamma: 1.5, delta: 1.0 }, Family::DyadicLog, Family::QuadraticLn34] {
            let spec = FamilySpec::new(f, 30).unwrap();
            let s = spec.build().unwrap();
            assert!(s.has_disjoint_atoms());
            for n in spec.indices() {
                let (lo, hi) = f.support(n as f64);
                assert!(hi - lo <= 1.0 + 1e-12);
                assert!(lo.floor() == (hi - 1e-9).floor() || hi.fract() == 0.0, "{f:?} {n}");
            }
        }
        let (lo, hi) = Family::DyadicLog.support(5.0);
        assert_eq!((lo, hi), (31.0, 32.0));
        let (lo, hi) = Family::GammaDelta { gamma: 2.0, delta: 0.0 }.support(4.0);
        assert!((lo - 4.25).abs() < 1e-15 && (hi - 4.75).abs() < 1e-15);
    }

    #[test]
    fn band_norms_follow_the_closed_form() {
        let g = 1.8;
        let d = 0.5;
        let spec = FamilySpec::new(Family::GammaDelta { gamma: g, delta: d }, 64).unwrap();
        let want = (4.0 * PI / 3.0 / (3f64.powf(2.0 * g - 1.0) * 3f64.ln().powf(2.0 * d))).sqrt();
        assert!((band_l2(&spec, 3) - want).abs() < 1e-14);
        assert_eq!(band_l2(&spec, 1), 0.0);
        assert_eq!(band_l2(&spec, -4), 0.0);
        let s = spec.build().unwrap();
        let total: f64 = (-2..80).map(|n| band_l2(&spec, n).powi(2)).sum();
        let l2 = s.l2_norm().unwrap();
        assert!((total - l2 * l2).abs() < 1e-12 * total);
        let dy = FamilySpec::new(Family::DyadicLog, 10).unwrap();
        assert!((band_l2(&dy, 1) - 2.0 * (2.0 * PI / 3.0).sqrt()).abs() < 1e-14);
        assert!((band_l2(&dy, 7) - 2.0 * (2.0 * PI / 3.0).sqrt() / 9.0).abs() < 1e-14);
        assert_eq!(band_l2(&dy, 6), 0.0);
        assert_eq!(band_l2(&dy, 0), 0.0);
    }

    #[test]
    fn dyadic_m21_limit() {
        let spec = FamilySpec::new(Family::DyadicLog, 32).unwrap();
        let m = spec.m21_exact().unwrap();
        let want = PI * PI / 3.0 * (2.0 * PI / 3.0).sqrt();
        assert!((m.value - want).abs() < 1e-10, "{} {}", m.value, want);
    }

    #[test]
    fn tail_mass_matches_quadrature_of_truncation() {
        let spec = FamilySpec::new(Family::GammaDelta { gamma: 1.6, delta: 0.0 }, 200).unwrap();
        let s = spec.build().unwrap();
        for &sigma in &[3.3, 17.0, 50.5, 120.0] {
            let a = spec.tail_mass(2.0, sigma, true).unwrap().value;
            let b = crate::numerics::integrate_abs_q(&s, 2.0, 0.0, &Region::outside(sigma)).unwrap();
            assert!((a - b).abs() < 1e-12 * b, "{sigma}: {a} {b}");
            let a1 = spec.tail_mass(1.0, sigma, true).unwrap().value;
            let b1 = crate::numerics::integrate_abs_q(&s, 1.0, 0.0, &Region::outside(sigma)).unwrap();
            assert!((a1 - b1).abs() < 1e-12 * b1, "{sigma}: {a1} {b1}");
        }
        let full = spec.tail_mass(2.0, 50.5, false).unwrap().value;
        let omitted = spec.omitted(|n| spec.family.l2_sq_law(n)).unwrap().value;
        let kept = spec.tail_mass(2.0, 50.5, true).unwrap().value;
        assert!((full - kept - omitted).abs() < 1e-12 * full);
    }

    #[test]
    fn invalid_specs() {
        assert!(FamilySpec::new(Family::DyadicLog, 41).is_err());
        assert!(FamilySpec::new(Family::GammaDelta { gamma: 1.0, delta: 0.0 }, 10).is_err());
        assert!(FamilySpec::new(Family::PowerTail { gamma: 0.4 }, 10).is_err());
        assert!(Family::from_name("nope", None, None).is_err());
        assert_eq!(Family::from_name("quadratic_ln1", None, None).unwrap(), Family::QuadraticLn1);
    }
}
