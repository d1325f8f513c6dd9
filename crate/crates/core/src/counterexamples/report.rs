//! Membership reports: each family is checked against the inclusions and
//! exclusions its construction is meant to witness.  Every claim carries
//! the computed value, the analytic bound it is compared with and the
//! truncation budget of the value.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::{LN_2, PI};

use super::{Family, FamilySpec};
use crate::distances::{budgeted_tail, fractional_tail, fractional_tail_budgeted};
use crate::error::{Error, Result};
use crate::modulation::{default_h_grid, m21_norm, mstar_uniformity, n_h, n_sup};
use crate::numerics::{adaptive, Tolerance};
use crate::rates::{classify_trend, log_grid, loglog_fit, Limit, Verdict, TIGHT_BAND};
use crate::smoothness::difference_norm_budgeted;
use crate::spectrum::Spectrum;

/// One checked statement about a family.
#[derive(Clone, Debug, PartialEq)]
pub struct Claim {
    /// Space or inequality the claim is about, e.g. `"M^{2,1}"`.
    pub property: String,
    /// Expected membership for space claims, `None` for inequalities.
    pub expected: Option<bool>,
    /// Computed quantity, compared with `bound`.
    pub value: f64,
    pub bound: f64,
    /// Truncation and quadrature budget of `value`.
    pub budget: f64,
    pub pass: bool,
    pub evidence: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MembershipReport {
    pub family: String,
    pub n_terms: u64,
    pub claims: Vec<Claim>,
    pub all_pass: bool,
}

fn claim(property: &str, expected: Option<bool>, value: f64, bound: f64, budget: f64, pass: bool, evidence: String) -> Claim {
    Claim { property: property.into(), expected, value, bound, budget, pass, evidence }
}

fn label(f: &Family) -> String {
    match *f {
        Family::GammaDelta { gamma, delta } => format!("f_gamma_delta(gamma={gamma}, delta={delta})"),
        Family::PowerTail { gamma } => format!("power_tail(gamma={gamma})"),
        _ => f.name().into(),
    }
}

/// Evaluates the claims for `spec`'s family at its truncation.
pub fn membership_report(spec: &FamilySpec) -> Result<MembershipReport> {
    let s = spec.build()?;
    let claims = match spec.family {
        Family::GammaDelta { gamma, delta } => gamma_delta(spec, &s, gamma, delta)?,
        Family::DyadicLog => dyadic_log(&s)?,
        Family::DyadicSqrt => dyadic_sqrt(spec, &s)?,
        Family::QuadraticLn34 => quadratic(spec, &s, 0.75)?,
        Family::QuadraticPlain => quadratic(spec, &s, 0.0)?,
        Family::QuadraticLn1 => quadratic_ln1(spec, &s)?,
        Family::PowerTail { gamma } => power_tail(&s, gamma)?,
    };
    let all_pass = claims.iter().all(|c| c.pass);
    Ok(MembershipReport { family: label(&spec.family), n_terms: spec.n_terms, claims, all_pass })
}

/// `int_a^b g` for a smooth positive `g`.
fn integral<G: Fn(f64) -> f64>(g: G, a: f64, b: f64) -> Result<f64> {
    Ok(adaptive(g, &[a, b], Tolerance::rel(1e-12))?.value)
}

/// `||f^||_1` of the full series from the kept atoms plus an
/// integral-test bound `int_N^inf law` on the omitted ones.
fn l1_claim(spec: &FamilySpec, s: &Spectrum, omitted_bound: f64) -> Result<Claim> {
    let kept = s.l1_spectral_norm()?;
    let f = spec.family;
    let series = spec.law_sum(|n| f.l1_law(n), f.first_index(), Some(spec.n_terms))?.value;
    let pass = omitted_bound.is_finite() && (kept - series).abs() <= 1e-9 * series;
    Ok(claim(
        "F^2",
        Some(true),
        kept,
        series + omitted_bound,
        omitted_bound,
        pass,
        format!("||f^||_1 = sqrt(2 pi) sum amp_n: kept {kept:.6e}, omitted <= {omitted_bound:.3e}"),
    ))
}

/// Scaled distances `sigma^e dist_2(f, B_sigma)` over `sigmas`, with budgets.
fn scaled_dist(s: &Spectrum, sigmas: &[f64], e: f64) -> Result<Vec<(f64, f64, f64)>> {
    sigmas
        .iter()
        .map(|&x| {
            let t = budgeted_tail(s, 2.0, 0.0, x)?;
            let d = t.value.max(0.0).sqrt();
            let b = (t.value + t.error).sqrt() - d;
            Ok((x, d, b * x.powf(e)))
        })
        .collect()
}

fn gamma_delta(spec: &FamilySpec, s: &Spectrum, gamma: f64, delta: f64) -> Result<Vec<Claim>> {
    let mut out = Vec::new();
    let n = spec.n_terms as f64;
    let beta = gamma - 1.0;
    let c = 4.0 * PI / 3.0;
    let upper = |x: f64| c * (x - 2.0).powf(2.0 - 2.0 * gamma) / ((2.0 * gamma - 2.0) * (x - 1.0).ln().powf(2.0 * delta));
    let lower = |x: f64| c * (x + 2.0).powf(2.0 - 2.0 * gamma) / (2.0 * gamma - 2.0);

    let mut worst: f64 = 0.0;
    let mut budget: f64 = 0.0;
    let mut pass = true;
    let mut ev = String::from("sigma: tail / upper");
    for sigma in [4.0, 16.0, 64.0, 256.0, 4096.0] {
        let t = budgeted_tail(s, 2.0, 0.0, sigma)?;
        let up = upper(sigma);
        pass &= t.value - t.error <= up;
        if delta == 0.0 {
            pass &= t.value + t.error >= lower(sigma);
        }
        worst = worst.max(t.value / up);
        budget = budget.max(t.error / up);
        ev += &format!(" | {sigma}: {:.4}", t.value / up);
    }
    if delta == 0.0 {
        ev += " (lower bound checked)";
    }
    out.push(claim("L^2 tail bounds", None, worst, 1.0, budget, pass, ev));

    // dist over sigma up to 2^60 from the kept atoms plus the term law
    let sigmas = log_grid(8.0, 60f64.exp2(), 24);
    let pts = scaled_dist(s, &sigmas, beta)?;
    let curve: Vec<(f64, f64)> = pts.iter().map(|p| (p.0, p.1)).collect();
    let fit = loglog_fit(&curve)?;
    let trend = classify_trend(&curve, beta, Limit::Infinity)?;
    let scaled_budget = pts.iter().map(|p| p.2).fold(0.0, f64::max);
    if delta == 0.0 {
        let pass = (fit.slope + beta).abs() <= 0.05 && trend.verdict == Verdict::BigOTight;
        out.push(claim(
            &format!("Lip({beta})"),
            Some(true),
            -fit.slope,
            beta,
            scaled_budget,
            pass,
            format!("dist_2 slope {:.4} over sigma in [8, 2^60], trend {} (ratio {:.3})", fit.slope, trend.verdict.label(), trend.ratio),
        ));
        // sigma^(alpha) dist grows for alpha = beta + 0.1: compare ends through the lower bound
        let alpha = beta + 0.1;
        let (a, b) = (16.0, 60f64.exp2());
        let ga = upper(a).sqrt() * a.powf(alpha);
        let gb = lower(b).sqrt() * b.powf(alpha);
        out.push(claim(
            &format!("Lip({alpha})"),
            Some(false),
            gb / ga,
            1.0,
            0.0,
            gb > ga,
            format!("sigma^alpha dist_2 rises from <= {ga:.3e} at 16 to >= {gb:.3e} at 2^60"),
        ));
    } else {
        let env_ok = pts.iter().all(|&(x, d, _)| d * d <= upper(x) * (1.0 + 1e-9));
        let pass = env_ok && trend.ratio < TIGHT_BAND && trend.verdict != Verdict::BigOTight;
        out.push(claim(
            &format!("lip({beta})"),
            Some(true),
            trend.ratio,
            TIGHT_BAND,
            scaled_budget,
            pass,
            format!(
                "sigma^{beta} dist_2 under the envelope ln^-{delta}(sigma - 1): {env_ok}; trend {} (ratio {:.3}), slope {:.4}",
                trend.verdict.label(),
                trend.ratio,
                fit.slope
            ),
        ));
    }

    // Riesz class of order beta: int |v|^(2 beta) |f^|^2 against sum 1/(n ln^(2 delta) n)
    let member = 2.0 * delta > 1.0;
    let kept = fractional_tail(s, 0.0, beta)?;
    let ln2d = |x: f64| if delta == 0.0 { 1.0 } else { x.ln().powf(2.0 * delta) };
    if member {
        let factor = (1.0 + 0.5 / n + 1.0 / (n * n)).powf(2.0 * beta);
        let tail = c * factor * n.ln().powf(1.0 - 2.0 * delta) / (2.0 * delta - 1.0);
        out.push(claim(
            &format!("W^({beta})"),
            Some(true),
            kept,
            kept + tail,
            tail,
            tail.is_finite(),
            format!("kept {kept:.6e}; omitted atoms add at most {tail:.3e} (integral test)"),
        ));
    } else {
        let partial = c * spec.law_sum(|x| 1.0 / (x * ln2d(x)), 2, Some(spec.n_terms))?.value;
        let growth = c * integral(|x| 1.0 / (x * ln2d(x)), 2.0, n + 1.0)?;
        out.push(claim(
            &format!("W^({beta})"),
            Some(false),
            kept,
            partial,
            0.0,
            kept >= partial * (1.0 - 1e-10) && partial >= growth,
            format!(
                "int |v|^(2 beta)|f^|^2 over {} atoms = {kept:.6e} >= (4 pi/3) sum 1/(n ln^(2 delta) n) = {partial:.6e} >= {growth:.6e}, unbounded in N",
                spec.n_terms
            ),
        ));
    }

    let omitted_l1 = SQRT_2PI_LOCAL * ln2d(n).sqrt().recip() * n.powf(1.0 - gamma) / (gamma - 1.0);
    out.push(l1_claim(spec, s, omitted_l1)?);

    // classical modulation norm: bands carry (4 pi/3)^(1/2) n^(1/2 - gamma) ln^-delta n
    let band = |x: f64| c.sqrt() * x.powf(0.5 - gamma) / ln2d(x).sqrt();
    let kept_m21 = m21_of_kept(s)?;
    if gamma > 1.5 || (gamma == 1.5 && delta > 1.0) {
        let tail = if gamma > 1.5 {
            c.sqrt() * n.powf(1.5 - gamma) / (ln2d(n).sqrt() * (gamma - 1.5))
        } else {
            c.sqrt() * n.ln().powf(1.0 - delta) / (delta - 1.0)
        };
        out.push(claim(
            "M^{2,1}",
            Some(true),
            kept_m21,
            kept_m21 + tail,
            tail,
            tail.is_finite(),
            format!("kept band sum {kept_m21:.6e}; omitted bands add at most {tail:.3e}"),
        ));
    } else {
        let growth = integral(band, 2.0, n + 1.0)?;
        out.push(claim(
            "M^{2,1}",
            Some(false),
            kept_m21,
            growth,
            0.0,
            kept_m21 >= growth,
            format!("band sum over {} atoms {kept_m21:.6e} >= int_2^(N+1) of the band law = {growth:.6e}, unbounded in N", spec.n_terms),
        ));
    }

    if gamma == 1.5 && delta == 1.0 {
        out.push(sample_decay(spec, s, 1.0)?);
    }
    Ok(out)
}

const SQRT_2PI_LOCAL: f64 = crate::math::SQRT_2PI;

fn m21_of_kept(s: &Spectrum) -> Result<f64> {
    let plain = Spectrum::new(s.atoms().to_vec(), s.tails().to_vec())?;
    Ok(m21_norm(&plain)?.value)
}

/// `|f(hk)| <= 2 (1 + 2/h^2) / (|k|^(1/2) ln |k|)` for `|k| > 80`.
fn sample_decay(spec: &FamilySpec, s: &Spectrum, h: f64) -> Result<Claim> {
    let f = spec.family;
    let omitted = spec.omitted(|n| f.amplitude(n))?;
    let mut worst: f64 = 0.0;
    let mut ev = format!("h = {h}, |f(hk)| / bound:");
    for k in [81.0, 100.0, 200.0, 400.0] {
        let kept = s.time_eval(h * k)?.norm();
        let bound = 2.0 * (1.0 + 2.0 / (h * h)) / (k.sqrt() * k.ln());
        let r = (kept + omitted.value + omitted.error) / bound;
        worst = worst.max(r);
        ev += &format!(" k={k}: {r:.4}");
    }
    Ok(claim("S_h^2 sample decay", Some(true), worst, 1.0, omitted.value + omitted.error, worst <= 1.0, ev))
}

fn dyadic_log(s: &Spectrum) -> Result<Vec<Claim>> {
    let mut out = Vec::new();
    let root = (2.0 * PI / 3.0).sqrt();
    let want = PI * PI / 3.0 * root;
    let m = m21_norm(s)?;
    out.push(claim(
        "M^{2,1}",
        Some(true),
        m.value,
        want,
        m.error,
        (m.value - want).abs() <= m.error + 1e-12 * want,
        format!("sum of band norms {:.9} vs (pi^2/3) sqrt(2 pi/3) = {want:.9}", m.value),
    ));

    let mut worst = f64::INFINITY;
    let mut ev = String::from("k: N_h / bound");
    let mut pass = true;
    let mut last = (0.0, 0.0);
    for k in 1..=20 {
        let h = (-f64::from(k)).exp2();
        let e = n_h(s, h)?;
        let lo = e.value - e.error;
        let bound = root * (f64::from(k) / 2.0 + 1.0).exp2() / f64::from(k + 1);
        pass &= lo >= bound;
        worst = worst.min(lo / bound);
        if k % 5 == 0 {
            ev += &format!(" | {k}: {:.4}", lo / bound);
        }
        last = (lo, bound);
    }
    ev += &format!("; N_h at h = 2^-20 is at least {:.3e}, bound {:.3e}", last.0, last.1);
    out.push(claim("Mn", Some(false), worst, 1.0, 0.0, pass, ev));

    let mut worst = f64::INFINITY;
    let mut pass = true;
    let mut ev = String::from("sigma: dist_2 / bound");
    for sigma in [4.0, 16.0, 256.0, 4096.0] {
        let t = budgeted_tail(s, 2.0, 0.0, sigma)?;
        let d = (t.value - t.error).max(0.0).sqrt();
        let bound = 2.0 * (2.0 * PI).sqrt() / 3.0 * (LN_2 / (3.0 * f64::ln(sigma))).powf(1.5);
        pass &= d >= bound;
        worst = worst.min(d / bound);
        ev += &format!(" | {sigma}: {:.4}", d / bound);
    }
    out.push(claim("dist_2 lower bound", None, worst, 1.0, 0.0, pass, ev));

    // sigma^(1/2) dist_2 grows along sigma = 2^j
    let sigmas: Vec<f64> = (2..=36).step_by(2).map(|j| f64::from(j).exp2()).collect();
    let pts = scaled_dist(s, &sigmas, 0.5)?;
    let scaled: Vec<f64> = pts.iter().map(|p| p.1 * p.0.sqrt()).collect();
    let ratio = scaled[scaled.len() - 1] / scaled[0];
    out.push(claim(
        "Lip(1/2)",
        Some(false),
        ratio,
        10.0,
        pts.iter().map(|p| p.2).fold(0.0, f64::max),
        ratio >= 10.0,
        format!("sigma^(1/2) dist_2 rises from {:.4e} at 4 to {:.4e} at 2^36", scaled[0], scaled[scaled.len() - 1]),
    ));
    Ok(out)
}

fn dyadic_sqrt(spec: &FamilySpec, s: &Spectrum) -> Result<Vec<Claim>> {
    let mut out = Vec::new();
    let bound = 4.0 / (2f64.sqrt() - 1.0) * (PI / 3.0).sqrt();
    let grid = default_h_grid(s);
    let p = n_sup(s, &grid)?;
    let top = p.values.iter().zip(&p.budgets).map(|(v, b)| v + b).fold(0.0, f64::max);
    out.push(claim(
        "Mn",
        Some(true),
        p.sup_lower_bound,
        bound,
        top - p.sup_lower_bound,
        top <= bound,
        format!("N_h over {} steps: sup >= {:.6} at h = {:.3e}, every N_h <= {top:.6}", p.h_grid.len(), p.sup_lower_bound, p.argmax),
    ));

    let n = spec.n_terms as f64;
    let kept = fractional_tail(s, 0.0, 0.5)?;
    let want = 8.0 * PI / 3.0 * (n - 1.0);
    out.push(claim(
        "W^(1/2)",
        Some(false),
        kept,
        want,
        0.0,
        kept >= want,
        format!("int_0^(2^N) |v| |f^|^2 = {kept:.6e} >= (8 pi/3)(N - 1) = {want:.6e} with N = {}", spec.n_terms),
    ));

    let mut worst = f64::INFINITY;
    let mut pass = true;
    let mut ev = String::from("k: ||Delta_h f||^2 / ((8/3) h)");
    for r in [1u32, 2] {
        for k in (1..=30).step_by(3) {
            let h = PI * (-f64::from(k)).exp2();
            let d = difference_norm_budgeted(s, r, h)?;
            let lo = (d.value - d.error).max(0.0).powi(2);
            let ratio = lo / (8.0 / 3.0 * h);
            pass &= ratio >= 1.0;
            worst = worst.min(ratio);
            if k % 9 == 1 {
                ev += &format!(" | r={r} k={k}: {ratio:.4}");
            }
        }
    }
    out.push(claim("lip(1/2)", Some(false), worst, 1.0, 0.0, pass, ev));
    Ok(out)
}

/// Families `sinc^2(t/(4 pi)) sum n^-3/2 ln^-q n e^{i(n^2 - 1/2)t}` for
/// `q = 3/4` and `q = 0`.
fn quadratic(spec: &FamilySpec, s: &Spectrum, q: f64) -> Result<Vec<Claim>> {
    let mut out = Vec::new();
    let n = spec.n_terms as f64;
    let lnq = |x: f64| if q == 0.0 { 1.0 } else { x.ln().powf(q) };
    let c = 8.0 * PI / 3.0;

    let kept = fractional_tail(s, 0.0, 0.5)?;
    if q > 0.5 {
        let partial = spec.law_sum(|x| 1.0 / (x * lnq(x) * lnq(x)), 2, Some(spec.n_terms))?.value;
        let tail = n.ln().powf(1.0 - 2.0 * q) / (2.0 * q - 1.0);
        let bound = c * (partial + tail);
        out.push(claim(
            "W^(1/2)",
            Some(true),
            kept,
            bound,
            c * tail,
            kept <= c * partial && tail.is_finite(),
            format!("int |v||f^|^2 over kept atoms {kept:.6e} <= (8 pi/3) sum 1/(n ln^(3/2) n), full series <= {bound:.6e}"),
        ));
    } else {
        let partial = c * spec.law_sum(|x| (x * x - 1.0) / (x * x * x), 2, Some(spec.n_terms))?.value;
        out.push(claim(
            "W^(1/2)",
            Some(false),
            kept,
            partial,
            0.0,
            kept >= partial * (1.0 - 1e-10),
            format!("int |v||f^|^2 over {} atoms {kept:.6e} >= (8 pi/3) sum (n^2 - 1)/n^3 = {partial:.6e}, unbounded in N", spec.n_terms),
        ));
    }

    let omitted_l1 = SQRT_2PI_LOCAL * 2.0 * n.powf(-0.5) / lnq(n);
    out.push(l1_claim(spec, s, omitted_l1)?);

    // N_h at h = k^-2 against the lower bound of the band count argument
    let pref = 2.0 * PI.sqrt() / 3.0;
    let k_max = (6.0 * n).sqrt().floor() as u32;
    let ks: Vec<u32> = [13u32, 16, 20, 25, 30, 35, 40, 50, 60].iter().copied().filter(|&k| k <= k_max).collect();
    let mut pass = ks.len() >= 3;
    let mut worst = f64::INFINITY;
    let mut values = Vec::new();
    for &k in &ks {
        let kf = f64::from(k);
        let e = n_h(s, 1.0 / (kf * kf))?;
        let lo = e.value - e.error;
        let nk = (kf * kf / 36.0 - 1.0).floor();
        let bound = if q == 0.0 {
            pref * (2..=(nk as u64 + 1)).map(|m| 1.0 / m as f64).sum::<f64>()
        } else {
            pref * (2.0 * kf).ln().powf(0.25) * ((kf.powi(3) / 36.0).ln().ln() - (2.0 * kf).ln().ln())
        };
        pass &= lo >= bound;
        worst = worst.min(lo / bound);
        values.push((k, lo, bound));
    }
    let rising = values.windows(2).all(|w| w[1].2 > w[0].2);
    let mut ev = String::from("k: N_h lower / bound");
    for (k, lo, b) in &values {
        ev += &format!(" | {k}: {lo:.4} / {b:.4}");
    }
    out.push(claim("Mn", Some(false), worst, 1.0, 0.0, pass && rising, ev + "; the bound is unbounded in k"));

    if q == 0.0 {
        // sigma dist_2^2 stays between two constants
        let sigmas = log_grid(64.0, 2f64.powi(30), 16);
        let pts = scaled_dist(s, &sigmas, 0.5)?;
        let curve: Vec<(f64, f64)> = pts.iter().map(|p| (p.0, p.1)).collect();
        let trend = classify_trend(&curve, 0.5, Limit::Infinity)?;
        let fit = loglog_fit(&curve)?;
        let max_scaled = trend.scaled.iter().map(|p| p.1).fold(0.0, f64::max);
        let cap = (c / 2.0 * 4.0).sqrt();
        out.push(claim(
            "Lip(1/2)",
            Some(true),
            max_scaled,
            cap,
            pts.iter().map(|p| p.2).fold(0.0, f64::max),
            trend.verdict == Verdict::BigOTight && max_scaled <= cap,
            format!(
                "sigma^(1/2) dist_2 at most {max_scaled:.4} over [64, 2^30], trend {} (ratio {:.3}), slope {:.4}",
                trend.verdict.label(),
                trend.ratio,
                fit.slope
            ),
        ));
    }
    Ok(out)
}

/// `n_h` of the band-count argument: smallest `n >= 2` with `n h > 1/16`.
fn n_h_index(h: f64) -> f64 {
    ((1.0 / (16.0 * h)).floor() + 1.0).max(2.0)
}

fn quadratic_ln1(spec: &FamilySpec, s: &Spectrum) -> Result<Vec<Claim>> {
    let mut out = Vec::new();
    let m = m21_norm(s)?;
    out.push(claim(
        "M^{2,1}",
        Some(true),
        m.value,
        m.value + m.error,
        m.error,
        m.value.is_finite(),
        format!("sum of band norms {:.6} with budget {:.2e}", m.value, m.error),
    ));

    let grid = default_h_grid(s);
    let p = n_sup(s, &grid)?;
    let mut pass = true;
    let mut worst: f64 = 0.0;
    for ((&h, v), b) in p.h_grid.iter().zip(&p.values).zip(&p.budgets) {
        let nh = n_h_index(h);
        let bound = 4.0 * PI.sqrt() * nh.ln() / (2.0 / h).ln() + 32.0 * (PI / 3.0).sqrt() / nh.ln();
        pass &= v + b <= bound;
        worst = worst.max((v + b) / bound);
    }
    out.push(claim(
        "Mn",
        Some(true),
        p.sup_lower_bound,
        worst,
        p.budgets.iter().copied().fold(0.0, f64::max),
        pass,
        format!(
            "N_h over {} steps at most {:.4} of the h-wise bound 4 sqrt(pi) ln n_h / ln(2/h) + 32 sqrt(pi/3) / ln n_h; sup >= {:.4}",
            p.h_grid.len(),
            worst,
            p.sup_lower_bound
        ),
    ));

    let n0_list = [2u64, 4, 8, 16];
    let n = spec.n_terms as f64;
    let h_min = 1.0 / (2.0 * n).sqrt().max(2.0);
    let h_grid: Vec<f64> = (0..=60).map(|i| h_min.powf(f64::from(i) / 60.0)).filter(|h| *h <= 1.0).collect();
    let r = mstar_uniformity(s, &h_grid, &n0_list)?;
    let floor = (PI / 3.0).sqrt();
    let min_sup = r.sups.iter().copied().fold(f64::INFINITY, f64::min);
    let mut ev = String::from("n0: sup_h tail");
    for (n0, v) in r.n0_list.iter().zip(&r.sups) {
        ev += &format!(" | {n0}: {v:.4}");
    }
    out.push(claim(
        "M*",
        Some(false),
        min_sup,
        floor,
        0.0,
        min_sup >= floor && !r.vanishing,
        ev + &format!("; tails stay above sqrt(pi/3) = {floor:.4}, h down to {h_min:.3e}"),
    ));
    Ok(out)
}

fn power_tail(s: &Spectrum, gamma: f64) -> Result<Vec<Claim>> {
    let mut out = Vec::new();
    let edge = gamma - 0.5;

    let beta = 0.5 * edge;
    let e = fractional_tail_budgeted(s, 1.0, beta)?;
    let exact = 2.0 / (2.0 * gamma - 2.0 * beta - 1.0);
    out.push(claim(
        &format!("W^({beta})"),
        Some(true),
        e.value,
        exact,
        e.error,
        (e.value - exact).abs() <= e.error + 1e-9 * exact,
        format!("int_{{|v|>=1}} |v|^(2 beta - 2 gamma) = {:.9} vs 2/(2 gamma - 2 beta - 1) = {exact:.9}", e.value),
    ));

    let diverges = matches!(
        fractional_tail_budgeted(s, 1.0, edge),
        Err(Error::DivergentIntegral(_) | Error::DivergentSum(_) | Error::NonConvergence(_))
    );
    out.push(claim(
        &format!("W^({edge})"),
        Some(false),
        f64::INFINITY,
        f64::INFINITY,
        0.0,
        diverges,
        String::from("int |v|^(2 gamma - 1) |v|^(-2 gamma) diverges logarithmically"),
    ));

    let sigmas = log_grid(2.0, 1e12, 16);
    let curve: Vec<(f64, f64)> = sigmas.iter().map(|&x| Ok((x, budgeted_tail(s, 2.0, 0.0, x)?.value.sqrt()))).collect::<Result<_>>()?;
    let fit = loglog_fit(&curve)?;
    let trend = classify_trend(&curve, edge, Limit::Infinity)?;
    out.push(claim(
        &format!("Lip({edge})"),
        Some(true),
        -fit.slope,
        edge,
        0.0,
        (fit.slope + edge).abs() <= 1e-3 && trend.verdict == Verdict::BigOTight,
        format!(
            "dist_2 slope {:.6}, trend {} (ratio {:.4}); Lip(alpha) fails for every alpha > {edge}",
            fit.slope,
            trend.verdict.label(),
            trend.ratio
        ),
    ));

    if gamma > 1.0 {
        let p = n_sup(s, &default_h_grid(s))?;
        let top = p.values.iter().zip(&p.budgets).map(|(v, b)| v + b).fold(0.0, f64::max);
        let at_one = p.values[0] + p.budgets[0];
        out.push(claim(
            "Mn",
            Some(true),
            p.sup_lower_bound,
            top,
            top - p.sup_lower_bound,
            top.is_finite() && top <= at_one * (1.0 + 1e-9),
            format!("N_h over {} steps is largest at h = 1 ({at_one:.6}) and shrinks like h^(gamma - 1)", p.h_grid.len()),
        ));
    } else {
        let diverges = matches!(m21_norm(s), Err(Error::DivergentSum(_)));
        out.push(claim(
            "M^{2,1}",
            Some(false),
            f64::INFINITY,
            f64::INFINITY,
            0.0,
            diverges,
            format!("band norms ~ n^-{gamma} are not summable"),
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::println;

    fn show(r: &MembershipReport) {
        for c in &r.claims {
            println!("{} {} {:?} {} {} {}", r.family, c.property, c.expected, c.pass, c.value, c.evidence);
        }
    }

    #[test]
    fn every_family_reproduces_its_classification() {
        let specs = [
            FamilySpec::with_default_terms(Family::GammaDelta { gamma: 1.75, delta: 0.0 }).unwrap(),
            FamilySpec::with_default_terms(Family::GammaDelta { gamma: 1.5, delta: 0.5 }).unwrap(),
            FamilySpec::with_default_terms(Family::GammaDelta { gamma: 1.5, delta: 1.0 }).unwrap(),
            FamilySpec::with_default_terms(Family::DyadicLog).unwrap(),
            FamilySpec::with_default_terms(Family::DyadicSqrt).unwrap(),
            FamilySpec::with_default_terms(Family::QuadraticLn34).unwrap(),
            FamilySpec::with_default_terms(Family::QuadraticPlain).unwrap(),
            FamilySpec::with_default_terms(Family::QuadraticLn1).unwrap(),
            FamilySpec::with_default_terms(Family::PowerTail { gamma: 1.25 }).unwrap(),
            FamilySpec::with_default_terms(Family::PowerTail { gamma: 0.8 }).unwrap(),
        ];
        let mut ok = true;
        for spec in specs {
            let r = membership_report(&spec).unwrap();
            show(&r);
            ok &= r.all_pass;
        }
        assert!(ok);
    }
}
