//! Acceptance criteria: one PASS/FAIL line per criterion with its runtime
//! against the time limit.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use bandlim_core::counterexamples::{membership_report, Family, FamilySpec, FAMILY_NAMES};
use bandlim_core::distances::{dist, dist_budgeted, fractional_tail};
use bandlim_core::formulas::{
    bernstein_check, nikolskii_check, parseval, parseval_aliasing, parseval_rate_pair, rkf_extremal, rkf_report, wks_extremal_ratio,
    wks_report,
};
use bandlim_core::modulation::{default_h_grid, dilation_bounds_check, m21_norm, n_h, n_sup};
use bandlim_core::rates::{classify_trend, log_grid, loglog_fit, Limit, Verdict};
use bandlim_core::riesz::{
    c_alpha, lambda_c, riesz_convergence, riesz_eta_spectrum, riesz_singular, riesz_spectral, EtaKernel, RieszConfig,
};
use bandlim_core::smoothness::{difference_norm_budgeted, modulus, modulus_sweep, DEFAULT_GRID};
use bandlim_core::{Atom, Spectrum, TriangleAtom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, u64, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn atoms(list: &[(f64, f64, f64, f64)]) -> Spectrum {
    Spectrum::from_atoms(list.iter().map(|&(a, b, c, t)| Atom::Triangle(TriangleAtom::new(a, b, c, t).unwrap())).collect()).unwrap()
}

fn spec(f: Family, n: u64) -> Spectrum {
    FamilySpec::new(f, n).unwrap().build().unwrap()
}

fn builtins() -> Vec<(String, Spectrum)> {
    let mut out = vec![("sinc".to_string(), Spectrum::sinc())];
    for name in FAMILY_NAMES {
        let f = Family::from_name(name, None, None).unwrap();
        out.push((name.to_string(), FamilySpec::with_default_terms(f).unwrap().build().unwrap()));
    }
    out
}

fn atom_norms() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let b = 10f64.powf(rng.gen_range(-2.0..1.0));
        let c = rng.gen_range(-50.0..50.0);
        let s = Spectrum::triangle(1.0, b, c, 0.0).map_err(err)?;
        let l1 = s.l1_spectral_norm().map_err(err)?;
        let l2 = s.l2_norm().map_err(err)?;
        let e1 = (l1 - (2.0 * PI).sqrt()).abs() / (2.0 * PI).sqrt();
        let want2 = (2.0 / (3.0 * b)).sqrt();
        let e2 = (l2 - want2).abs() / want2;
        worst = worst.max(e1).max(e2);
    }
    ensure(worst < 1e-10, || format!("worst relative error {worst:.3e}"))?;
    Ok(format!("worst relative error {worst:.2e} over 20 atoms"))
}

fn dyadic_log_constants() -> Outcome {
    let s = spec(Family::DyadicLog, 32);
    let want = PI * PI / 3.0 * (2.0 * PI / 3.0).sqrt();
    let m = m21_norm(&s).map_err(err)?;
    ensure((m.value - want).abs() <= m.error + 1e-12 * want, || format!("m21 {:?} vs {want}", m))?;
    for k in 1..=10 {
        let h = (-f64::from(k)).exp2();
        let e = n_h(&s, h).map_err(err)?;
        let bound = (2.0 * PI / 3.0).sqrt() * (f64::from(k) / 2.0 + 1.0).exp2() / f64::from(k + 1);
        ensure(e.value - e.error >= bound, || format!("N_h at k = {k}: {e:?} < {bound}"))?;
    }
    for sigma in [4.0f64, 16.0, 256.0, 4096.0] {
        let d = dist_budgeted(&s, 2.0, sigma).map_err(err)?;
        let bound = 2.0 * (2.0 * PI).sqrt() / 3.0 * (2f64.ln() / (3.0 * sigma.ln())).powf(1.5);
        ensure(d.value - d.error >= bound, || format!("dist at {sigma}: {d:?} < {bound}"))?;
    }
    Ok(format!("m21 = {:.9} (budget {:.1e}); N_h and dist_2 bounds hold", m.value, m.error))
}

fn rate_equivalence() -> Outcome {
    let mut line = String::new();
    for alpha in [0.6, 0.75, 1.5] {
        let s = spec(Family::GammaDelta { gamma: alpha + 1.0, delta: 0.0 }, 1 << 14);
        let sig = log_grid(16.0, 4096.0, 12);
        let pts: Vec<(f64, f64)> =
            sig.iter().map(|&x| Ok((x, dist_budgeted(&s, 2.0, x)?.value))).collect::<Result<_, bandlim_core::Error>>().map_err(err)?;
        let d = loglog_fit(&pts).map_err(err)?;
        let r = if alpha < 1.0 { 1 } else { 2 };
        let deltas = log_grid(2f64.powi(-12), 0.25, 12);
        let w = modulus_sweep(&s, r, &deltas).map_err(err)?;
        let pts: Vec<(f64, f64)> = deltas.iter().copied().zip(w).collect();
        let o = loglog_fit(&pts).map_err(err)?;
        ensure((d.slope + alpha).abs() <= 0.05 && d.r_squared >= 0.99, || format!("alpha {alpha}: dist fit {d:?}"))?;
        ensure((o.slope - alpha).abs() <= 0.05 && o.r_squared >= 0.99, || format!("alpha {alpha}: omega fit {o:?}"))?;
        line += &format!("alpha {alpha}: dist {:.4}, omega_{r} {:.4}; ", d.slope, o.slope);
    }
    Ok(line.trim_end_matches("; ").to_string())
}

fn little_o_failure() -> Outcome {
    let s = spec(Family::DyadicSqrt, 40);
    let floor = (8.0f64 / 3.0).sqrt() * (1.0 - 1e-3);
    let mut pts = Vec::new();
    for k in 1..=12 {
        let d = PI * (-f64::from(k)).exp2();
        let lower = difference_norm_budgeted(&s, 1, d).map_err(err)?;
        let w = modulus(&s, 1, d, DEFAULT_GRID).map_err(err)?.max(lower.value - lower.error);
        ensure(w / d.sqrt() >= floor, || format!("k = {k}: omega / delta^(1/2) = {}", w / d.sqrt()))?;
        if k >= 5 {
            pts.push((d, w));
        }
    }
    let trend = classify_trend(&pts, -0.5, Limit::Zero).map_err(err)?;
    ensure(trend.verdict == Verdict::BigOTight, || format!("trend {trend:?}"))?;
    for n in 2..=30u64 {
        let s = spec(Family::DyadicSqrt, n);
        let v = fractional_tail(&s, 0.0, 0.5).map_err(err)?;
        let want = 8.0 * PI / 3.0 * (n as f64 - 1.0);
        ensure(v >= want, || format!("N = {n}: {v} < {want}"))?;
    }
    Ok(format!(
        "omega_1 / delta^(1/2) >= sqrt(8/3) for k <= 12, trend {} (ratio {:.3}); partial sums exceed (8 pi/3)(N - 1)",
        trend.verdict.label(),
        trend.ratio
    ))
}

fn riesz_machinery() -> Outcome {
    let c = c_alpha(1.0, 1).map_err(err)?;
    ensure((c + PI).abs() < 1e-8, || format!("C = {c}"))?;
    for a in [0.3, 0.7, 1.5] {
        let c = c_alpha(a, 1).map_err(err)?;
        let l = lambda_c(-a).map_err(err)?;
        ensure((1.0 / c - 1.0 / l).abs() < 1e-8, || format!("alpha {a}: 1/C = {}, 1/Lambda = {}", 1.0 / c, 1.0 / l))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut violations = 0;
    for _ in 0..1000 {
        let j = rng.gen_range(1..=3u32);
        let a = rng.gen_range(0.05..(2.0 * f64::from(j) - 0.05));
        let eps = 10f64.powf(rng.gen_range(-3.0..1.0));
        let v = rng.gen_range(-50.0..50.0);
        let k = EtaKernel::new(a, j).map_err(err)?;
        let e = k.eta(v, eps);
        let p = v.abs().powf(a);
        let ok =
            e >= -1e-12 * p && e <= p * (1.0 + 1e-12) && e <= k.eta_bound(eps) * (1.0 + 1e-12) && k.eta(v, 0.5 * eps) >= e * (1.0 - 1e-12);
        violations += usize::from(!ok);
    }
    ensure(violations == 0, || format!("{violations} pointwise violations"))?;
    let two = atoms(&[(1.0, 0.5, 1.0, 0.3), (-0.5, 0.3, -2.0, -1.0)]);
    let eps: Vec<f64> = (0..=10).map(|k| (-f64::from(k)).exp2()).collect();
    let errs = riesz_convergence(&two, 1.0, 1, &eps).map_err(err)?;
    let d = riesz_spectral(&two, 1.0).map_err(err)?.l2_norm().map_err(err)?.value;
    ensure(errs.windows(2).all(|w| w[1] < w[0]) && errs[10] < 1e-2 * d, || format!("errors {errs:?}"))?;
    let cfg = RieszConfig::new(1.0, 1, 1e-2).map_err(err)?;
    let w = riesz_eta_spectrum(&two, cfg).map_err(err)?;
    let ts: Vec<f64> = (0..16).map(|i| -3.0 + 0.4 * f64::from(i)).collect();
    let got = riesz_singular(&two, cfg, &ts, None).map_err(err)?;
    let mut worst: f64 = 0.0;
    for (t, g) in ts.iter().zip(&got) {
        let want = w.time_eval(*t).map_err(err)?.value;
        worst = worst.max((g.value - want).norm());
    }
    ensure(worst < 1e-4, || format!("singular integral gap {worst:.3e}"))?;
    Ok(format!("final convergence error {:.2e} of {:.3}; singular integral gap {worst:.1e}", errs[10], d))
}

fn formula_suite() -> Outcome {
    let spectra = [
        Spectrum::triangle(1.0, 1.0, 0.0, 0.0).unwrap(),
        atoms(&[(1.0, 0.4, 0.5, 0.2), (0.6, 0.3, -1.0, -0.5)]),
        Spectrum::triangle(0.7, 0.25, 2.0, 1.0).unwrap(),
        spec(Family::GammaDelta { gamma: 1.75, delta: 0.0 }, 24),
        spec(Family::DyadicSqrt, 8),
    ];
    let hs: Vec<f64> = (0..8).map(|i| 0.2 * 1.5f64.powi(i)).collect();
    let ts: Vec<f64> = (0..8).map(|i| -2.1 + 0.6 * f64::from(i)).collect();
    let mut violations = 0;
    for s in &spectra {
        for &h in &hs {
            for &t in &ts {
                violations += usize::from(!wks_report(s, h, t, None).map_err(err)?.holds().unwrap_or(false));
                violations += usize::from(!rkf_report(s, h, t).map_err(err)?.holds().unwrap_or(false));
            }
        }
    }
    ensure(violations == 0, || format!("{violations} remainder violations"))?;
    let grid: Vec<f64> = (0..=1000).map(|i| f64::from(i) * 1e-3).collect();
    let wr = wks_extremal_ratio(0.5, &grid).map_err(err)?;
    let e = rkf_report(&rkf_extremal(0.7).map_err(err)?, 0.7, 0.0).map_err(err)?;
    let rr = e.remainder.norm() / e.bound.unwrap();
    ensure(wr >= 0.99 && rr >= 0.99, || format!("extremal ratios {wr} {rr}"))?;
    let sinc = Spectrum::sinc();
    for h in [1.0, 0.75, 0.5, 0.25] {
        let r = parseval(&sinc, &sinc, h, None).map_err(err)?;
        ensure(r.remainder.norm() <= r.truncation_budget + 1e-13, || format!("Parseval at h = {h}: {r:?}"))?;
    }
    let (f, g) = parseval_rate_pair(1, 30).map_err(err)?;
    let pts: Vec<(f64, f64)> = (3..=12)
        .map(|k| {
            let h = 2.0 * PI * (-f64::from(k)).exp2();
            Ok((h, parseval_aliasing(&f, &g, h)?.norm()))
        })
        .collect::<Result<_, bandlim_core::Error>>()
        .map_err(err)?;
    let fit = loglog_fit(&pts).map_err(err)?;
    ensure((fit.slope - 1.5).abs() <= 0.15, || format!("Parseval slope {fit:?}"))?;
    let mut bad = 0;
    for s in &spectra[..4] {
        for i in 0..8 {
            for j in 0..8 {
                let sigma = 0.5 * 1.6f64.powi(j);
                let h = 0.1 * 1.6f64.powi(i);
                bad += usize::from(!bernstein_check(s, 1 + (i as u32 % 2), sigma).map_err(err)?.holds);
                bad += usize::from(!nikolskii_check(s, h, sigma).map_err(err)?.holds);
            }
        }
    }
    ensure(bad == 0, || format!("{bad} Bernstein / Nikolskii violations"))?;
    Ok(format!("extremal ratios {wr:.4} / {rr:.4}; Parseval slope {:.3}", fit.slope))
}

fn norm_structure() -> Outcome {
    let mut count = 0;
    for (name, s) in builtins() {
        let l2 = s.l2_norm().map_err(err)?;
        let m = m21_norm(&s).map_err(err)?;
        let p = n_sup(&s, &default_h_grid(&s)).map_err(err)?;
        ensure(l2 <= m.value + m.error && m.value - m.error <= 2.0 * (l2 + p.sup_lower_bound), || {
            format!("{name}: l2 {l2}, m21 {m:?}, N {}", p.sup_lower_bound)
        })?;
        if name != "sinc" {
            for lambda in [0.25, 0.5, 2.0, 4.0] {
                let d = dilation_bounds_check(&s, lambda).map_err(err)?;
                ensure(d.holds, || format!("{name}: dilation {d:?}"))?;
            }
        }
        count += 1;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let random = |rng: &mut ChaCha8Rng| {
        let c = rng.gen_range(-20.0..20.0);
        Spectrum::triangle(rng.gen_range(-2.0..2.0), rng.gen_range(0.05..1.0), c, rng.gen_range(-3.0..3.0)).unwrap()
    };
    for _ in 0..50 {
        let (f, g) = (random(&mut rng), random(&mut rng));
        let k = rng.gen_range(-3.0..3.0);
        let h = rng.gen_range(0.05..1.0);
        let sum = f.sum(&g).map_err(err)?;
        let nf = n_h(&f, h).map_err(err)?.value;
        let ng = n_h(&g, h).map_err(err)?.value;
        let ns = n_h(&sum, h).map_err(err)?.value;
        let nk = n_h(&f.scale(k).map_err(err)?, h).map_err(err)?.value;
        let mf = m21_norm(&f).map_err(err)?.value;
        let mg = m21_norm(&g).map_err(err)?.value;
        let ms = m21_norm(&sum).map_err(err)?.value;
        let mk = m21_norm(&f.scale(k).map_err(err)?).map_err(err)?.value;
        let tol = 1e-9 * (1.0 + nf + ng + mf + mg);
        ensure(ns <= nf + ng + tol && ms <= mf + mg + tol, || "triangle inequality".into())?;
        ensure((nk - k.abs() * nf).abs() <= tol * (1.0 + k.abs()) && (mk - k.abs() * mf).abs() <= tol * (1.0 + k.abs()), || {
            "homogeneity".into()
        })?;
    }
    Ok(format!("sandwich and dilation bounds on {count} builtins; seminorm axioms on 50 pairs"))
}

fn inclusion_chain() -> Outcome {
    let specs = [
        FamilySpec::with_default_terms(Family::GammaDelta { gamma: 1.5, delta: 0.5 }),
        FamilySpec::with_default_terms(Family::GammaDelta { gamma: 1.75, delta: 0.0 }),
        FamilySpec::with_default_terms(Family::GammaDelta { gamma: 1.5, delta: 1.0 }),
        FamilySpec::with_default_terms(Family::DyadicLog),
        FamilySpec::with_default_terms(Family::DyadicSqrt),
        FamilySpec::with_default_terms(Family::QuadraticLn34),
        FamilySpec::with_default_terms(Family::QuadraticPlain),
        FamilySpec::with_default_terms(Family::QuadraticLn1),
        FamilySpec::with_default_terms(Family::PowerTail { gamma: 1.25 }),
        FamilySpec::with_default_terms(Family::PowerTail { gamma: 0.8 }),
    ];
    let mut claims = 0;
    for sp in specs {
        let r = membership_report(&sp.map_err(err)?).map_err(err)?;
        for c in &r.claims {
            ensure(c.pass, || format!("{} {}: {}", r.family, c.property, c.evidence))?;
        }
        claims += r.claims.len();
    }
    let d = dist(&spec(Family::DyadicLog, 40), 2.0, 4.0).map_err(err)?;
    Ok(format!("{claims} claims over seven families reproduce their classifications (dyadic_log dist_2(4) = {d:.4})"))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("atom norms", 1, atom_norms),
        ("dyadic_log constants", 10, dyadic_log_constants),
        ("rate equivalence", 60, rate_equivalence),
        ("little-o failure", 10, little_o_failure),
        ("Riesz machinery", 120, riesz_machinery),
        ("formula remainder suite", 120, formula_suite),
        ("norm-structure suite", 30, norm_structure),
        ("inclusion-chain witnesses", 120, inclusion_chain),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let in_time = took <= Duration::from_secs(*limit);
        let (status, detail) = match (&outcome, in_time) {
            (Ok(d), true) => ("PASS", d.clone()),
            (Ok(d), false) => ("FAIL", format!("over the {limit} s limit; {d}")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("{status} criterion {}: {name} ({:.2} s / {limit} s) {detail}", i + 1, took.as_secs_f64());
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
