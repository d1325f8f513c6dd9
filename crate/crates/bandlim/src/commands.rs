//! One function per subcommand, each producing a [`Table`].

use std::f64::consts::PI;

use bandlim_core::counterexamples::{membership_report, Family};
use bandlim_core::distances::{dist_budgeted, fractional_tail_budgeted};
use bandlim_core::formulas::{bernstein_check, nikolskii_check, parseval, rkf_report, wks_report, RemainderReport};
use bandlim_core::modulation::{default_h_grid, m21_norm, n_h};
use bandlim_core::numerics::Estimate;
use bandlim_core::rates::{classify_trend, log_grid, loglog_fit, Limit};
use bandlim_core::riesz::{c_alpha, riesz_convergence, riesz_spectral};
use bandlim_core::smoothness::modulus_sweep_budgeted;
use bandlim_core::{Error, Spectrum};
use rayon::prelude::*;

use crate::args::{Command, Opts, Quantity, Range};
use crate::error::CliError;
use crate::spec::{family_spec, load, Loaded};
use crate::table::{Row, Table};

type Res<T> = Result<T, CliError>;

pub fn run_command(cmd: &Command, o: &Opts) -> Res<Table> {
    match cmd {
        Command::Counterexample { name } => counterexample(name, o),
        _ => {
            let f = o.f.as_deref().ok_or_else(|| CliError::Argument("--f is required".into()))?;
            let loaded = load(f, o.gamma, o.delta, o.trunc)?;
            match cmd {
                Command::Dist => dist(&loaded, o),
                Command::Smoothness => smoothness(&loaded.spectrum, o),
                Command::Riesz => riesz(&loaded.spectrum, o),
                Command::Modulation => modulation(&loaded.spectrum, o),
                Command::Sampling => remainders(&loaded.spectrum, o, "wks_remainder", wks),
                Command::Rkf => remainders(&loaded.spectrum, o, "rkf_remainder", rkf_report),
                Command::Parseval => parseval_cmd(&loaded.spectrum, o),
                Command::Bernstein => bernstein(&loaded.spectrum, o),
                Command::Nikolskii => nikolskii(&loaded.spectrum, o),
                Command::Rates => rates(&loaded.spectrum, o),
                Command::Counterexample { .. } => unreachable!(),
            }
        }
    }
}

fn wks(s: &Spectrum, h: f64, t: f64) -> bandlim_core::Result<RemainderReport> {
    wks_report(s, h, t, None)
}

/// Order-preserving parallel map.
fn par_map<T: Sync, U: Send>(xs: &[T], f: impl Fn(&T) -> bandlim_core::Result<U> + Sync + Send) -> Res<Vec<U>> {
    Ok(xs.par_iter().map(f).collect::<bandlim_core::Result<Vec<U>>>()?)
}

fn grid(list: &[f64], range: Option<Range>, default: impl FnOnce() -> Vec<f64>, name: &str) -> Res<Vec<f64>> {
    let g = match (list.is_empty(), range) {
        (false, Some(_)) => return Err(CliError::Argument(format!("give either --{name} or --{name}-range"))),
        (false, None) => list.to_vec(),
        (true, Some(r)) => r.grid(),
        (true, None) => default(),
    };
    if let Some(x) = g.iter().find(|x| !(x.is_finite() && **x > 0.0)) {
        return Err(CliError::Argument(format!("--{name}: {x} is not positive")));
    }
    Ok(g)
}

fn sigmas(o: &Opts, default: impl FnOnce() -> Vec<f64>) -> Res<Vec<f64>> {
    grid(&o.sigma, o.sigma_range, default, "sigma")
}

fn hs(o: &Opts, default: impl FnOnce() -> Vec<f64>) -> Res<Vec<f64>> {
    grid(&o.h, o.h_range, default, "h")
}

fn deltas(o: &Opts, default: impl FnOnce() -> Vec<f64>) -> Vec<f64> {
    o.delta_range.map_or_else(default, |r| r.grid())
}

fn octaves(lo: i32, hi: i32) -> Vec<f64> {
    (lo..=hi).map(|k| 2f64.powi(k)).collect()
}

/// Lower bound on `dist(S, 2, sigma)` for the dyadic family with `n^-2` weights.
pub fn dyadic_log_dist_bound(sigma: f64) -> f64 {
    2.0 * (2.0 * PI).sqrt() / 3.0 * (2f64.ln() / (3.0 * sigma.ln())).powf(1.5)
}

fn dist(l: &Loaded, o: &Opts) -> Res<Table> {
    let sig = sigmas(o, || octaves(0, 10))?;
    let vals = par_map(&sig, |&s| dist_budgeted(&l.spectrum, o.q, s))?;
    let dyadic_log = l.family.is_some_and(|f| f.family == Family::DyadicLog) && o.q == 2.0;
    let mut t = Table::default();
    for (&s, e) in sig.iter().zip(vals) {
        let mut row = Row::new("dist", e.value, Some(e.error)).param("q", o.q).param("sigma", s);
        if dyadic_log && s > 1.0 {
            let b = dyadic_log_dist_bound(s);
            row = row.bound(b).pass(e.value + e.error >= b * (1.0 - o.tol)).note("lower bound");
        }
        t.push(row);
    }
    Ok(t)
}

/// Slope of a sweep with the change from dropping alternate points as budget.
fn fit_row(pts: &[(f64, f64)], quantity: &str) -> Res<Row> {
    if pts.iter().any(|p| !(p.1 > 0.0)) {
        return Ok(Row::new(quantity, f64::NAN, None).note("quantity vanishes on the window; no fit"));
    }
    let fit = loglog_fit(pts)?;
    let half: Vec<(f64, f64)> = pts.iter().step_by(2).copied().collect();
    let budget = loglog_fit(&half).ok().map(|h| (h.slope - fit.slope).abs());
    Ok(Row::new(quantity, fit.slope, budget)
        .param("lo", fit.window.0)
        .param("hi", fit.window.1)
        .note(format!("r2={:.6}, points={}", fit.r_squared, fit.n_points)))
}

fn smoothness(s: &Spectrum, o: &Opts) -> Res<Table> {
    let r = o.order.unwrap_or(1);
    let ds = deltas(o, || log_grid(2f64.powi(-12), 0.25, 12));
    let vals = modulus_sweep_budgeted(s, r, &ds)?;
    let mut t = Table::default();
    let mut pts = Vec::new();
    for (&d, e) in ds.iter().zip(vals) {
        t.push(Row::new("omega", e.value, Some(e.error)).param("r", r).param("delta", d));
        pts.push((d, e.value));
    }
    if pts.len() >= 4 {
        t.push(fit_row(&pts, "lipschitz_slope")?.param("r", r));
    }
    Ok(t)
}

fn riesz(s: &Spectrum, o: &Opts) -> Res<Table> {
    let alpha = o.alpha.ok_or_else(|| CliError::Argument("--alpha is required".into()))?;
    let j = o.order.unwrap_or((alpha / 2.0).floor() as u32 + 1);
    let eps = if o.epsilon_list.is_empty() { octaves(-10, 0).into_iter().rev().collect() } else { o.epsilon_list.clone() };
    let mut t = Table::default();
    t.push(Row::new("c_alpha", c_alpha(alpha, j)?, Some(0.0)).param("alpha", alpha).param("j", j));
    let norm = riesz_spectral(s, alpha)?.l2_norm()?;
    t.push(Row::new("riesz_norm", norm.value, Some(norm.error)).param("alpha", alpha));
    let errs = riesz_convergence(s, alpha, j, &eps)?;
    let mut prev = f64::INFINITY;
    for (&e, err) in eps.iter().zip(errs) {
        let row = Row::new("riesz_error", err, None).param("alpha", alpha).param("j", j).param("epsilon", e);
        t.push(if prev.is_finite() { row.bound(prev).pass(err <= prev * (1.0 + o.tol)).note("at most the previous error") } else { row });
        prev = err;
    }
    Ok(t)
}

fn modulation(s: &Spectrum, o: &Opts) -> Res<Table> {
    let h = hs(o, || default_h_grid(s))?;
    if let Some(x) = h.iter().find(|x| **x > 1.0) {
        return Err(CliError::Argument(format!("--h: {x} exceeds 1")));
    }
    let vals = par_map(&h, |&x| n_h(s, x))?;
    let mut t = Table::default();
    let mut sup: Estimate<f64> = Estimate { value: 0.0, error: 0.0 };
    let mut upper = 0f64;
    for (&x, e) in h.iter().zip(vals) {
        let lo = (e.value - e.error).max(0.0);
        if lo > sup.value {
            sup = Estimate { value: lo, error: 0.0 };
        }
        upper = upper.max(e.value + e.error);
        t.push(Row::new("n_h", e.value, Some(e.error)).param("h", x));
    }
    t.push(Row::new("n_sup", sup.value, Some(upper - sup.value)).note("lower bound over the grid; budget reaches the largest upper bound"));
    let l2 = s.l2_norm()?;
    t.push(Row::new("l2_norm", l2, Some(0.0)));
    match m21_norm(s) {
        Ok(m) => {
            let cap = 2.0 * (l2 + upper);
            t.push(
                Row::new("m21", m.value, Some(m.error))
                    .bound(cap)
                    .pass(l2 <= (m.value + m.error) * (1.0 + o.tol) && m.value - m.error <= cap * (1.0 + o.tol))
                    .note("l2 <= m21 <= 2(l2 + sup N_h)"),
            );
        }
        Err(Error::DivergentSum(msg)) | Err(Error::DivergentIntegral(msg)) => {
            t.push(Row::new("m21", f64::INFINITY, None).verdict("DIVERGENT").note(msg));
        }
        Err(e) => return Err(e.into()),
    }
    Ok(t)
}

fn ts(o: &Opts) -> Vec<f64> {
    if o.t.is_empty() {
        vec![0.0]
    } else {
        o.t.clone()
    }
}

fn remainder_row(quantity: &str, r: &RemainderReport, tol: f64) -> Row {
    let row = Row::new(quantity, r.remainder.norm(), Some(r.truncation_budget));
    match (r.bound, r.holds()) {
        (Some(b), Some(ok)) => row.bound(b).pass(ok || r.remainder.norm() <= b * (1.0 + tol) + r.truncation_budget),
        _ => row,
    }
}

fn remainders(s: &Spectrum, o: &Opts, quantity: &str, f: fn(&Spectrum, f64, f64) -> bandlim_core::Result<RemainderReport>) -> Res<Table> {
    let points: Vec<(f64, f64)> = hs(o, || vec![0.5])?.into_iter().flat_map(|h| ts(o).into_iter().map(move |t| (h, t))).collect();
    let reps = par_map(&points, |&(h, t)| f(s, h, t))?;
    let mut t = Table::default();
    for (&(h, x), r) in points.iter().zip(reps) {
        t.push(remainder_row(quantity, &r, o.tol).param("h", h).param("t", x));
    }
    Ok(t)
}

fn parseval_cmd(s: &Spectrum, o: &Opts) -> Res<Table> {
    let g = match &o.g {
        Some(g) => load(g, o.gamma, o.delta, o.trunc)?.spectrum,
        None => s.clone(),
    };
    let h = hs(o, || vec![1.0, 0.5, 0.25])?;
    let reps = par_map(&h, |&x| parseval(s, &g, x, None))?;
    let mut t = Table::default();
    for (&x, r) in h.iter().zip(reps) {
        t.push(remainder_row("parseval_remainder", &r, o.tol).param("h", x));
    }
    Ok(t)
}

fn bernstein(s: &Spectrum, o: &Opts) -> Res<Table> {
    let order = o.order.unwrap_or(1);
    let sig = sigmas(o, || octaves(0, 6))?;
    let reps = par_map(&sig, |&x| bernstein_check(s, order, x))?;
    let mut t = Table::default();
    for r in reps {
        let ok = r.holds || r.derivative_norm <= r.bound * (1.0 + o.tol);
        t.push(Row::new("bernstein", r.derivative_norm, None).param("s", order).param("sigma", r.sigma).bound(r.bound).pass(ok));
    }
    Ok(t)
}

fn nikolskii(s: &Spectrum, o: &Opts) -> Res<Table> {
    let h = hs(o, || vec![1.0, 0.5, 0.25])?;
    let sig = sigmas(o, || vec![PI])?;
    let points: Vec<(f64, f64)> = h.iter().flat_map(|&x| sig.iter().map(move |&y| (x, y))).collect();
    let reps = par_map(&points, |&(x, y)| nikolskii_check(s, x, y))?;
    let mut t = Table::default();
    for r in reps {
        let ok = r.holds || r.sum - r.truncation_budget <= r.bound * (1.0 + o.tol);
        t.push(Row::new("nikolskii", r.sum, Some(r.truncation_budget)).param("h", r.h).param("sigma", r.sigma).bound(r.bound).pass(ok));
    }
    Ok(t)
}

fn counterexample(name: &str, o: &Opts) -> Res<Table> {
    let spec = family_spec(name, o.gamma, o.delta, o.trunc)?;
    let rep = membership_report(&spec)?;
    let mut t = Table::default();
    for c in rep.claims {
        let expected = match c.expected {
            Some(true) => "member: ",
            Some(false) => "non-member: ",
            None => "",
        };
        t.push(
            Row::new(c.property, c.value, Some(c.budget))
                .param("n_terms", rep.n_terms)
                .bound(c.bound)
                .pass(c.pass)
                .note(format!("{}: {expected}{}", rep.family, c.evidence)),
        );
    }
    Ok(t)
}

fn rates(s: &Spectrum, o: &Opts) -> Res<Table> {
    let quantity = o.quantity.ok_or_else(|| CliError::Argument("--quantity is required".into()))?;
    let r = o.order.unwrap_or(1);
    let (xs, values, toward, name): (Vec<f64>, Vec<Estimate<f64>>, Limit, &str) = match quantity {
        Quantity::Dist => {
            let x = sigmas(o, || log_grid(16.0, 4096.0, 12))?;
            let v = par_map(&x, |&y| dist_budgeted(s, o.q, y))?;
            (x, v, Limit::Infinity, "dist")
        }
        Quantity::FractionalTail => {
            let beta = o.beta.ok_or_else(|| CliError::Argument("--beta is required".into()))?;
            let x = sigmas(o, || log_grid(16.0, 4096.0, 12))?;
            let v = par_map(&x, |&y| fractional_tail_budgeted(s, y, beta))?;
            (x, v, Limit::Infinity, "fractional_tail")
        }
        Quantity::Omega => {
            let x = deltas(o, || log_grid(2f64.powi(-12), 0.25, 12));
            let v = modulus_sweep_budgeted(s, r, &x)?;
            (x, v, Limit::Zero, "omega")
        }
        Quantity::NH => {
            let x = hs(o, || log_grid(2f64.powi(-10), 1.0, 12))?;
            let v = par_map(&x, |&y| n_h(s, y))?;
            (x, v, Limit::Zero, "n_h")
        }
    };
    let mut t = Table::default();
    let mut pts = Vec::with_capacity(xs.len());
    for (&x, e) in xs.iter().zip(&values) {
        t.push(Row::new(name, e.value, Some(e.error)).param("x", x));
        pts.push((x, e.value));
    }
    t.push(fit_row(&pts, "slope")?);
    if let Some(exp) = o.exponent {
        if pts.iter().all(|p| p.1 > 0.0) {
            let tr = classify_trend(&pts, exp, toward)?;
            t.push(
                Row::new("trend_ratio", tr.ratio, None).param("exponent", exp).verdict(tr.verdict.label()).note("thresholds 0.5 and 0.9"),
            );
        }
    }
    Ok(t)
}
