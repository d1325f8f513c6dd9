//! Command-line surface.

use std::path::PathBuf;
use std::str::FromStr;

use bandlim_core::rates::log_grid;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::table::Format;

#[derive(Debug, Parser)]
#[command(name = "bandlim", version, about = "Distances from band-limited spaces, sampling remainders, smoothness and modulation norms")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Opts,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// L^q distance from the band-limited space B_sigma.
    Dist,
    /// Modulus of smoothness and its log-log slope.
    Smoothness,
    /// Riesz derivative norm and convergence of the singular integral.
    Riesz,
    /// Band sums N_h, their supremum and the M^{2,1} norm.
    Modulation,
    /// Sampling series remainder with its bound.
    Sampling,
    /// Derivative sampling formula remainder with its bound.
    Rkf,
    /// Sampled Parseval identity remainder.
    Parseval,
    /// Bernstein inequality with the distance term.
    Bernstein,
    /// Nikolskii inequality for sampled l^2 norms.
    Nikolskii,
    /// Membership report for a named counterexample family.
    Counterexample { name: String },
    /// Sweep a quantity and fit its rate.
    Rates,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Quantity {
    Dist,
    Omega,
    #[value(name = "n_h")]
    NH,
    #[value(name = "fractional_tail")]
    FractionalTail,
}

/// `a:b` or `a:b:n`, log-spaced, `n` defaulting to 12.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Range {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl Range {
    pub fn grid(&self) -> Vec<f64> {
        log_grid(self.lo, self.hi, self.n)
    }
}

impl FromStr for Range {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        if !(2..=3).contains(&parts.len()) {
            return Err(format!("`{s}`: expected lo:hi or lo:hi:n"));
        }
        let num = |p: &str| p.trim().parse::<f64>().map_err(|e| format!("`{p}`: {e}"));
        let (lo, hi) = (num(parts[0])?, num(parts[1])?);
        let n = match parts.get(2) {
            Some(p) => p.trim().parse::<usize>().map_err(|e| format!("`{p}`: {e}"))?,
            None => 12,
        };
        if !(lo > 0.0 && lo.is_finite() && hi.is_finite()) {
            return Err(format!("`{s}`: bounds must be positive and finite"));
        }
        if !(hi > lo) || n < 2 {
            return Err(format!("`{s}`: need lo < hi and at least 2 points"));
        }
        Ok(Range { lo, hi, n })
    }
}

#[derive(Debug, Clone, Args)]
pub struct Opts {
    /// Function: a spec JSON path or `builtin:<name>`.
    #[arg(long, global = true)]
    pub f: Option<String>,
    /// Second function for `parseval` (defaults to `--f`).
    #[arg(long, global = true)]
    pub g: Option<String>,
    /// Family parameter gamma.
    #[arg(long, global = true)]
    pub gamma: Option<f64>,
    /// Family parameter delta.
    #[arg(long, global = true)]
    pub delta: Option<f64>,
    /// Truncation index N of a builtin family.
    #[arg(long, global = true)]
    pub trunc: Option<u64>,
    #[arg(long, global = true, default_value_t = 2.0)]
    pub q: f64,
    #[arg(long, global = true, value_delimiter = ',', allow_negative_numbers = true)]
    pub sigma: Vec<f64>,
    #[arg(long, global = true)]
    pub sigma_range: Option<Range>,
    #[arg(long, global = true, value_delimiter = ',')]
    pub h: Vec<f64>,
    #[arg(long, global = true)]
    pub h_range: Option<Range>,
    /// Evaluation points for the sampling formulas.
    #[arg(long, global = true, value_delimiter = ',', allow_negative_numbers = true)]
    pub t: Vec<f64>,
    #[arg(long, global = true)]
    pub delta_range: Option<Range>,
    #[arg(long, global = true)]
    pub alpha: Option<f64>,
    /// Difference order r, derivative order s, or kernel order j.
    #[arg(long, global = true)]
    pub order: Option<u32>,
    #[arg(long, global = true, value_delimiter = ',')]
    pub epsilon_list: Vec<f64>,
    /// Relative slack in PASS/FAIL comparisons.
    #[arg(long, global = true, default_value_t = 1e-12, allow_negative_numbers = true)]
    pub tol: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Quantity swept by `rates`.
    #[arg(long, global = true, value_enum)]
    pub quantity: Option<Quantity>,
    /// Exponent e for the trend test on `y x^e` in `rates`.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub exponent: Option<f64>,
    /// Order beta of the fractional tail in `rates`.
    #[arg(long, global = true)]
    pub beta: Option<f64>,
}
