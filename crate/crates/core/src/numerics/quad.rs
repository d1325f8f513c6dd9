//! Gauss-Legendre rules and a globally adaptive bisection driver.

use alloc::collections::BinaryHeap;
use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use super::tables::{GL16_W, GL16_X, GL32_W, GL32_X, GL8_W, GL8_X};
use crate::error::{Error, Result};

/// Values that can be integrated: real or complex.
pub trait QuadValue: Copy + Default + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn magnitude(&self) -> f64;
}

impl QuadValue for f64 {
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl QuadValue for Complex64 {
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

#[derive(Clone, Copy, Debug)]
pub enum Rule {
    Gl8,
    Gl16,
    Gl32,
}

impl Rule {
    fn table(self) -> (&'static [f64], &'static [f64]) {
        match self {
            Rule::Gl8 => (&GL8_X, &GL8_W),
            Rule::Gl16 => (&GL16_X, &GL16_W),
            Rule::Gl32 => (&GL32_X, &GL32_W),
        }
    }
}

/// Fixed Gauss-Legendre rule on `[a, b]`.
pub fn fixed<V: QuadValue, F: FnMut(f64) -> V>(f: &mut F, a: f64, b: f64, rule: Rule) -> V {
    let (xs, ws) = rule.table();
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = V::default();
    for (x, w) in xs.iter().zip(ws) {
        let d = half * x;
        acc = acc + (f(mid - d) + f(mid + d)) * *w;
    }
    acc * half
}

/// Tolerances for the adaptive driver.
#[derive(Clone, Copy, Debug)]
pub struct Tolerance {
    pub rel: f64,
    pub abs: f64,
    pub max_intervals: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self { rel: 1e-10, abs: 1e-300, max_intervals: 200_000 }
    }
}

impl Tolerance {
    pub fn rel(rel: f64) -> Self {
        Self { rel, ..Self::default() }
    }
}

/// Result of an adaptive integration: value and error estimate.
#[derive(Clone, Copy, Debug, Default)]
pub struct Estimate<V> {
    pub value: V,
    pub error: f64,
}

struct Cell<V> {
    a: f64,
    b: f64,
    value: V,
    error: f64,
}

impl<V> PartialEq for Cell<V> {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl<V> Eq for Cell<V> {}
impl<V> PartialOrd for Cell<V> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<V> Ord for Cell<V> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn cell<V: QuadValue, F: FnMut(f64) -> V>(f: &mut F, a: f64, b: f64) -> Cell<V> {
    let g32 = fixed(f, a, b, Rule::Gl32);
    let g16 = fixed(f, a, b, Rule::Gl16);
    Cell { a, b, value: g32, error: (g32 - g16).magnitude() }
}

/// Globally adaptive Gauss-Legendre integration over the consecutive
/// intervals delimited by `breaks` (sorted, finite).
pub fn adaptive<V: QuadValue, F: FnMut(f64) -> V>(mut f: F, breaks: &[f64], tol: Tolerance) -> Result<Estimate<V>> {
    let mut heap = BinaryHeap::new();
    for w in breaks.windows(2) {
        if w[1] > w[0] {
            heap.push(cell(&mut f, w[0], w[1]));
        }
    }
    if heap.is_empty() {
        return Ok(Estimate::default());
    }
    loop {
        let mut total = V::default();
        let mut err = 0.0;
        for c in heap.iter() {
            total = total + c.value;
            err += c.error;
        }
        if !err.is_finite() || !total.magnitude().is_finite() {
            return Err(Error::NonConvergence(format!("non-finite integrand on [{}, {}]", breaks[0], breaks[breaks.len() - 1])));
        }
        let target = tol.abs.max(tol.rel * total.magnitude());
        if err <= target {
            return Ok(Estimate { value: total, error: err });
        }
        if heap.len() >= tol.max_intervals {
            return Err(Error::NonConvergence(format!("{} subintervals, error estimate {:e} above target {:e}", heap.len(), err, target)));
        }
        // Bisect the worst cells until the error budget could plausibly be met.
        let batch = (heap.len() / 8).max(1);
        for _ in 0..batch {
            let Some(worst) = heap.pop() else { break };
            let m = 0.5 * (worst.a + worst.b);
            if !(m > worst.a && m < worst.b) {
                heap.push(Cell { error: 0.0, ..worst });
                continue;
            }
            heap.push(cell(&mut f, worst.a, m));
            heap.push(cell(&mut f, m, worst.b));
        }
    }
}

/// Adaptive integration over a single interval `[a, b]`.
pub fn adaptive_quadrature<F: FnMut(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<f64> {
    adaptive(f, &[a, b], Tolerance::rel(tol)).map(|e| e.value)
}

/// Breakpoints splitting `[a, b]` into pieces no longer than `max_len`.
pub fn split_points(a: f64, b: f64, max_len: f64, out: &mut Vec<f64>) {
    let n = if max_len.is_finite() && max_len > 0.0 { (((b - a) / max_len).ceil() as usize).clamp(1, 4_000_000) } else { 1 };
    for i in 0..n {
        out.push(a + (b - a) * (i as f64) / (n as f64));
    }
    out.push(b);
}

/// Integrate over `[a, b]` after splitting it into pieces of length at
/// most `max_len`.
pub fn adaptive_split<V: QuadValue, F: FnMut(f64) -> V>(f: F, a: f64, b: f64, max_len: f64, tol: Tolerance) -> Result<Estimate<V>> {
    let mut br = Vec::new();
    split_points(a, b, max_len, &mut br);
    let tol = Tolerance { max_intervals: tol.max_intervals.max(4 * br.len()), ..tol };
    adaptive(f, &br, tol)
}

/// `int_a^inf f` through the substitution `v = a / s`, `s` in `(0, 1]`.
pub fn adaptive_to_infinity<V: QuadValue, F: FnMut(f64) -> V>(mut f: F, a: f64, tol: Tolerance) -> Result<Estimate<V>> {
    if a <= 0.0 {
        return Err(crate::error::invalid("a", "semi-infinite integration needs a > 0"));
    }
    let g = |s: f64| {
        if s <= 0.0 {
            V::default()
        } else {
            f(a / s) * (a / (s * s))
        }
    };
    let breaks = [0.0, 1e-12, 1e-9, 1e-6, 1e-4, 1e-3, 0.01, 0.05, 0.1, 0.25, 0.5, 1.0];
    adaptive(g, &breaks, tol)
}
