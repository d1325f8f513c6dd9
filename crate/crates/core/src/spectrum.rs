//! Spectral representation of test functions: finite sums of triangle and
//! rectangle atoms plus optional power-law tails.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::counterexamples::FamilySpec;
use crate::error::{invalid, require, Error, Result};
use crate::math::{sinc, INV_SQRT_2PI, SQRT_2PI};

/// `amp * sinc^2(b (t - tau)) * e^{i c (t - tau)}`; its transform is a
/// triangle of half-width `2 pi b` centred at `c`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TriangleAtom {
    pub amp: f64,
    pub b: f64,
    pub c: f64,
    pub tau: f64,
}

/// Transform equal to `amp / sqrt(2 pi)` on `(c - w, c + w)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RectAtom {
    pub amp: f64,
    pub w: f64,
    pub c: f64,
    pub tau: f64,
}

/// `amp * |v|^(-gamma)` for `|v| >= cutoff`.  Spectral-only.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PowerTail {
    pub gamma: f64,
    pub amp: f64,
    pub cutoff: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Atom {
    Triangle(TriangleAtom),
    Rect(RectAtom),
}

fn finite(x: f64, name: &'static str) -> Result<()> {
    require(x.is_finite(), name, "must be finite")
}

impl TriangleAtom {
    pub fn new(amp: f64, b: f64, c: f64, tau: f64) -> Result<Self> {
        finite(amp, "amp")?;
        finite(c, "c")?;
        finite(tau, "tau")?;
        require(b.is_finite() && b > 0.0, "b", "must be positive")?;
        Ok(Self { amp, b, c, tau })
    }

    pub fn half_width(&self) -> f64 {
        2.0 * PI * self.b
    }

    pub fn peak(&self) -> f64 {
        self.amp * INV_SQRT_2PI / self.b
    }

    pub fn l1_norm(&self) -> f64 {
        SQRT_2PI * self.amp.abs()
    }

    pub fn l2_norm(&self) -> f64 {
        self.amp.abs() * (2.0 / (3.0 * self.b)).sqrt()
    }

    pub fn time(&self, t: f64) -> Complex64 {
        let x = t - self.tau;
        let s = sinc(self.b * x);
        Complex64::from_polar(self.amp * s * s, self.c * x)
    }
}

impl RectAtom {
    pub fn new(amp: f64, w: f64, c: f64, tau: f64) -> Result<Self> {
        finite(amp, "amp")?;
        finite(c, "c")?;
        finite(tau, "tau")?;
        require(w.is_finite() && w > 0.0, "w", "must be positive")?;
        Ok(Self { amp, w, c, tau })
    }

    pub fn l1_norm(&self) -> f64 {
        self.amp.abs() * 2.0 * self.w * INV_SQRT_2PI
    }

    pub fn l2_norm(&self) -> f64 {
        self.amp.abs() * (self.w / PI).sqrt()
    }

    pub fn time(&self, t: f64) -> Complex64 {
        let x = t - self.tau;
        Complex64::from_polar(self.amp * self.w / PI * sinc(self.w * x / PI), self.c * x)
    }
}

impl PowerTail {
    pub fn new(gamma: f64) -> Result<Self> {
        Self::with_scale(gamma, 1.0, 1.0)
    }

    pub fn with_scale(gamma: f64, amp: f64, cutoff: f64) -> Result<Self> {
        require(gamma.is_finite() && gamma > 0.5, "gamma", "must exceed 1/2")?;
        finite(amp, "amp")?;
        require(cutoff.is_finite() && cutoff > 0.0, "cutoff", "must be positive")?;
        Ok(Self { gamma, amp, cutoff })
    }

    pub fn density(&self, v: f64) -> f64 {
        let a = v.abs();
        if a >= self.cutoff {
            self.amp * a.powf(-self.gamma)
        } else {
            0.0
        }
    }
}

impl Atom {
    pub fn support(&self) -> (f64, f64) {
        match self {
            Atom::Triangle(a) => (a.c - a.half_width(), a.c + a.half_width()),
            Atom::Rect(a) => (a.c - a.w, a.c + a.w),
        }
    }

    pub fn tau(&self) -> f64 {
        match self {
            Atom::Triangle(a) => a.tau,
            Atom::Rect(a) => a.tau,
        }
    }

    pub fn center(&self) -> f64 {
        match self {
            Atom::Triangle(a) => a.c,
            Atom::Rect(a) => a.c,
        }
    }

    /// Real envelope of the transform (the transform without its phase).
    pub fn envelope(&self, v: f64) -> f64 {
        match self {
            Atom::Triangle(a) => {
                let d = (v - a.c).abs() / a.half_width();
                if d < 1.0 {
                    a.peak() * (1.0 - d)
                } else {
                    0.0
                }
            }
            Atom::Rect(a) => {
                if (v - a.c).abs() < a.w {
                    a.amp * INV_SQRT_2PI
                } else {
                    0.0
                }
            }
        }
    }

    pub fn density(&self, v: f64) -> Complex64 {
        Complex64::from_polar(self.envelope(v), -v * self.tau())
    }

    pub fn time(&self, t: f64) -> Complex64 {
        match self {
            Atom::Triangle(a) => a.time(t),
            Atom::Rect(a) => a.time(t),
        }
    }

    pub fn l1_norm(&self) -> f64 {
        match self {
            Atom::Triangle(a) => a.l1_norm(),
            Atom::Rect(a) => a.l1_norm(),
        }
    }

    pub fn l2_norm(&self) -> f64 {
        match self {
            Atom::Triangle(a) => a.l2_norm(),
            Atom::Rect(a) => a.l2_norm(),
        }
    }

    /// Upper bound on `|atom(t)|`.
    pub fn time_envelope(&self, t: f64) -> f64 {
        match self {
            Atom::Triangle(a) => {
                let x = (PI * a.b * (t - a.tau)).abs();
                a.amp.abs() * if x > 1.0 { 1.0 / (x * x) } else { 1.0 }
            }
            Atom::Rect(a) => {
                let x = (t - a.tau).abs();
                a.amp.abs() * (a.w / PI).min(1.0 / (PI * x))
            }
        }
    }

    /// Transform of `t -> atom(lambda t)`.
    pub fn dilate(&self, lambda: f64) -> Atom {
        match *self {
            Atom::Triangle(a) => Atom::Triangle(TriangleAtom { amp: a.amp, b: a.b * lambda, c: a.c * lambda, tau: a.tau / lambda }),
            Atom::Rect(a) => Atom::Rect(RectAtom { amp: a.amp / lambda, w: a.w * lambda, c: a.c * lambda, tau: a.tau / lambda }),
        }
    }

    fn piece_term(&self, mid: f64) -> Term {
        match self {
            Atom::Triangle(a) => {
                let w = a.half_width();
                let d = mid - a.c;
                let e = a.peak() * (1.0 - d.abs() / w);
                let s = -d.signum() * a.peak() / w;
                Term { e, s, tau: a.tau }
            }
            Atom::Rect(a) => Term { e: a.amp * INV_SQRT_2PI, s: 0.0, tau: a.tau },
        }
    }
}

/// Linear piece of one atom in local coordinates: `(e + s u) e^{-i v tau}`
/// with `u = v - mid`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Term {
    pub e: f64,
    pub s: f64,
    pub tau: f64,
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Piece {
    pub lo: f64,
    pub hi: f64,
    pub mid: f64,
    pub start: u32,
    pub end: u32,
    /// All terms share one phase and no tail is active: `|density| = |e + s u|`.
    pub coherent: bool,
    pub e: f64,
    pub s: f64,
    pub tails: bool,
}

#[derive(Clone, Debug, Default)]
pub(crate) struct Layout {
    pub breaks: Vec<f64>,
    pub pieces: Vec<Piece>,
    pub terms: Vec<Term>,
    /// Double-word prefix sums `(hi, lo)` of per-piece masses.
    pub prefix_l2: Vec<(f64, f64)>,
    pub prefix_l1: Vec<(f64, f64)>,
    pub disjoint: bool,
}

/// Immutable spectral description of a function.
#[derive(Clone, Debug)]
pub struct Spectrum {
    atoms: Vec<Atom>,
    tails: Vec<PowerTail>,
    truncation: Option<FamilySpec>,
    layout: Layout,
}

impl Spectrum {
    pub fn new(atoms: Vec<Atom>, tails: Vec<PowerTail>) -> Result<Self> {
        for a in &atoms {
            match a {
                Atom::Triangle(t) => {
                    TriangleAtom::new(t.amp, t.b, t.c, t.tau)?;
                }
                Atom::Rect(r) => {
                    RectAtom::new(r.amp, r.w, r.c, r.tau)?;
                }
            }
        }
        for t in &tails {
            PowerTail::with_scale(t.gamma, t.amp, t.cutoff)?;
        }
        let layout = build_layout(&atoms, &tails)?;
        Ok(Self { atoms, tails, truncation: None, layout })
    }

    pub fn from_atoms(atoms: Vec<Atom>) -> Result<Self> {
        Self::new(atoms, Vec::new())
    }

    pub fn triangle(amp: f64, b: f64, c: f64, tau: f64) -> Result<Self> {
        Self::from_atoms(alloc::vec![Atom::Triangle(TriangleAtom::new(amp, b, c, tau)?)])
    }

    pub fn rect(amp: f64, w: f64, c: f64, tau: f64) -> Result<Self> {
        Self::from_atoms(alloc::vec![Atom::Rect(RectAtom::new(amp, w, c, tau)?)])
    }

    /// `sinc t`: transform `1/sqrt(2 pi)` on `|v| < pi`.
    pub fn sinc() -> Self {
        Self::rect(1.0, PI, 0.0, 0.0).expect("valid constants")
    }

    pub fn power_tail(gamma: f64) -> Result<Self> {
        Self::new(Vec::new(), alloc::vec![PowerTail::new(gamma)?])
    }

    pub fn with_truncation(mut self, truncation: FamilySpec) -> Self {
        self.truncation = Some(truncation);
        self
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn tails(&self) -> &[PowerTail] {
        &self.tails
    }

    /// Family and truncation index when built from an infinite series.
    pub fn truncation(&self) -> Option<&FamilySpec> {
        self.truncation.as_ref()
    }

    pub fn is_tail_free(&self) -> bool {
        self.tails.is_empty()
    }

    /// True when no two atom supports overlap.
    pub fn has_disjoint_atoms(&self) -> bool {
        self.layout.disjoint
    }

    pub(crate) fn layout(&self) -> &Layout {
        &self.layout
    }

    /// Smallest interval containing every atom support.
    pub fn atom_hull(&self) -> Option<(f64, f64)> {
        let b = &self.layout.breaks;
        if self.atoms.is_empty() {
            None
        } else {
            let lo = self.atoms.iter().map(|a| a.support().0).fold(f64::INFINITY, f64::min);
            let hi = self.atoms.iter().map(|a| a.support().1).fold(f64::NEG_INFINITY, f64::max);
            debug_assert!(!b.is_empty());
            Some((lo, hi))
        }
    }

    /// Largest `|v|` in an atom support.
    pub fn max_frequency_of_atoms(&self) -> f64 {
        self.atom_hull().map_or(0.0, |(lo, hi)| lo.abs().max(hi.abs()))
    }

    /// Largest `|v|` carrying spectral mass (infinite with tails).
    pub fn max_frequency(&self) -> f64 {
        if !self.tails.is_empty() {
            return f64::INFINITY;
        }
        self.atom_hull().map_or(0.0, |(lo, hi)| lo.abs().max(hi.abs()))
    }

    pub fn density(&self, v: f64) -> Complex64 {
        let l = &self.layout;
        let mut acc = Complex64::new(0.0, 0.0);
        if let Some(i) = l.piece_at(v) {
            let p = &l.pieces[i];
            let u = v - p.mid;
            for t in &l.terms[p.start as usize..p.end as usize] {
                acc += Complex64::from_polar(t.e + t.s * u, -v * t.tau);
            }
        }
        for t in &self.tails {
            acc += t.density(v);
        }
        acc
    }

    pub fn density_abs(&self, v: f64) -> f64 {
        self.density(v).norm()
    }

    /// Closed-form time-domain value.
    pub fn time_eval(&self, t: f64) -> Result<Complex64> {
        if !self.tails.is_empty() {
            return Err(Error::UnsupportedTimeEval);
        }
        Ok(self.atoms.iter().fold(Complex64::new(0.0, 0.0), |acc, a| acc + a.time(t)))
    }

    /// Upper bound on `|f(t)|` from the atom envelopes.
    pub fn time_envelope(&self, t: f64) -> Result<f64> {
        if !self.tails.is_empty() {
            return Err(Error::UnsupportedTimeEval);
        }
        Ok(self.atoms.iter().map(|a| a.time_envelope(t)).sum())
    }

    /// Sorted, deduplicated support endpoints, triangle kinks and tail cutoffs.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(3 * self.atoms.len() + 2 * self.tails.len());
        for a in &self.atoms {
            let (lo, hi) = a.support();
            out.push(lo);
            out.push(hi);
            if let Atom::Triangle(t) = a {
                out.push(t.c);
            }
        }
        for t in &self.tails {
            out.push(-t.cutoff);
            out.push(t.cutoff);
        }
        out.sort_by(f64::total_cmp);
        out.dedup();
        out
    }

    /// `||f^||_2`, equal to `||f||_2`.
    pub fn l2_norm(&self) -> Result<f64> {
        crate::numerics::integrate_abs_q(self, 2.0, 0.0, &crate::numerics::Region::all()).map(f64::sqrt)
    }

    /// `||f^||_1`.
    pub fn l1_spectral_norm(&self) -> Result<f64> {
        crate::numerics::integrate_abs_q(self, 1.0, 0.0, &crate::numerics::Region::all())
    }

    /// `int f^(v) conj(g^(v)) dv`, equal to `int f conj(g)`.
    pub fn inner_product(&self, other: &Spectrum) -> Result<Complex64> {
        use crate::numerics::{adaptive, exp_moments, power_integral, Tolerance};
        let mut br: Vec<f64> = self.layout.breaks.iter().chain(&other.layout.breaks).copied().collect();
        br.sort_by(f64::total_cmp);
        br.dedup();
        let mut acc = Complex64::new(0.0, 0.0);
        for w in br.windows(2) {
            let (a, b) = (w[0], w[1]);
            let m = 0.5 * (a + b);
            let half = 0.5 * (b - a);
            let tails = self.tails.iter().chain(&other.tails).any(|t| m.abs() >= t.cutoff);
            if tails {
                let f = |v: f64| self.density(v) * other.density(v).conj();
                acc += adaptive(f, &[a, b], Tolerance::rel(1e-12))?.value;
                continue;
            }
            let (Some(i), Some(j)) = (self.layout.piece_at(m), other.layout.piece_at(m)) else {
                continue;
            };
            let (p, q) = (&self.layout.pieces[i], &other.layout.pieces[j]);
            for x in &self.layout.terms[p.start as usize..p.end as usize] {
                let x0 = x.e + x.s * (m - p.mid);
                for y in &other.layout.terms[q.start as usize..q.end as usize] {
                    let y0 = y.e + y.s * (m - q.mid);
                    let kappa = y.tau - x.tau;
                    let [i0, i1, i2] = exp_moments(kappa, half);
                    let poly = i0 * (x0 * y0) + i1 * (x0 * y.s + x.s * y0) + i2 * (x.s * y.s);
                    acc += Complex64::from_polar(1.0, kappa * m) * poly;
                }
            }
        }
        if let (Some(&lo), Some(&hi)) = (br.first(), br.last()) {
            for x in &self.tails {
                for y in &other.tails {
                    let p = -(x.gamma + y.gamma);
                    let right = power_integral(p, hi.max(x.cutoff).max(y.cutoff), f64::INFINITY)?;
                    let left = power_integral(p, (-lo).max(x.cutoff).max(y.cutoff), f64::INFINITY)?;
                    acc += x.amp * y.amp * (right + left);
                }
            }
        }
        Ok(acc)
    }

    /// Transform of `t -> f(lambda t)`, i.e. `v -> f^(v / lambda) / lambda`.
    pub fn dilate(&self, lambda: f64) -> Result<Spectrum> {
        require(lambda.is_finite() && lambda > 0.0, "lambda", "must be positive")?;
        let atoms = self.atoms.iter().map(|a| a.dilate(lambda)).collect();
        let tails = self
            .tails
            .iter()
            .map(|t| PowerTail { gamma: t.gamma, amp: t.amp * lambda.powf(t.gamma - 1.0), cutoff: t.cutoff * lambda })
            .collect();
        Spectrum::new(atoms, tails)
    }

    /// Transform of `f + g`.
    pub fn sum(&self, other: &Spectrum) -> Result<Spectrum> {
        let mut atoms = self.atoms.clone();
        atoms.extend_from_slice(&other.atoms);
        let mut tails = self.tails.clone();
        tails.extend_from_slice(&other.tails);
        Spectrum::new(atoms, tails)
    }

    /// Transform of `k f`.
    pub fn scale(&self, k: f64) -> Result<Spectrum> {
        if !k.is_finite() {
            return Err(invalid("k", "must be finite"));
        }
        let atoms = self
            .atoms
            .iter()
            .map(|a| match *a {
                Atom::Triangle(t) => Atom::Triangle(TriangleAtom { amp: t.amp * k, ..t }),
                Atom::Rect(r) => Atom::Rect(RectAtom { amp: r.amp * k, ..r }),
            })
            .collect();
        let tails = self.tails.iter().map(|t| PowerTail { amp: t.amp * k, ..*t }).collect();
        Spectrum::new(atoms, tails)
    }
}

impl Layout {
    /// Index of the finite piece containing `v`.
    pub fn piece_at(&self, v: f64) -> Option<usize> {
        if self.pieces.is_empty() || v < self.breaks[0] || v > self.breaks[self.breaks.len() - 1] {
            return None;
        }
        let k = self.breaks.partition_point(|&b| b <= v);
        Some(k.saturating_sub(1).min(self.pieces.len() - 1))
    }

    /// Range of finite pieces meeting `(a, b)`.
    pub fn pieces_between(&self, a: f64, b: f64) -> core::ops::Range<usize> {
        if self.pieces.is_empty() {
            return 0..0;
        }
        let first = self.breaks.partition_point(|&x| x <= a).saturating_sub(1);
        let last = self.breaks.partition_point(|&x| x < b).min(self.pieces.len());
        first..last.max(first)
    }
}

fn build_layout(atoms: &[Atom], tails: &[PowerTail]) -> Result<Layout> {
    let mut breaks = Vec::with_capacity(3 * atoms.len() + 2 * tails.len() + 1);
    for a in atoms {
        let (lo, hi) = a.support();
        breaks.push(lo);
        breaks.push(hi);
        if let Atom::Triangle(t) = a {
            breaks.push(t.c);
        }
    }
    for t in tails {
        breaks.push(-t.cutoff);
        breaks.push(t.cutoff);
    }
    if breaks.is_empty() {
        return Ok(Layout { disjoint: true, ..Layout::default() });
    }
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    if breaks[0] < 0.0 && breaks[breaks.len() - 1] > 0.0 {
        let k = breaks.partition_point(|&b| b < 0.0);
        if breaks[k] != 0.0 {
            breaks.insert(k, 0.0);
        }
    }
    let n_pieces = breaks.len().saturating_sub(1);
    let mut counts = alloc::vec![0u32; n_pieces + 1];
    let mut ranges = Vec::with_capacity(atoms.len());
    let mut disjoint = true;
    let mut order: Vec<(f64, f64)> = Vec::with_capacity(atoms.len());
    for a in atoms {
        let (lo, hi) = a.support();
        let i0 = breaks.partition_point(|&b| b < lo);
        let i1 = breaks.partition_point(|&b| b < hi);
        ranges.push((i0, i1));
        for c in &mut counts[i0..i1] {
            *c += 1;
        }
        order.push((lo, hi));
    }
    order.sort_by(|x, y| x.0.total_cmp(&y.0));
    for w in order.windows(2) {
        if w[1].0 < w[0].1 {
            disjoint = false;
            break;
        }
    }
    let mut offsets = alloc::vec![0u32; n_pieces + 1];
    for i in 0..n_pieces {
        offsets[i + 1] = offsets[i] + counts[i];
    }
    let mut fill = offsets.clone();
    let mut terms = alloc::vec![Term { e: 0.0, s: 0.0, tau: 0.0 }; offsets[n_pieces] as usize];
    for (a, &(i0, i1)) in atoms.iter().zip(&ranges) {
        for i in i0..i1 {
            let mid = 0.5 * (breaks[i] + breaks[i + 1]);
            terms[fill[i] as usize] = a.piece_term(mid);
            fill[i] += 1;
        }
    }
    let mut pieces = Vec::with_capacity(n_pieces);
    for i in 0..n_pieces {
        let (lo, hi) = (breaks[i], breaks[i + 1]);
        let mid = 0.5 * (lo + hi);
        let ts = &terms[offsets[i] as usize..offsets[i + 1] as usize];
        let active_tails = tails.iter().any(|t| mid.abs() >= t.cutoff);
        let coherent = !active_tails && ts.windows(2).all(|w| w[0].tau == w[1].tau);
        let (e, s) = ts.iter().fold((0.0, 0.0), |(e, s), t| (e + t.e, s + t.s));
        pieces.push(Piece { lo, hi, mid, start: offsets[i], end: offsets[i + 1], coherent, e, s, tails: active_tails });
    }
    let mut layout = Layout { breaks, pieces, terms, prefix_l2: Vec::new(), prefix_l1: Vec::new(), disjoint };
    let (p2, p1) = crate::numerics::piece_prefix_sums(&layout, tails)?;
    layout.prefix_l2 = p2;
    layout.prefix_l1 = p1;
    Ok(layout)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_density_matches_formula() {
        let a = TriangleAtom::new(1.3, 0.7, 2.0, 0.4).unwrap();
        let s = Spectrum::triangle(1.3, 0.7, 2.0, 0.4).unwrap();
        for &v in &[-2.0, 0.0, 1.0, 2.0, 3.5, 6.4, 10.0] {
            let want = Complex64::from_polar(1.3 * INV_SQRT_2PI / 0.7 * (1.0 - (v - 2.0f64).abs() / (2.0 * PI * 0.7)).max(0.0), -v * 0.4);
            assert!((s.density(v) - want).norm() < 1e-14, "v={v}");
        }
        assert!((a.l1_norm() - 1.3 * SQRT_2PI).abs() < 1e-14);
    }

    #[test]
    fn rect_with_w_pi_is_sinc() {
        let s = Spectrum::sinc();
        for &t in &[0.0, 0.25, 1.0, 2.5, -7.3] {
            let v = s.time_eval(t).unwrap();
            assert!((v.re - sinc(t)).abs() < 1e-15 && v.im.abs() < 1e-15);
        }
    }

    #[test]
    fn overlapping_atoms_sum() {
        let a = Atom::Triangle(TriangleAtom::new(1.0, 0.5, 0.0, 0.0).unwrap());
        let b = Atom::Rect(RectAtom::new(0.5, 1.0, 1.0, 0.3).unwrap());
        let s = Spectrum::from_atoms(alloc::vec![a, b]).unwrap();
        assert!(!s.has_disjoint_atoms());
        for &v in &[-3.0, -0.5, 0.2, 0.9, 1.7, 2.5] {
            assert!((s.density(v) - a.density(v) - b.density(v)).norm() < 1e-14);
        }
    }

    #[test]
    fn power_tail_has_no_time_domain() {
        let s = Spectrum::power_tail(1.2).unwrap();
        assert_eq!(s.time_eval(0.0), Err(Error::UnsupportedTimeEval));
        assert!((s.density(2.0).re - 2.0f64.powf(-1.2)).abs() < 1e-15);
        assert_eq!(s.density(0.5).re, 0.0);
        assert!(PowerTail::new(0.5).is_err());
        assert!(TriangleAtom::new(1.0, 0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn dilation_matches_time_domain() {
        let s = Spectrum::from_atoms(alloc::vec![
            Atom::Triangle(TriangleAtom::new(1.0, 0.5, 1.0, 0.2).unwrap()),
            Atom::Rect(RectAtom::new(0.7, 2.0, -1.0, -0.4).unwrap()),
        ])
        .unwrap();
        let d = s.dilate(2.5).unwrap();
        for &t in &[-1.0, 0.0, 0.3, 2.0] {
            assert!((d.time_eval(t).unwrap() - s.time_eval(2.5 * t).unwrap()).norm() < 1e-13);
        }
    }
}
