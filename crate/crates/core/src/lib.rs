//! Spectral-side numerics for functions given by their Fourier transform:
//! distances from band-limited spaces, sampling and reconstruction
//! remainders, smoothness classes, Riesz derivatives and modulation norms.
//!
//! The transform convention is `f^(v) = (2 pi)^(-1/2) int f(u) e^{-iuv} du`.

#![no_std]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod counterexamples;
pub mod distances;
pub mod error;
pub mod formulas;
pub mod math;
pub mod modulation;
pub mod numerics;
pub mod rates;
pub mod riesz;
pub mod smoothness;
pub mod spectrum;

pub use counterexamples::{Family, FamilySpec};
pub use error::{Error, Result};
pub use numerics::Region;
pub use spectrum::{Atom, PowerTail, RectAtom, Spectrum, TriangleAtom};
