//! Derivative machinery.
//!
//! Spatial derivatives of the network output are carried forward by truncated
//! Taylor scalars ([`Jet2`], [`Jet3`]). Parameter gradients of a scalar loss
//! come from the reverse-mode [`Tape`]. Both implement [`Scalar`], so a
//! `Jet2<Var>` differentiates through the spatial-derivative channels.

mod jet;
mod tape;

pub use jet::{Jet2, Jet3};
pub use tape::{grad_params, Tape, Var};

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

/// Arithmetic closure shared by plain floats, jets and tape variables.
pub trait Scalar:
    Copy
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_f64(c: f64) -> Self;
    /// The primal value.
    fn value(&self) -> f64;
    fn scale(self, c: f64) -> Self;
    fn tanh(self) -> Self;
    fn exp(self) -> Self;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn recip(self) -> Self;
    fn ln(self) -> Self;
    fn sqrt(self) -> Self;

    fn zero() -> Self {
        Self::from_f64(0.0)
    }

    fn one() -> Self {
        Self::from_f64(1.0)
    }

    fn square(self) -> Self {
        self * self
    }

    fn powi(self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc * self;
        }
        acc
    }
}

impl Scalar for f64 {
    fn from_f64(c: f64) -> Self {
        c
    }
    fn value(&self) -> f64 {
        *self
    }
    fn scale(self, c: f64) -> Self {
        self * c
    }
    fn tanh(self) -> Self {
        f64::tanh(self)
    }
    fn exp(self) -> Self {
        f64::exp(self)
    }
    fn sin(self) -> Self {
        f64::sin(self)
    }
    fn cos(self) -> Self {
        f64::cos(self)
    }
    fn recip(self) -> Self {
        f64::recip(self)
    }
    fn ln(self) -> Self {
        f64::ln(self)
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn powi(self, n: u32) -> Self {
        f64::powi(self, n as i32)
    }
}
