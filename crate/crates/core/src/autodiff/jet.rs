use std::ops::{Add, Mul, Neg, Sub};

use super::Scalar;

/// Second-order truncated Taylor scalar along one input direction.
///
/// `d1` and `d2` are the first and second derivatives of `v` with respect to
/// the seeded coordinate. The component type is generic so that a
/// `Jet2<Var>` can be differentiated by the reverse-mode tape.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet2<T = f64> {
    pub v: T,
    pub d1: T,
    pub d2: T,
}

impl<T: Scalar> Jet2<T> {
    pub fn new(v: T, d1: T, d2: T) -> Self {
        Self { v, d1, d2 }
    }

    /// Lift a constant: both derivative channels are zero.
    pub fn constant(v: T) -> Self {
        Self { v, d1: T::zero(), d2: T::zero() }
    }

    /// The active input coordinate: unit first derivative.
    pub fn seed(v: T) -> Self {
        Self { v, d1: T::one(), d2: T::zero() }
    }

    /// Compose with a univariate function given its value and first two
    /// derivatives at `self.v`.
    fn chain(self, g0: T, g1: T, g2: T) -> Self {
        Self {
            v: g0,
            d1: g1 * self.d1,
            d2: g2 * self.d1 * self.d1 + g1 * self.d2,
        }
    }
}

impl<T: Scalar> Add for Jet2<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.v + rhs.v, self.d1 + rhs.d1, self.d2 + rhs.d2)
    }
}

impl<T: Scalar> Sub for Jet2<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.v - rhs.v, self.d1 - rhs.d1, self.d2 - rhs.d2)
    }
}

impl<T: Scalar> Neg for Jet2<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.v, -self.d1, -self.d2)
    }
}

impl<T: Scalar> Mul for Jet2<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::new(
            self.v * rhs.v,
            self.d1 * rhs.v + self.v * rhs.d1,
            self.d2 * rhs.v + (self.d1 * rhs.d1).scale(2.0) + self.v * rhs.d2,
        )
    }
}

impl<T: Scalar> Scalar for Jet2<T> {
    fn from_f64(c: f64) -> Self {
        Self::constant(T::from_f64(c))
    }

    fn value(&self) -> f64 {
        self.v.value()
    }

    fn scale(self, c: f64) -> Self {
        Self::new(self.v.scale(c), self.d1.scale(c), self.d2.scale(c))
    }

    fn tanh(self) -> Self {
        let t = self.v.tanh();
        let s = T::one() - t * t;
        self.chain(t, s, (t * s).scale(-2.0))
    }

    fn exp(self) -> Self {
        let e = self.v.exp();
        self.chain(e, e, e)
    }

    fn sin(self) -> Self {
        let (s, c) = (self.v.sin(), self.v.cos());
        self.chain(s, c, -s)
    }

    fn cos(self) -> Self {
        let (s, c) = (self.v.sin(), self.v.cos());
        self.chain(c, -s, -c)
    }

    fn recip(self) -> Self {
        let r = self.v.recip();
        let r2 = r * r;
        self.chain(r, -r2, (r2 * r).scale(2.0))
    }

    fn ln(self) -> Self {
        let r = self.v.recip();
        self.chain(self.v.ln(), r, -(r * r))
    }

    fn sqrt(self) -> Self {
        let q = self.v.sqrt();
        let r = q.recip();
        self.chain(q, r.scale(0.5), (r * self.v.recip()).scale(-0.25))
    }
}

/// Third-order univariate Taylor scalar over `f64`.
///
/// Used to tabulate activation derivatives up to third order, which the
/// batched backward pass through jet channels needs.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet3 {
    pub v: f64,
    pub d1: f64,
    pub d2: f64,
    pub d3: f64,
}

impl Jet3 {
    pub fn constant(v: f64) -> Self {
        Self { v, d1: 0.0, d2: 0.0, d3: 0.0 }
    }

    pub fn seed(v: f64) -> Self {
        Self { v, d1: 1.0, d2: 0.0, d3: 0.0 }
    }

    fn chain(self, g0: f64, g1: f64, g2: f64, g3: f64) -> Self {
        let (f1, f2, f3) = (self.d1, self.d2, self.d3);
        Self {
            v: g0,
            d1: g1 * f1,
            d2: g2 * f1 * f1 + g1 * f2,
            d3: g3 * f1 * f1 * f1 + 3.0 * g2 * f1 * f2 + g1 * f3,
        }
    }
}

impl Add for Jet3 {
    type Output = Self;
    fn add(self, r: Self) -> Self {
        Self { v: self.v + r.v, d1: self.d1 + r.d1, d2: self.d2 + r.d2, d3: self.d3 + r.d3 }
    }
}

impl Sub for Jet3 {
    type Output = Self;
    fn sub(self, r: Self) -> Self {
        Self { v: self.v - r.v, d1: self.d1 - r.d1, d2: self.d2 - r.d2, d3: self.d3 - r.d3 }
    }
}

impl Neg for Jet3 {
    type Output = Self;
    fn neg(self) -> Self {
        Self { v: -self.v, d1: -self.d1, d2: -self.d2, d3: -self.d3 }
    }
}

impl Mul for Jet3 {
    type Output = Self;
    fn mul(self, r: Self) -> Self {
        Self {
            v: self.v * r.v,
            d1: self.d1 * r.v + self.v * r.d1,
            d2: self.d2 * r.v + 2.0 * self.d1 * r.d1 + self.v * r.d2,
            d3: self.d3 * r.v + 3.0 * self.d2 * r.d1 + 3.0 * self.d1 * r.d2 + self.v * r.d3,
        }
    }
}

impl Scalar for Jet3 {
    fn from_f64(c: f64) -> Self {
        Self::constant(c)
    }
    fn value(&self) -> f64 {
        self.v
    }
    fn scale(self, c: f64) -> Self {
        Self { v: self.v * c, d1: self.d1 * c, d2: self.d2 * c, d3: self.d3 * c }
    }
    fn tanh(self) -> Self {
        let t = self.v.tanh();
        let s = 1.0 - t * t;
        self.chain(t, s, -2.0 * t * s, -2.0 * s * (1.0 - 3.0 * t * t))
    }
    fn exp(self) -> Self {
        let e = self.v.exp();
        self.chain(e, e, e, e)
    }
    fn sin(self) -> Self {
        let (s, c) = self.v.sin_cos();
        self.chain(s, c, -s, -c)
    }
    fn cos(self) -> Self {
        let (s, c) = self.v.sin_cos();
        self.chain(c, -s, -c, s)
    }
    fn recip(self) -> Self {
        let r = 1.0 / self.v;
        self.chain(r, -r * r, 2.0 * r * r * r, -6.0 * r * r * r * r)
    }
    fn ln(self) -> Self {
        let r = 1.0 / self.v;
        self.chain(self.v.ln(), r, -r * r, 2.0 * r * r * r)
    }
    fn sqrt(self) -> Self {
        let q = self.v.sqrt();
        let r = 1.0 / self.v;
        self.chain(q, 0.5 / q, -0.25 * r / q, 0.375 * r * r / q)
    }
}
