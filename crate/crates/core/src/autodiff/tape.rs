use std::cell::RefCell;
use std::ops::{Add, Mul, Neg, Sub};

use super::Scalar;
use crate::error::{Error, Result};

const NONE: usize = usize::MAX;

#[derive(Clone, Copy, Debug)]
struct Node {
    parents: [(usize, f64); 2],
}

/// Append-only record of scalar operations for reverse-mode differentiation.
#[derive(Debug, Default)]
pub struct Tape {
    nodes: RefCell<Vec<Node>>,
}

impl Tape {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.nodes.borrow().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// A fresh independent variable.
    pub fn var(&self, value: f64) -> Var<'_> {
        self.push(value, [(NONE, 0.0), (NONE, 0.0)])
    }

    fn push(&self, val: f64, parents: [(usize, f64); 2]) -> Var<'_> {
        let mut nodes = self.nodes.borrow_mut();
        nodes.push(Node { parents });
        Var { tape: Some(self), idx: nodes.len() - 1, val }
    }

    /// Adjoints of every tape entry with respect to `output`.
    pub fn gradient(&self, output: Var<'_>) -> Vec<f64> {
        let nodes = self.nodes.borrow();
        let mut adj = vec![0.0; nodes.len()];
        if output.tape.is_none() {
            return adj;
        }
        adj[output.idx] = 1.0;
        for i in (0..=output.idx).rev() {
            let a = adj[i];
            if a == 0.0 {
                continue;
            }
            for &(p, w) in &nodes[i].parents {
                if p != NONE {
                    adj[p] += a * w;
                }
            }
        }
        adj
    }
}

/// A scalar on a [`Tape`], or a tape-free constant.
#[derive(Clone, Copy)]
pub struct Var<'t> {
    tape: Option<&'t Tape>,
    idx: usize,
    val: f64,
}

impl std::fmt::Debug for Var<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.tape {
            Some(_) => write!(f, "Var(#{}: {})", self.idx, self.val),
            None => write!(f, "Const({})", self.val),
        }
    }
}

impl<'t> Var<'t> {
    pub fn constant(val: f64) -> Self {
        Self { tape: None, idx: NONE, val }
    }

    fn unary(self, val: f64, partial: f64) -> Self {
        match self.tape {
            Some(t) => t.push(val, [(self.idx, partial), (NONE, 0.0)]),
            None => Var::constant(val),
        }
    }

    fn binary(self, rhs: Self, val: f64, da: f64, db: f64) -> Self {
        match (self.tape, rhs.tape) {
            (Some(t), Some(_)) => t.push(val, [(self.idx, da), (rhs.idx, db)]),
            (Some(_), None) => self.unary(val, da),
            (None, Some(_)) => rhs.unary(val, db),
            (None, None) => Var::constant(val),
        }
    }
}

impl Add for Var<'_> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.binary(rhs, self.val + rhs.val, 1.0, 1.0)
    }
}

impl Sub for Var<'_> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.binary(rhs, self.val - rhs.val, 1.0, -1.0)
    }
}

impl Mul for Var<'_> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.binary(rhs, self.val * rhs.val, rhs.val, self.val)
    }
}

impl Neg for Var<'_> {
    type Output = Self;
    fn neg(self) -> Self {
        self.unary(-self.val, -1.0)
    }
}

impl Scalar for Var<'_> {
    fn from_f64(c: f64) -> Self {
        Var::constant(c)
    }
    fn value(&self) -> f64 {
        self.val
    }
    fn scale(self, c: f64) -> Self {
        self.unary(self.val * c, c)
    }
    fn tanh(self) -> Self {
        let t = self.val.tanh();
        self.unary(t, 1.0 - t * t)
    }
    fn exp(self) -> Self {
        let e = self.val.exp();
        self.unary(e, e)
    }
    fn sin(self) -> Self {
        self.unary(self.val.sin(), self.val.cos())
    }
    fn cos(self) -> Self {
        self.unary(self.val.cos(), -self.val.sin())
    }
    fn recip(self) -> Self {
        let r = 1.0 / self.val;
        self.unary(r, -r * r)
    }
    fn ln(self) -> Self {
        self.unary(self.val.ln(), 1.0 / self.val)
    }
    fn sqrt(self) -> Self {
        let q = self.val.sqrt();
        self.unary(q, 0.5 / q)
    }
}

/// Gradient of a scalar loss with respect to every entry of `theta`.
///
/// The closure receives the parameters as tape variables and must build the
/// loss from [`Scalar`] operations only; jets over `Var` are differentiated
/// through all of their channels.
pub fn grad_params<F>(loss_eval: F, theta: &[f64]) -> Result<Vec<f64>>
where
    F: for<'t> FnOnce(&[Var<'t>]) -> Var<'t>,
{
    let tape = Tape::new();
    let vars: Vec<Var<'_>> = theta.iter().map(|&t| tape.var(t)).collect();
    let loss = loss_eval(&vars);
    if !loss.val.is_finite() {
        return Err(Error::NonFinite(format!("loss = {}", loss.val)));
    }
    let adj = tape.gradient(loss);
    Ok(vars.iter().map(|v| adj[v.idx]).collect())
}
