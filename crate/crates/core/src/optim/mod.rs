//! Full-batch Adam and L-BFGS over a flat parameter vector.
//!
//! Both optimizers take a callback returning the loss and its gradient and
//! record every evaluated iterate in a [`TrainTrace`], keeping the best-loss
//! parameters as the result checkpoint.

mod adam;
mod lbfgs;
mod line_search;
mod trace;

pub use adam::{adam_into, adam_run, AdamConfig};
pub use lbfgs::{lbfgs_into, lbfgs_run, LbfgsConfig};
pub use line_search::{strong_wolfe, Accepted, LineSearchConfig, LineStep};
pub use trace::{Phase, Termination, TrainTrace, TRACE_CSV_HEADER};

use crate::error::Result;

/// Loss and gradient at a parameter vector.
pub trait LossGrad {
    fn eval(&mut self, theta: &[f64]) -> Result<(f64, Vec<f64>)>;
}

impl<F> LossGrad for F
where
    F: FnMut(&[f64]) -> Result<(f64, Vec<f64>)>,
{
    fn eval(&mut self, theta: &[f64]) -> Result<(f64, Vec<f64>)> {
        self(theta)
    }
}

/// Adam for `adam.max_iters` steps, then L-BFGS from the Adam iterate.
///
/// Returns the best parameters seen in either phase and the combined trace.
pub fn adam_then_lbfgs<F: LossGrad>(
    f: &mut F,
    theta0: &[f64],
    adam: &AdamConfig,
    lbfgs: &LbfgsConfig,
    trace: &mut TrainTrace,
) -> Result<Vec<f64>> {
    let theta = if adam.max_iters > 0 { adam_into(f, theta0, adam, trace)? } else { theta0.to_vec() };
    lbfgs_into(f, &theta, lbfgs, trace)?;
    Ok(trace.best_theta.clone())
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm_inf(a: &[f64]) -> f64 {
    a.iter().fold(0.0, |m, v| m.max(v.abs()))
}
