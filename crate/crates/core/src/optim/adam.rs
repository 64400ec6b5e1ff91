use serde::{Deserialize, Serialize};

use super::{LossGrad, Phase, Termination, TrainTrace};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AdamConfig {
    pub lr: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub eps: f64,
    pub max_iters: usize,
}

impl Default for AdamConfig {
    fn default() -> Self {
        AdamConfig { lr: 1e-3, beta1: 0.9, beta2: 0.999, eps: 1e-8, max_iters: 5000 }
    }
}

impl AdamConfig {
    pub fn validate(&self) -> Result<()> {
        let unit = |b: f64| b > 0.0 && b < 1.0;
        if !(self.lr > 0.0 && self.lr.is_finite()) {
            return Err(Error::Config(format!("adam lr must be positive, got {}", self.lr)));
        }
        if !unit(self.beta1) || !unit(self.beta2) {
            return Err(Error::Config(format!("adam betas must lie in (0,1), got {} and {}", self.beta1, self.beta2)));
        }
        if !(self.eps > 0.0) {
            return Err(Error::Config(format!("adam eps must be positive, got {}", self.eps)));
        }
        Ok(())
    }
}

/// Bias-corrected Adam, logging into an existing trace.
///
/// Exactly `max_iters` losses are appended (one per update) and the iterate
/// after the final update is returned.
pub fn adam_into<F: LossGrad>(f: &mut F, theta0: &[f64], cfg: &AdamConfig, trace: &mut TrainTrace) -> Result<Vec<f64>> {
    cfg.validate()?;
    let mut theta = theta0.to_vec();
    let mut m = vec![0.0; theta.len()];
    let mut v = vec![0.0; theta.len()];
    let (mut b1t, mut b2t) = (1.0, 1.0);
    for it in 0..cfg.max_iters {
        let (loss, grad) = match f.eval(&theta) {
            Ok(r) => r,
            Err(Error::NonFinite(_)) => (f64::NAN, Vec::new()),
            Err(e) => return Err(e),
        };
        trace.evaluations += 1;
        if !loss.is_finite() || grad.iter().any(|g| !g.is_finite()) {
            trace.termination = Termination::Diverged;
            return Err(Error::Diverged { iteration: it, loss });
        }
        if grad.len() != theta.len() {
            return Err(Error::LengthMismatch(theta.len(), grad.len()));
        }
        trace.push(Phase::Adam, loss, &theta);
        b1t *= cfg.beta1;
        b2t *= cfg.beta2;
        for i in 0..theta.len() {
            m[i] = cfg.beta1 * m[i] + (1.0 - cfg.beta1) * grad[i];
            v[i] = cfg.beta2 * v[i] + (1.0 - cfg.beta2) * grad[i] * grad[i];
            let mhat = m[i] / (1.0 - b1t);
            let vhat = v[i] / (1.0 - b2t);
            theta[i] -= cfg.lr * mhat / (vhat.sqrt() + cfg.eps);
        }
    }
    trace.termination = Termination::MaxIterations;
    Ok(theta)
}

pub fn adam_run<F: LossGrad>(mut f: F, theta0: &[f64], cfg: &AdamConfig) -> Result<(Vec<f64>, TrainTrace)> {
    let mut trace = TrainTrace::new();
    let theta = adam_into(&mut f, theta0, cfg, &mut trace)?;
    Ok((theta, trace))
}
