use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::line_search::{search, LineSearchConfig};
use super::{dot, norm_inf, LossGrad, Phase, Termination, TrainTrace};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LbfgsConfig {
    pub memory: usize,
    pub grad_tol: f64,
    pub rel_loss_tol: f64,
    pub max_iters: usize,
    pub line_search: LineSearchConfig,
}

impl Default for LbfgsConfig {
    fn default() -> Self {
        LbfgsConfig {
            memory: 10,
            grad_tol: 1e-9,
            rel_loss_tol: 1e-12,
            max_iters: 50_000,
            line_search: LineSearchConfig::default(),
        }
    }
}

impl LbfgsConfig {
    pub fn validate(&self) -> Result<()> {
        if self.memory == 0 {
            return Err(Error::Config("lbfgs memory must be at least 1".into()));
        }
        if !(self.grad_tol >= 0.0) || !(self.rel_loss_tol >= 0.0) {
            return Err(Error::Config("lbfgs tolerances must be non-negative".into()));
        }
        self.line_search.validate()
    }
}

struct History {
    pairs: VecDeque<(Vec<f64>, Vec<f64>, f64)>,
    memory: usize,
}

impl History {
    fn push(&mut self, s: Vec<f64>, y: Vec<f64>) {
        let sy = dot(&s, &y);
        if sy <= 1e-12 * dot(&y, &y).sqrt() * dot(&s, &s).sqrt() {
            return;
        }
        if self.pairs.len() == self.memory {
            self.pairs.pop_front();
        }
        self.pairs.push_back((s, y, 1.0 / sy));
    }

    /// `-H g` by the two-loop recursion.
    fn direction(&self, g: &[f64]) -> Vec<f64> {
        let mut q: Vec<f64> = g.to_vec();
        let mut alphas = Vec::with_capacity(self.pairs.len());
        for (s, y, rho) in self.pairs.iter().rev() {
            let a = rho * dot(s, &q);
            q.iter_mut().zip(y).for_each(|(qi, yi)| *qi -= a * yi);
            alphas.push(a);
        }
        if let Some((s, y, _)) = self.pairs.back() {
            let gamma = dot(s, y) / dot(y, y);
            q.iter_mut().for_each(|qi| *qi *= gamma);
        }
        for ((s, y, rho), a) in self.pairs.iter().zip(alphas.iter().rev()) {
            let b = rho * dot(y, &q);
            q.iter_mut().zip(s).for_each(|(qi, si)| *qi += (a - b) * si);
        }
        q.iter_mut().for_each(|qi| *qi = -*qi);
        q
    }
}

/// Unconstrained L-BFGS with a strong-Wolfe line search, logging into an
/// existing trace.
///
/// The starting point is recorded as the first L-BFGS entry, so a run that
/// stops immediately adds one entry and zero iterations. Returns the number
/// of iterations taken; the best parameters are in `trace.best_theta`.
pub fn lbfgs_into<F: LossGrad>(f: &mut F, theta0: &[f64], cfg: &LbfgsConfig, trace: &mut TrainTrace) -> Result<usize> {
    cfg.validate()?;
    let (mut fx, mut g) = f.eval(theta0)?;
    trace.evaluations += 1;
    if !fx.is_finite() || g.iter().any(|v| !v.is_finite()) {
        trace.termination = Termination::Diverged;
        return Err(Error::Diverged { iteration: 0, loss: fx });
    }
    let mut theta = theta0.to_vec();
    trace.push(Phase::Lbfgs, fx, &theta);
    let mut hist = History { pairs: VecDeque::new(), memory: cfg.memory };

    let mut iters = 0;
    trace.termination = Termination::MaxIterations;
    while iters < cfg.max_iters {
        if norm_inf(&g) <= cfg.grad_tol {
            trace.termination = Termination::GradientTolerance;
            break;
        }
        let mut dir = hist.direction(&g);
        if !(dot(&dir, &g) < 0.0) {
            hist.pairs.clear();
            dir = g.iter().map(|v| -v).collect();
        }
        let alpha0 = if hist.pairs.is_empty() { (1.0 / norm_inf(&g)).min(1.0) } else { 1.0 };
        let mut found = search(f, &theta, fx, &g, &dir, alpha0, &cfg.line_search)?;
        if found.is_none() && !hist.pairs.is_empty() {
            hist.pairs.clear();
            let sd: Vec<f64> = g.iter().map(|v| -v).collect();
            let a0 = (1.0 / norm_inf(&g)).min(1.0);
            found = search(f, &theta, fx, &g, &sd, a0, &cfg.line_search)?;
        }
        let Some(acc) = found else {
            trace.termination = Termination::LineSearchFailed;
            break;
        };
        trace.evaluations += acc.evals;
        iters += 1;
        let s: Vec<f64> = acc.theta.iter().zip(&theta).map(|(a, b)| a - b).collect();
        let y: Vec<f64> = acc.grad.iter().zip(&g).map(|(a, b)| a - b).collect();
        hist.push(s, y);
        let f_old = fx;
        fx = acc.step.f_alpha;
        theta = acc.theta;
        g = acc.grad;
        trace.push(Phase::Lbfgs, fx, &theta);
        trace.steps.push(acc.step);
        if f_old - fx <= cfg.rel_loss_tol * f_old.abs() {
            trace.termination = if norm_inf(&g) <= cfg.grad_tol {
                Termination::GradientTolerance
            } else {
                Termination::LossStagnation
            };
            break;
        }
    }
    Ok(iters)
}

pub fn lbfgs_run<F: LossGrad>(mut f: F, theta0: &[f64], cfg: &LbfgsConfig) -> Result<(Vec<f64>, TrainTrace, usize)> {
    let mut trace = TrainTrace::new();
    let iters = lbfgs_into(&mut f, theta0, cfg, &mut trace)?;
    Ok((trace.best_theta.clone(), trace, iters))
}
