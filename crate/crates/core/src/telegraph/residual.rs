use serde::{Deserialize, Serialize};

use super::TelegraphProblem;
use crate::autodiff::Jet2;
use crate::error::{Error, Result};
use crate::network::{forward, Architecture, ParamSet};
use crate::sampler::{sample_boundary, sample_interior, sample_test, SampleSpec};

/// Candidate solution at `t3`: a value and directional jets in space.
pub trait Solution {
    fn value(&self, x: &[f64]) -> Result<f64>;
    fn jet(&self, x: &[f64], dir: usize) -> Result<Jet2>;
}

pub struct NetworkSolution<'a> {
    pub arch: &'a Architecture,
    pub params: &'a ParamSet,
}

impl Solution for NetworkSolution<'_> {
    fn value(&self, x: &[f64]) -> Result<f64> {
        Ok(forward(self.arch, self.params, x, None)?.v)
    }
    fn jet(&self, x: &[f64], dir: usize) -> Result<Jet2> {
        forward(self.arch, self.params, x, Some(dir))
    }
}

/// The problem's closed-form solution at `t3`, standing in for the network.
pub struct ExactSolution<'a>(pub &'a TelegraphProblem);

impl Solution for ExactSolution<'_> {
    fn value(&self, x: &[f64]) -> Result<f64> {
        self.0.exact_t3(x).ok_or_else(|| Error::Config("problem has no exact solution".into()))
    }
    fn jet(&self, x: &[f64], dir: usize) -> Result<Jet2> {
        self.0.exact_jet_t3(x, dir).ok_or_else(|| Error::Config("problem has no exact solution".into()))
    }
}

/// `N = -c û + Σ_i ∂²û/∂x_i² + f(x, t3)`.
pub fn spatial_operator_n(problem: &TelegraphProblem, u: &impl Solution, x: &[f64]) -> Result<f64> {
    let mut value = None;
    let mut lap = 0.0;
    for dir in 0..problem.dim() {
        let j = u.jet(x, dir)?;
        value.get_or_insert(j.v);
        lap += j.d2;
    }
    let v = value.expect("dimension is at least 1");
    let n = -problem.damping_u * v + lap + problem.source_t3(x);
    if !n.is_finite() {
        return Err(Error::NonFinite(format!("spatial operator at {x:?}")));
    }
    Ok(n)
}

/// Time-discretized residual at `x`, with `û` at `t3` and the known
/// snapshots at `t2` and `t1`.
pub fn residual(problem: &TelegraphProblem, u: &impl Solution, x: &[f64]) -> Result<f64> {
    let dt = problem.dt();
    let a = problem.alpha;
    let u3 = u.value(x)?;
    let u2 = problem.u_t2(x)?;
    let u1 = problem.u_t1(x)?;
    let n = spatial_operator_n(problem, u, x)?;
    Ok((1.0 + 2.0 * a * dt) * u3 - 2.0 * (1.0 + a * dt) * u2 + u1 - dt * dt * n)
}

/// Training and reporting points for one run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CollocationSet {
    pub interior: Vec<Vec<f64>>,
    pub boundary: Vec<Vec<f64>>,
    pub test: Vec<Vec<f64>>,
}

impl CollocationSet {
    pub fn sample(problem: &TelegraphProblem, spec: &SampleSpec) -> Result<Self> {
        spec.validate()?;
        Ok(CollocationSet {
            interior: sample_interior(spec, &problem.domain),
            boundary: sample_boundary(spec, &problem.domain),
            test: sample_test(spec, &problem.domain),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LossReport {
    pub mse_res: f64,
    pub mse_bc: f64,
    pub total: f64,
}

/// Weight of each squared boundary mismatch: the two endpoint terms are
/// summed in 1D, sampled edge points are averaged in 2D.
pub(crate) fn boundary_weight(dim: usize, n_boundary: usize) -> f64 {
    if dim == 1 {
        1.0
    } else {
        1.0 / n_boundary as f64
    }
}

/// `mean(Res²)` over the interior points plus the Dirichlet mismatch.
pub fn loss(problem: &TelegraphProblem, u: &impl Solution, points: &CollocationSet) -> Result<LossReport> {
    if points.interior.is_empty() {
        return Err(Error::EmptySet("interior points"));
    }
    if points.boundary.is_empty() {
        return Err(Error::EmptySet("boundary points"));
    }
    let mut sum = 0.0;
    for x in &points.interior {
        sum += residual(problem, u, x)?.powi(2);
    }
    let mse_res = sum / points.interior.len() as f64;
    let mut bc = 0.0;
    for x in &points.boundary {
        bc += (u.value(x)? - problem.boundary_t3(x)).powi(2);
    }
    let mse_bc = bc * boundary_weight(problem.dim(), points.boundary.len());
    let total = mse_res + mse_bc;
    if !total.is_finite() {
        return Err(Error::NonFinite("loss".into()));
    }
    Ok(LossReport { mse_res, mse_bc, total })
}
