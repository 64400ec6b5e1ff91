use super::residual::boundary_weight;
use super::{CollocationSet, LossReport, TelegraphProblem};
use crate::error::{Error, Result};
use crate::network::{Architecture, BatchNetwork, OutputGrad};

/// Problem data that stays fixed during training, tabulated per point.
#[derive(Clone, Debug)]
pub struct PointData {
    pub points: Vec<Vec<f64>>,
    pub u_t1: Vec<f64>,
    pub u_t2: Vec<f64>,
    pub source_t3: Vec<f64>,
}

impl PointData {
    pub fn new(problem: &TelegraphProblem, points: &[Vec<f64>]) -> Result<Self> {
        let mut data = PointData {
            points: points.to_vec(),
            u_t1: Vec::with_capacity(points.len()),
            u_t2: Vec::with_capacity(points.len()),
            source_t3: Vec::with_capacity(points.len()),
        };
        for x in points {
            data.u_t1.push(problem.u_t1(x)?);
            data.u_t2.push(problem.u_t2(x)?);
            data.source_t3.push(problem.source_t3(x));
        }
        Ok(data)
    }
}

/// The training loss over fixed collocation points, evaluated in batch.
pub struct Objective<'a> {
    problem: &'a TelegraphProblem,
    net: BatchNetwork<'a>,
    interior: PointData,
    boundary: Vec<Vec<f64>>,
    boundary_target: Vec<f64>,
}

impl<'a> Objective<'a> {
    pub fn new(problem: &'a TelegraphProblem, arch: &'a Architecture, points: &CollocationSet) -> Result<Self> {
        if points.interior.is_empty() {
            return Err(Error::EmptySet("interior points"));
        }
        if points.boundary.is_empty() {
            return Err(Error::EmptySet("boundary points"));
        }
        if arch.input_dim() != problem.dim() {
            return Err(Error::Shape(format!("{}D network for a {}D problem", arch.input_dim(), problem.dim())));
        }
        Ok(Objective {
            problem,
            net: BatchNetwork::new(arch),
            interior: PointData::new(problem, &points.interior)?,
            boundary: points.boundary.clone(),
            boundary_target: points.boundary.iter().map(|x| problem.boundary_t3(x)).collect(),
        })
    }

    /// `(d Res / d û, d Res / d ∂²û)`.
    fn sensitivities(&self) -> (f64, f64) {
        let dt = self.problem.dt();
        (1.0 + 2.0 * self.problem.alpha * dt + dt * dt * self.problem.damping_u, -dt * dt)
    }

    /// Residuals at arbitrary points for the given parameters.
    pub fn residuals_at(&self, params: &[f64], data: &PointData) -> Result<Vec<f64>> {
        let dim = self.problem.dim();
        let out = self.net.forward(params, &data.points, dim)?;
        let dt = self.problem.dt();
        let a = self.problem.alpha;
        Ok((0..data.points.len())
            .map(|i| {
                let u3 = out.value(i);
                let lap: f64 = (0..dim).map(|k| out.d2(k, i)).sum();
                let n = -self.problem.damping_u * u3 + lap + data.source_t3[i];
                (1.0 + 2.0 * a * dt) * u3 - 2.0 * (1.0 + a * dt) * data.u_t2[i] + data.u_t1[i] - dt * dt * n
            })
            .collect())
    }

    pub fn residuals(&self, params: &[f64]) -> Result<Vec<f64>> {
        self.residuals_at(params, &self.interior)
    }

    pub fn loss(&self, params: &[f64]) -> Result<LossReport> {
        let res = self.residuals(params)?;
        let bout = self.net.forward(params, &self.boundary, 0)?;
        self.report(&res, &bout.values())
    }

    fn report(&self, res: &[f64], boundary_values: &[f64]) -> Result<LossReport> {
        let mse_res = res.iter().map(|r| r * r).sum::<f64>() / res.len() as f64;
        let bc: f64 = boundary_values.iter().zip(&self.boundary_target).map(|(u, g)| (u - g).powi(2)).sum();
        let mse_bc = bc * boundary_weight(self.problem.dim(), self.boundary.len());
        let total = mse_res + mse_bc;
        if !total.is_finite() {
            return Err(Error::NonFinite("loss".into()));
        }
        Ok(LossReport { mse_res, mse_bc, total })
    }

    /// Loss and its exact gradient with respect to the flat parameters.
    pub fn loss_and_grad(&self, params: &[f64]) -> Result<(LossReport, Vec<f64>)> {
        let dim = self.problem.dim();
        let n = self.interior.points.len();
        let fwd = self.net.forward(params, &self.interior.points, dim)?;
        let res = {
            let dt = self.problem.dt();
            let a = self.problem.alpha;
            (0..n)
                .map(|i| {
                    let u3 = fwd.value(i);
                    let lap: f64 = (0..dim).map(|k| fwd.d2(k, i)).sum();
                    let nn = -self.problem.damping_u * u3 + lap + self.interior.source_t3[i];
                    (1.0 + 2.0 * a * dt) * u3 - 2.0 * (1.0 + a * dt) * self.interior.u_t2[i] + self.interior.u_t1[i]
                        - dt * dt * nn
                })
                .collect::<Vec<f64>>()
        };
        let bfwd = self.net.forward(params, &self.boundary, 0)?;
        let bvals = bfwd.values();
        let report = self.report(&res, &bvals)?;

        let (du, dlap) = self.sensitivities();
        let scale = 2.0 / n as f64;
        let g_res: Vec<f64> = res.iter().map(|r| scale * r).collect();
        let grad_interior = OutputGrad {
            value: g_res.iter().map(|g| g * du).collect(),
            d1: vec![vec![0.0; n]; dim],
            d2: vec![g_res.iter().map(|g| g * dlap).collect(); dim],
        };
        let mut grad = self.net.backward(params, &fwd, &grad_interior)?;

        let w = boundary_weight(dim, self.boundary.len());
        let grad_boundary = OutputGrad {
            value: bvals.iter().zip(&self.boundary_target).map(|(u, g)| 2.0 * w * (u - g)).collect(),
            d1: vec![],
            d2: vec![],
        };
        let gb = self.net.backward(params, &bfwd, &grad_boundary)?;
        for (a, b) in grad.iter_mut().zip(&gb) {
            *a += b;
        }
        Ok((report, grad))
    }
}
