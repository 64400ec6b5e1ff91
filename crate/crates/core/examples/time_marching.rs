//! March Example 2 forward in time: each trained network becomes the newest
//! snapshot of the next step.
//!
//! ```sh
//! cargo run --release --example time_marching
//! ```

use jdnn::metrics::error_report;
use jdnn::network::{init_params, Architecture, ParamSet};
use jdnn::optim::{adam_then_lbfgs, AdamConfig, LbfgsConfig, TrainTrace};
use jdnn::orthopoly::PolyFamily;
use jdnn::sampler::{report_grid, SampleSpec};
use jdnn::telegraph::{example_problem, CollocationSet, NetworkSolution, Objective, Solution, TelegraphProblem};

fn main() -> jdnn::Result<()> {
    let mut problem = TelegraphProblem::from_spec(&example_problem(2)?)?;
    let arch = Architecture::jdnn(vec![1, 6, 20, 20, 1], PolyFamily::Legendre, problem.domain.clone())?;
    let grid = report_grid(&problem.domain, &[51])?;
    let adam = AdamConfig { max_iters: 1000, ..Default::default() };
    let lbfgs = LbfgsConfig { max_iters: 1500, ..Default::default() };

    for step in 0..4u64 {
        let spec = SampleSpec { seed: 10 + step, n_interior: 100, n_boundary: 1, n_test: 10, grid_shape: None };
        let points = CollocationSet::sample(&problem, &spec)?;
        let objective = Objective::new(&problem, &arch, &points)?;
        let mut f = |th: &[f64]| objective.loss_and_grad(th).map(|(l, g)| (l.total, g));
        let mut trace = TrainTrace::new();
        let theta = adam_then_lbfgs(&mut f, init_params(&arch, step).as_slice(), &adam, &lbfgs, &mut trace)?;
        let params = ParamSet::unflatten(&arch, theta)?;

        let sol = NetworkSolution { arch: &arch, params: &params };
        let exact: Vec<f64> = grid.iter().map(|x| problem.exact_t3(x).unwrap_or(f64::NAN)).collect();
        let pred = grid.iter().map(|x| sol.value(x)).collect::<jdnn::Result<Vec<f64>>>()?;
        let r = error_report(&exact, &pred)?;
        println!("t = {:.1}: loss {:.3e}, grid rel L2 {:.3e}, Linf {:.3e}", problem.t3, trace.best_loss, r.rel_l2, r.linf);
        problem = problem.advanced(&arch, &params);
    }
    Ok(())
}
