//! Spatial derivatives of a network by forward-mode jets and parameter
//! gradients of a physics loss, checked against each other and against
//! finite differences.
//!
//! ```sh
//! cargo run --example derivatives
//! ```

use jdnn::autodiff::{grad_params, Jet2, Var};
use jdnn::network::{forward, forward_generic, init_params, Architecture};
use jdnn::orthopoly::PolyFamily;
use jdnn::sampler::SampleSpec;
use jdnn::telegraph::{example_problem, CollocationSet, Objective, TelegraphProblem};

fn main() -> jdnn::Result<()> {
    let problem = TelegraphProblem::from_spec(&example_problem(2)?)?;
    let arch = Architecture::jdnn(vec![1, 4, 8, 1], PolyFamily::Legendre, problem.domain.clone())?;
    let params = init_params(&arch, 7);

    let x = 0.37;
    let jet = forward(&arch, &params, &[x], Some(0))?;
    let h = 1e-4;
    let f = |x: f64| forward(&arch, &params, &[x], None).map(|j| j.v);
    let fd1 = (f(x + h)? - f(x - h)?) / (2.0 * h);
    let fd2 = (f(x + h)? - 2.0 * f(x)? + f(x - h)?) / (h * h);
    println!("u({x}) = {:.12}", jet.v);
    println!("u'  jet {:+.12}  fd {:+.12}", jet.d1, fd1);
    println!("u'' jet {:+.12}  fd {:+.12}", jet.d2, fd2);

    // gradient of the squared second derivative through the reverse tape
    let theta = params.flatten();
    let g = grad_params(
        |th| {
            let lifted: Vec<Jet2<Var>> = th.iter().map(|&v| Jet2::constant(v)).collect();
            let out = forward_generic(&arch, &lifted, &[Jet2::seed(Var::constant(x))]).expect("valid network");
            out.d2 * out.d2
        },
        &theta,
    )?;
    println!("\nd(u''^2)/dθ via tape, first 4 of {}: {:?}", g.len(), &g[..4]);

    let points = CollocationSet::sample(
        &problem,
        &SampleSpec { seed: 3, n_interior: 20, n_boundary: 1, n_test: 5, grid_shape: None },
    )?;
    let objective = Objective::new(&problem, &arch, &points)?;
    let (loss, grad) = objective.loss_and_grad(&theta)?;
    let k = 5;
    let mut bumped = theta.clone();
    bumped[k] += 1e-6;
    let mut dipped = theta.clone();
    dipped[k] -= 1e-6;
    let fd = (objective.loss(&bumped)?.total - objective.loss(&dipped)?.total) / 2e-6;
    println!("\nloss {:.6e} (residual {:.3e}, boundary {:.3e})", loss.total, loss.mse_res, loss.mse_bc);
    println!("dL/dθ[{k}] backprop {:+.10e}  fd {:+.10e}", grad[k], fd);
    Ok(())
}
