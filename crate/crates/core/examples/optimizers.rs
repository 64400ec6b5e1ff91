//! Adam and L-BFGS on the Rosenbrock function, with the strong-Wolfe data
//! of every accepted line-search step.
//!
//! ```sh
//! cargo run --example optimizers
//! ```

use jdnn::optim::{adam_run, lbfgs_run, AdamConfig, LbfgsConfig};

fn rosenbrock(t: &[f64]) -> jdnn::Result<(f64, Vec<f64>)> {
    let (x, y) = (t[0], t[1]);
    let f = (1.0 - x).powi(2) + 100.0 * (y - x * x).powi(2);
    Ok((f, vec![-2.0 * (1.0 - x) - 400.0 * x * (y - x * x), 200.0 * (y - x * x)]))
}

fn main() -> jdnn::Result<()> {
    let start = [-1.2, 1.0];

    let adam = AdamConfig { lr: 1e-2, max_iters: 5000, ..Default::default() };
    let (theta, trace) = adam_run(rosenbrock, &start, &adam)?;
    println!("Adam   {} steps: theta = ({:.6}, {:.6}), best loss {:.3e}", trace.len(), theta[0], theta[1], trace.best_loss);

    let cfg = LbfgsConfig::default();
    let (theta, trace, iters) = lbfgs_run(rosenbrock, &start, &cfg)?;
    println!(
        "L-BFGS {iters} iterations, {} evaluations: theta = ({:.12}, {:.12}), {:?}",
        trace.evaluations, theta[0], theta[1], trace.termination
    );

    let c = &cfg.line_search;
    println!("\n  k  alpha        f(alpha)      slope(0)      slope(alpha)  wolfe");
    for (k, s) in trace.steps.iter().enumerate().take(12) {
        println!(
            "{k:>3}  {:<11.4e}  {:<12.5e}  {:<+12.4e}  {:<+12.4e}  {}",
            s.alpha,
            s.f_alpha,
            s.slope0,
            s.slope_alpha,
            s.strong_wolfe(c.c1, c.c2)
        );
    }
    let ok = trace.steps.iter().all(|s| s.strong_wolfe(c.c1, c.c2));
    println!("... all {} accepted steps satisfy strong Wolfe: {ok}", trace.steps.len());

    let mut csv = Vec::new();
    trace.write_csv(&mut csv)?;
    println!("\ntrace CSV head:\n{}", String::from_utf8_lossy(&csv).lines().take(4).collect::<Vec<_>>().join("\n"));
    Ok(())
}
