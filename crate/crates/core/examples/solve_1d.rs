//! Train the JDNN on the 1D benchmarks and print the error tables.
//!
//! ```sh
//! cargo run --release --example solve_1d -- 1
//! cargo run --release --example solve_1d -- 2
//! ```

use jdnn::experiment::{run_example, RunConfig};

fn main() -> jdnn::Result<()> {
    let example: u8 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(2);
    if !(1..=2).contains(&example) {
        return Err(jdnn::Error::Config(format!("1D examples are 1 and 2, got {example}")));
    }
    let cfg = RunConfig::preset(example)?;
    println!("example {example}: {} with {} first-layer polynomials", cfg.family, cfg.widths[1]);
    let bundle = run_example(&cfg)?;
    let v = &bundle.jdnn;
    println!(
        "adam {} + lbfgs {} iterations, best loss {:.3e} ({:?})",
        v.adam_iterations(),
        v.lbfgs_iterations(),
        v.trace.best_loss,
        v.trace.termination
    );
    println!("relative L2: train {:.4e}  test {:.4e}", v.train.rel_l2, v.test.rel_l2);
    println!("grid of {}: Linf {:.4e}  L2 {:.4e}  RMS {:.4e}", v.grid.n_points, v.grid.linf, v.grid.l2, v.grid.rms);

    println!("\n     x        exact          JDNN           |Res|");
    for i in (0..bundle.grid.len()).step_by(10) {
        println!(
            "{:>6.2}  {:>13.8}  {:>13.8}  {:.3e}",
            bundle.grid[i][0], bundle.u_exact_grid[i], v.field.u_pred[i], v.field.abs_residual[i]
        );
    }
    Ok(())
}
