//! Train the JDNN on a 2D benchmark and write the plot-ready outputs.
//!
//! ```sh
//! cargo run --release --example solve_2d -- 4 runs/example4
//! ```

use std::path::PathBuf;

use jdnn::experiment::{run_checks, run_example, write_outputs, RunConfig};

fn main() -> jdnn::Result<()> {
    let mut args = std::env::args().skip(1);
    let example: u8 = args.next().and_then(|s| s.parse().ok()).unwrap_or(4);
    let out = PathBuf::from(args.next().unwrap_or_else(|| format!("runs/example{example}")));
    if !(3..=4).contains(&example) {
        return Err(jdnn::Error::Config(format!("2D examples are 3 and 4, got {example}")));
    }
    let cfg = RunConfig::preset(example)?;
    let bundle = run_example(&cfg)?;
    write_outputs(&bundle, &out)?;

    let v = &bundle.jdnn;
    println!("{} parameters, {} loss evaluations", v.arch.n_params(), v.trace.evaluations);
    println!("test relative L2 {:.4e}, grid Linf {:.4e}", v.test.rel_l2, v.grid.linf);
    for c in run_checks(&bundle) {
        println!("  {:<40} {:>11.4e}  <= {:.1e}  {}", c.name, c.value, c.threshold, if c.passed { "ok" } else { "missed" });
    }
    println!("field.csv ({} grid points) and traces written to {}", bundle.grid.len(), out.display());
    Ok(())
}
