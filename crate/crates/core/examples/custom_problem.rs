//! A user-defined telegraph problem given as JSON, solved with a Jacobi
//! first layer.
//!
//! ```sh
//! cargo run --release --example custom_problem
//! ```

use jdnn::experiment::{run_example, RunConfig};

const CONFIG: &str = r#"{
    "example": "custom",
    "problem": {
        "name": "standing wave",
        "alpha": 0.25,
        "damping_u": 0.0,
        "domain": {"lo": [0.0], "hi": [1.0]},
        "t1": 0.0,
        "t2": 0.05,
        "t3": 0.1,
        "source": "(pi^2 + 0.5) * sin(pi * x) * exp(-t)",
        "exact": "sin(pi * x) * exp(-t)"
    },
    "family": "jacobi:1:1",
    "widths": [1, 6, 16, 16, 1],
    "n_interior": 80,
    "adam": {"max_iters": 1000},
    "lbfgs": {"max_iters": 1500}
}"#;

fn main() -> jdnn::Result<()> {
    let cfg = RunConfig::from_json(CONFIG, None)?;
    let bundle = run_example(&cfg)?;
    let v = &bundle.jdnn;
    println!("{}: {} on {}", bundle.spec.name, cfg.family, v.arch.layers_label());
    println!("loss {:.3e}, test relative L2 {:.3e}, grid Linf {:.3e}", v.loss.total, v.test.rel_l2, v.grid.linf);
    println!("resolved config:\n{}", serde_json::to_string_pretty(&bundle.config)?);
    Ok(())
}
