use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use jdnn::experiment::{run_checks, run_example, write_outputs, ExampleId, RunConfig, RUN_CONFIG_SCHEMA};
use jdnn::orthopoly::PolyFamily;

#[derive(Parser)]
#[command(name = "jdnn", version, about = "Telegraph equation solver with orthogonal-polynomial networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Train on one benchmark example and write reports.
    ///
    /// Values come from the example preset, then the config file, then
    /// these flags, later sources winning.
    Solve(SolveArgs),
    /// Print the JSON schema of config files.
    Schema,
}

#[derive(clap::Args)]
struct SolveArgs {
    /// Benchmark example 1-4 (overrides the config file's `example`).
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
    example: Option<u8>,
    #[arg(long)]
    seed: Option<u64>,
    /// legendre, chebyshev1 or jacobi:ALPHA:BETA
    #[arg(long, value_parser = parse_family)]
    family: Option<PolyFamily>,
    /// Comma-separated layer widths, input first.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    widths: Option<Vec<usize>>,
    #[arg(long)]
    adam_iters: Option<usize>,
    #[arg(long)]
    lbfgs_iters: Option<usize>,
    /// Also train the tanh-only twin on the same points.
    #[arg(long)]
    baseline: bool,
    /// Exit nonzero if an accuracy threshold is missed.
    #[arg(long)]
    check: bool,
    /// Evaluate the exact solution instead of training.
    #[arg(long)]
    pin_exact: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
}

fn parse_family(s: &str) -> Result<PolyFamily, String> {
    s.parse().map_err(|e: jdnn::Error| e.to_string())
}

fn resolve(args: &SolveArgs) -> jdnn::Result<RunConfig> {
    let example = args.example.map(ExampleId::Preset);
    let mut cfg = match (&args.config, args.example) {
        (Some(path), _) => RunConfig::from_json(&std::fs::read_to_string(path)?, example)?,
        (None, Some(n)) => RunConfig::preset(n)?,
        (None, None) => return Err(jdnn::Error::Config("give --example or --config".into())),
    };
    if let Some(s) = args.seed {
        cfg.seed = s;
    }
    if let Some(f) = args.family {
        cfg.family = f;
    }
    if let Some(w) = &args.widths {
        cfg.widths = w.clone();
    }
    if let Some(n) = args.adam_iters {
        cfg.adam.max_iters = n;
    }
    if let Some(n) = args.lbfgs_iters {
        cfg.lbfgs.max_iters = n;
    }
    cfg.baseline |= args.baseline;
    cfg.pin_exact |= args.pin_exact;
    if let Some(o) = &args.out {
        cfg.out_dir = Some(o.clone());
    }
    cfg.validate()?;
    Ok(cfg)
}

fn solve(args: &SolveArgs) -> jdnn::Result<bool> {
    let cfg = resolve(args)?;
    let out = cfg.out_dir.clone().unwrap_or_else(|| PathBuf::from(format!("runs/example{}-seed{}", cfg.example, cfg.seed)));
    let bundle = run_example(&cfg)?;
    write_outputs(&bundle, &out)?;
    for row in bundle.table() {
        println!("{:<5} {:<40} train {:.4e}  test {:.4e}", row.method.label(), row.layers, row.train_error, row.test_error);
    }
    for v in bundle.variants() {
        println!("{:<5} grid linf {:.4e}  l2 {:.4e}  rms {:.4e}", v.method.label(), v.grid.linf, v.grid.l2, v.grid.rms);
        if let Some(msg) = &v.failure {
            eprintln!("{}: {msg}", v.method.label());
        }
    }
    println!("outputs in {}", out.display());
    if !args.check {
        return Ok(true);
    }
    let checks = run_checks(&bundle);
    for c in &checks {
        println!("[{}] {}: {:.4e} (limit {:.1e})", if c.passed { "pass" } else { "FAIL" }, c.name, c.value, c.threshold);
    }
    Ok(checks.iter().all(|c| c.passed))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Schema => {
            print!("{RUN_CONFIG_SCHEMA}");
            ExitCode::SUCCESS
        }
        Command::Solve(args) => match solve(&args) {
            Ok(true) => ExitCode::SUCCESS,
            Ok(false) => ExitCode::from(1),
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
    }
}
