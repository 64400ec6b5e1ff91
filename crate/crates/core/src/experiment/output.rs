use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::Path;

use serde_json::json;

use super::run::{run_checks, RunBundle, VariantResult};
use crate::error::Result;
use crate::metrics::{fmt17, ErrorReport};
use crate::sampler::PRNG_NAME;

pub const MANIFEST: &str = "manifest.json";
pub const ERRORS_RANDOM: &str = "errors_random.csv";
pub const ERRORS_GRID: &str = "errors_grid.csv";
pub const FIELD: &str = "field.csv";

pub const TABLE_CSV_HEADER: &str = "method,layers,train_error,test_error";

fn create(dir: &Path, name: &str) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(dir.join(name))?))
}

fn variant_summary(v: &VariantResult) -> serde_json::Value {
    json!({
        "method": v.method,
        "layers": v.arch.layers_label(),
        "n_params": v.arch.n_params(),
        "pinned_exact": v.params.is_none(),
        "adam_iterations": v.adam_iterations(),
        "lbfgs_iterations": v.lbfgs_iterations(),
        "evaluations": v.trace.evaluations,
        "termination": v.trace.termination,
        "best_loss": v.trace.best_loss,
        "best_index": v.trace.best_index,
        "loss": v.loss,
        "train": v.train,
        "test": v.test,
        "grid": v.grid,
        "failure": v.failure,
    })
}

/// The resolved configuration and result summary as JSON.
pub fn manifest(bundle: &RunBundle) -> serde_json::Value {
    json!({
        "tool": env!("CARGO_PKG_NAME"),
        "version": env!("CARGO_PKG_VERSION"),
        "prng": PRNG_NAME,
        "seed": bundle.config.seed,
        "config": bundle.config,
        "problem": bundle.spec,
        "variants": bundle.variants().map(variant_summary).collect::<Vec<_>>(),
        "checks": run_checks(bundle),
    })
}

/// Writes the manifest, error tables, traces, field and parameters.
pub fn write_outputs(bundle: &RunBundle, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir)?;

    let mut m = create(dir, MANIFEST)?;
    serde_json::to_writer_pretty(&mut m, &manifest(bundle))?;
    writeln!(m)?;
    m.flush()?;

    let mut w = create(dir, ERRORS_RANDOM)?;
    writeln!(w, "{TABLE_CSV_HEADER}")?;
    for row in bundle.table() {
        writeln!(
            w,
            "{},\"{}\",{},{}",
            row.method.label(),
            row.layers,
            fmt17(row.train_error),
            fmt17(row.test_error)
        )?;
    }
    w.flush()?;

    let mut w = create(dir, ERRORS_GRID)?;
    writeln!(w, "{}", ErrorReport::CSV_HEADER)?;
    for v in bundle.variants() {
        writeln!(w, "{}", v.grid.csv_row(v.method.label()))?;
    }
    w.flush()?;

    for v in bundle.variants() {
        let mut w = create(dir, &format!("trace_{}.csv", v.method.file_tag()))?;
        v.trace.write_csv(&mut w)?;
        w.flush()?;
        if let Some(p) = &v.params {
            fs::write(dir.join(format!("params_{}.txt", v.method.file_tag())), p.to_text())?;
        }
    }

    let mut w = create(dir, FIELD)?;
    let dim = bundle.problem.dim();
    let coords = if dim == 1 { "x".to_string() } else { "x1,x2".to_string() };
    write!(w, "{coords},u_exact,u_pred,abs_residual")?;
    if let Some(d) = &bundle.dnn {
        write!(w, ",u_pred_{0},abs_residual_{0}", d.method.file_tag())?;
    }
    writeln!(w)?;
    for (i, x) in bundle.grid.iter().enumerate() {
        let mut cols: Vec<String> = x.iter().map(|&c| fmt17(c)).collect();
        cols.push(fmt17(bundle.u_exact_grid[i]));
        for v in bundle.variants() {
            cols.push(fmt17(v.field.u_pred[i]));
            cols.push(fmt17(v.field.abs_residual[i]));
        }
        writeln!(w, "{}", cols.join(","))?;
    }
    w.flush()?;
    Ok(())
}
