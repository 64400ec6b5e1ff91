//! End-to-end runs of the benchmark problems: configuration, training of
//! the JDNN and its tanh twin, error tables and plot-ready output files.

mod config;
mod output;
mod run;

pub use config::{ExampleId, RunConfig, RUN_CONFIG_SCHEMA};
pub use output::{manifest, write_outputs, ERRORS_GRID, ERRORS_RANDOM, FIELD, MANIFEST, TABLE_CSV_HEADER};
pub use run::{
    compare_baseline, example_thresholds, run_checks, run_example, Check, Field, Method, RunBundle, TableRow,
    VariantResult,
};
