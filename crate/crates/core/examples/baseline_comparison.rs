//! JDNN against the tanh-only network of the same widths, over several
//! seeds, in the layout of the train/test error tables.
//!
//! ```sh
//! cargo run --release --example baseline_comparison -- 4 3
//! ```

use jdnn::experiment::{compare_baseline, Method, RunConfig};

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

fn main() -> jdnn::Result<()> {
    let mut args = std::env::args().skip(1);
    let example: u8 = args.next().and_then(|s| s.parse().ok()).unwrap_or(4);
    let seeds: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(3);

    let mut test = [Vec::new(), Vec::new()];
    println!("{:<6} {:<5} {:<36} {:>12} {:>12}", "seed", "net", "layers", "train", "test");
    for seed in 1..=seeds {
        let cfg = RunConfig { seed, ..RunConfig::preset(example)? };
        let bundle = compare_baseline(&cfg)?;
        for row in bundle.table() {
            println!(
                "{seed:<6} {:<5} {:<36} {:>12.4e} {:>12.4e}",
                row.method.label(),
                row.layers,
                row.train_error,
                row.test_error
            );
            test[(row.method == Method::Dnn) as usize].push(row.test_error);
        }
    }
    let (j, d) = (median(test[0].clone()), median(test[1].clone()));
    println!("\nmedian test relative L2: JDNN {j:.4e}, DNN {d:.4e}");
    Ok(())
}
