use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn jdnn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jdnn")).args(args).output().expect("binary runs")
}

fn read(dir: &Path, name: &str) -> String {
    fs::read_to_string(dir.join(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

const QUICK: &[&str] = &["--adam-iters", "15", "--lbfgs-iters", "10"];

#[test]
fn reruns_are_byte_identical() {
    let tmp = tempfile::tempdir().unwrap();
    let (a, b) = (tmp.path().join("a"), tmp.path().join("b"));
    for dir in [&a, &b] {
        let mut args = vec!["solve", "--example", "4", "--seed", "3", "--baseline", "--out", dir.to_str().unwrap()];
        args.extend(QUICK);
        let out = jdnn(&args);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    for name in ["errors_random.csv", "errors_grid.csv", "trace_jdnn.csv", "trace_dnn.csv", "field.csv", "params_jdnn.txt"] {
        assert!(fs::read(a.join(name)).unwrap() == fs::read(b.join(name)).unwrap(), "{name} differs");
    }
    // manifests differ only in the echoed output directory
    let strip = |dir: &Path| {
        let mut m: serde_json::Value = serde_json::from_str(&read(dir, "manifest.json")).unwrap();
        m["config"].as_object_mut().unwrap().remove("out_dir");
        m
    };
    assert_eq!(strip(&a), strip(&b));
}

#[test]
fn outputs_have_table_layouts() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    let mut args = vec!["solve", "--example", "3", "--baseline", "--out", dir.to_str().unwrap()];
    args.extend(QUICK);
    assert!(jdnn(&args).status.success());

    let random = read(dir, "errors_random.csv");
    let lines: Vec<&str> = random.lines().collect();
    assert_eq!(lines[0], "method,layers,train_error,test_error");
    assert!(lines[1].starts_with("JDNN,\"[2, 8, 16, 32, 64, 32, 16, 8, 1]\","));
    assert!(lines[2].starts_with("DNN,"));

    let grid = read(dir, "errors_grid.csv");
    assert!(grid.starts_with("method,point_set,n_points,linf,l2,rms,rel_l2\nJDNN,grid,1089,"));

    let field = read(dir, "field.csv");
    let mut rows = field.lines();
    assert_eq!(rows.next().unwrap(), "x1,x2,u_exact,u_pred,abs_residual,u_pred_dnn,abs_residual_dnn");
    let body: Vec<&str> = rows.collect();
    assert_eq!(body.len(), 33 * 33);
    for row in &body {
        let cols: Vec<&str> = row.split(',').collect();
        assert_eq!(cols.len(), 7);
        for c in cols {
            // 17 significant digits in scientific notation
            let mantissa = c.trim_start_matches('-').split('e').next().unwrap();
            assert_eq!(mantissa.len(), 18, "{c}");
            c.parse::<f64>().unwrap();
        }
    }

    let trace = read(dir, "trace_jdnn.csv");
    assert_eq!(trace.lines().next().unwrap(), "iteration,phase,loss,best_loss");
    assert_eq!(trace.lines().filter(|l| l.contains(",adam,")).count(), 15);

    let manifest: serde_json::Value = serde_json::from_str(&read(dir, "manifest.json")).unwrap();
    assert!(manifest["prng"].as_str().unwrap().contains("ChaCha8"));
    assert_eq!(manifest["seed"], 1);
    assert_eq!(manifest["config"]["adam"]["max_iters"], 15);
    assert_eq!(manifest["config"]["family"], "chebyshev1");
    assert_eq!(manifest["variants"].as_array().unwrap().len(), 2);
}

#[test]
fn pinned_example_two_passes_check() {
    let tmp = tempfile::tempdir().unwrap();
    let out = jdnn(&["solve", "--example", "2", "--pin-exact", "--check", "--out", tmp.path().to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let manifest: serde_json::Value = serde_json::from_str(&read(tmp.path(), "manifest.json")).unwrap();
    let v = &manifest["variants"][0];
    assert!(v["loss"]["total"].as_f64().unwrap() < 1e-12);
    for set in ["train", "test", "grid"] {
        for norm in ["l2", "rel_l2", "linf", "rms"] {
            assert!(v[set][norm].as_f64().unwrap() < 1e-12, "{set} {norm}");
        }
    }
}

#[test]
fn check_fails_on_missed_threshold() {
    let tmp = tempfile::tempdir().unwrap();
    let out = jdnn(&[
        "solve",
        "--example",
        "1",
        "--adam-iters",
        "3",
        "--lbfgs-iters",
        "0",
        "--check",
        "--out",
        tmp.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("[FAIL] JDNN test rel_l2"));
}

#[test]
fn flags_override_config_file() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = tmp.path().join("run.json");
    fs::write(
        &cfg,
        r#"{"example": 2, "seed": 5, "family": "jacobi:1:1", "widths": [1, 4, 6, 1], "n_interior": 30,
            "adam": {"max_iters": 7}, "lbfgs": {"max_iters": 4}}"#,
    )
    .unwrap();
    let out_dir = tmp.path().join("out");
    let out = jdnn(&[
        "solve",
        "--config",
        cfg.to_str().unwrap(),
        "--seed",
        "11",
        "--widths",
        "1,5,1",
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let m: serde_json::Value = serde_json::from_str(&read(&out_dir, "manifest.json")).unwrap();
    assert_eq!(m["seed"], 11);
    assert_eq!(m["config"]["widths"], serde_json::json!([1, 5, 1]));
    assert_eq!(m["config"]["family"], "jacobi:1:1");
    assert_eq!(m["config"]["n_interior"], 30);
    assert_eq!(m["config"]["adam"]["max_iters"], 7);
    assert_eq!(m["config"]["adam"]["lr"], 1e-3);
    assert_eq!(m["variants"][0]["adam_iterations"], 7);
}

#[test]
fn schema_is_published() {
    let out = jdnn(&["schema"]);
    assert!(out.status.success());
    let schema: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(schema["type"], "object");
    assert!(schema["properties"]["lbfgs"].is_object());
}

#[test]
fn bad_invocations_are_reported() {
    assert!(!jdnn(&["solve", "--example", "5"]).status.success());
    assert!(!jdnn(&["solve", "--example", "1", "--family", "hermite"]).status.success());
    assert_eq!(jdnn(&["solve"]).status.code(), Some(2));
    assert_eq!(jdnn(&["solve", "--example", "1", "--widths", "2,4,1"]).status.code(), Some(2));
}
