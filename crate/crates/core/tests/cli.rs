use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

fn vqc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vqc"))
        .args(args)
        .output()
        .expect("spawn vqc")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn ok(o: Output) -> Output {
    assert!(o.status.success(), "vqc failed: {}", stderr(&o));
    o
}

fn blobs(dir: &Path, n: usize, dim: usize) -> PathBuf {
    let p = dir.join("data.csv");
    ok(vqc(&[
        "synth",
        "blobs",
        "--n",
        &n.to_string(),
        "--dim",
        &dim.to_string(),
        "--seed",
        "7",
        "--out",
        p.to_str().unwrap(),
    ]));
    p
}

fn config(dir: &Path, pca_k: usize, maxiter: usize) -> Value {
    json!({
        "data": { "path": "data.csv", "label_column": "label", "positive_label": "AD", "id_column": "id" },
        "prep": { "pca_k": pca_k, "split_seed": 1 },
        "feature_map": { "n_qubits": pca_k, "reps": 1, "entanglement": "linear" },
        "ansatz": { "n_qubits": pca_k, "reps": 1, "entanglement": "linear" },
        "classifier": { "seed": 2, "init_seed": 3, "eval_readout": "exact" },
        "spsa": { "maxiter": maxiter, "seed": 4 },
        "output_dir": dir.join("out").to_str().unwrap(),
    })
}

fn write_config(dir: &Path, v: &Value) -> String {
    let p = dir.join("run.json");
    fs::write(&p, serde_json::to_string_pretty(v).unwrap()).unwrap();
    p.to_str().unwrap().to_owned()
}

fn setup(n: usize, maxiter: usize) -> (TempDir, String) {
    let tmp = TempDir::new().unwrap();
    blobs(tmp.path(), n, 5);
    let cfg = write_config(tmp.path(), &config(tmp.path(), 5, maxiter));
    (tmp, cfg)
}

fn read_csv(p: &Path) -> Vec<Vec<String>> {
    let mut r = csv::Reader::from_path(p).unwrap();
    r.records()
        .map(|r| r.unwrap().iter().map(str::to_owned).collect())
        .collect()
}

#[test]
fn missing_data_file_names_the_path() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(tmp.path(), &config(tmp.path(), 5, 5));
    let o = vqc(&["prep", "-c", &cfg]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("data.csv"), "{}", stderr(&o));
}

#[test]
fn pca_k_beyond_columns_is_rejected() {
    let tmp = TempDir::new().unwrap();
    blobs(tmp.path(), 20, 3);
    let cfg = write_config(tmp.path(), &config(tmp.path(), 5, 5));
    let o = vqc(&["prep", "-c", &cfg]);
    assert_eq!(o.status.code(), Some(1));
    let msg = stderr(&o);
    assert!(
        msg.contains("pca_k") && msg.contains("min(rows, columns)"),
        "{msg}"
    );
}

#[test]
fn artifacts_are_write_once_unless_forced() {
    let (_tmp, cfg) = setup(20, 3);
    ok(vqc(&["prep", "-c", &cfg]));
    let again = vqc(&["prep", "-c", &cfg]);
    assert_eq!(again.status.code(), Some(1));
    assert!(stderr(&again).contains("--force"));
    ok(vqc(&["prep", "-c", &cfg, "--force"]));
}

#[test]
fn loss_history_has_one_row_per_iteration_and_is_reproducible() {
    let (tmp, cfg) = setup(20, 5);
    ok(vqc(&["prep", "-c", &cfg]));
    ok(vqc(&["train", "-c", &cfg]));
    let path = tmp.path().join("out/loss_history.csv");
    let first = fs::read(&path).unwrap();
    let rows = read_csv(&path);
    assert_eq!(rows.len(), 5);
    for (i, r) in rows.iter().enumerate() {
        assert_eq!(r[0], (i + 1).to_string());
        assert!(r[1].parse::<f64>().unwrap().is_finite());
    }
    ok(vqc(&["train", "-c", &cfg, "--force"]));
    assert_eq!(fs::read(&path).unwrap(), first);
}

#[test]
fn kernel_shapes_follow_the_split() {
    let (tmp, cfg) = setup(10, 2);
    ok(vqc(&["prep", "-c", &cfg]));
    ok(vqc(&["kernel", "-c", &cfg]));
    let out = tmp.path().join("out");
    let train = read_csv(&out.join("kernel_train.csv"));
    let test = read_csv(&out.join("kernel_test.csv"));
    assert_eq!(train.len(), 8);
    assert_eq!(test.len(), 2);
    assert!(train.iter().chain(&test).all(|r| r.len() == 9));
    for (i, r) in train.iter().enumerate() {
        let v: f64 = r[i + 1].parse().unwrap();
        assert!((v - 1.0).abs() < 1e-12);
    }
}

#[test]
fn eval_counts_cover_the_test_split() {
    let (tmp, cfg) = setup(20, 3);
    ok(vqc(&["prep", "-c", &cfg]));
    ok(vqc(&["train", "-c", &cfg]));
    ok(vqc(&["eval", "-c", &cfg]));
    let out = tmp.path().join("out");
    let m: Value =
        serde_json::from_str(&fs::read_to_string(out.join("metrics.json")).unwrap()).unwrap();
    let n = m["n_samples"].as_u64().unwrap();
    assert_eq!(n, 4);
    let cm = &m["ad"]["confusion"];
    let sum: u64 = ["tp", "tn", "fp", "fn"]
        .iter()
        .map(|k| cm[*k].as_u64().unwrap())
        .sum();
    assert_eq!(sum, n);
    let preds = read_csv(&out.join("predictions.csv"));
    assert_eq!(preds.len(), 4);
    assert!(preds
        .iter()
        .all(|r| ["AD", "NON_AD"].contains(&r[2].as_str())));
    assert_eq!(read_csv(&out.join("scatter2d.csv")).len(), 20);
}

#[test]
fn eval_before_train_fails() {
    let (_tmp, cfg) = setup(20, 3);
    ok(vqc(&["prep", "-c", &cfg]));
    let o = vqc(&["eval", "-c", &cfg]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("model.json"));
}

#[test]
fn report_runs_missing_stages() {
    let (tmp, cfg) = setup(20, 3);
    ok(vqc(&["report", "-c", &cfg]));
    let out = tmp.path().join("out");
    for f in [
        "prep.json",
        "split.json",
        "model.json",
        "loss_history.csv",
        "metrics.json",
        "predictions.csv",
        "scatter2d.csv",
        "kernel_train.csv",
        "kernel_test.csv",
        "config.json",
        "report.json",
    ] {
        assert!(out.join(f).is_file(), "{f} missing");
    }
}

#[test]
fn handwriting_layout_preps_174_rows() {
    let tmp = TempDir::new().unwrap();
    let data = tmp.path().join("data.csv");
    ok(vqc(&[
        "synth",
        "handwriting",
        "--seed",
        "3",
        "--out",
        data.to_str().unwrap(),
    ]));
    let mut v = config(tmp.path(), 5, 1);
    v["data"] = json!({ "path": "data.csv", "label_column": "class", "positive_label": "P", "id_column": "ID" });
    let cfg = write_config(tmp.path(), &v);
    let o = ok(vqc(&["prep", "-c", &cfg]));
    assert!(String::from_utf8_lossy(&o.stdout).contains("174 rows"));
    let split: Value =
        serde_json::from_str(&fs::read_to_string(tmp.path().join("out/split.json")).unwrap())
            .unwrap();
    let n_test = split["test_indices"].as_array().unwrap().len();
    let n_train = split["train_indices"].as_array().unwrap().len();
    assert_eq!(n_test + n_train, 174);
    assert_eq!(n_test, 35);
}

#[test]
fn help_and_usage_exit_codes() {
    assert_eq!(vqc(&["--help"]).status.code(), Some(0));
    assert_eq!(vqc(&["--version"]).status.code(), Some(0));
    assert_eq!(vqc(&["bogus"]).status.code(), Some(1));
    assert_eq!(vqc(&["prep"]).status.code(), Some(1));
}

#[test]
fn unknown_config_fields_are_rejected() {
    let tmp = TempDir::new().unwrap();
    let mut v = config(tmp.path(), 5, 1);
    v["spsa"]["learning_rate"] = json!(0.1);
    let cfg = write_config(tmp.path(), &v);
    let o = vqc(&["prep", "-c", &cfg]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("learning_rate"));
}
