//! Black-box tests of the command line interface.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_qsmp"));
    c.env_remove("QSMP_SEED");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn tmp(name: &str, content: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("qsmp_cli_{name}"));
    std::fs::write(&path, content).unwrap();
    path
}

#[test]
fn hamming_emits_trials_and_summary() {
    let out = run(&["--seed", "5", "hamming", "--n", "64", "--trials", "3", "--eps", "0.5"]);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4); // 3 trials + summary
    for line in &lines[..3] {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert!(v.get("estimate").is_some());
        assert!(v.get("qubits_total").is_some());
    }
    let summary: serde_json::Value = serde_json::from_str(lines[3]).unwrap();
    assert_eq!(summary["trials"], 3);
    assert!(summary.get("success_rate").is_some());
}

#[test]
fn planted_distance_fixes_truth() {
    let out = run(&[
        "--seed", "5", "hamming", "--n", "64", "--trials", "2", "--eps", "0.5",
        "--planted-distance", "7",
    ]);
    let text = stdout(&out);
    for line in text.lines().take(2) {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["true_distance"], 7.0);
    }
}

#[test]
fn env_seed_is_default_and_flag_wins() {
    let args = ["hamming", "--n", "32", "--trials", "2", "--eps", "0.5"];
    let with_env = |seed: &str| {
        let out = bin().env("QSMP_SEED", seed).args(args).output().unwrap();
        stdout(&out)
    };
    assert_eq!(with_env("9"), with_env("9"));
    assert_ne!(with_env("9"), with_env("10"));

    // explicit flag beats the environment
    let flagged = bin()
        .env("QSMP_SEED", "9")
        .args(["--seed", "10"])
        .args(args)
        .output()
        .unwrap();
    assert_eq!(stdout(&flagged), with_env("10"));
}

#[test]
fn config_file_supplies_defaults_and_flags_override() {
    let cfg = tmp("conf.cfg", "seed = 9\ntrials = 2\neps = 0.5\n");
    let cfg = cfg.to_str().unwrap();
    let from_file = stdout(&run(&["--config", cfg, "hamming", "--n", "32"]));
    let explicit = stdout(&run(&["--seed", "9", "hamming", "--n", "32", "--trials", "2", "--eps", "0.5"]));
    assert_eq!(from_file, explicit);

    // flag overrides the file
    let overridden = stdout(&run(&["--config", cfg, "--seed", "11", "hamming", "--n", "32"]));
    let explicit11 = stdout(&run(&["--seed", "11", "hamming", "--n", "32", "--trials", "2", "--eps", "0.5"]));
    assert_eq!(overridden, explicit11);
    assert_ne!(overridden, from_file);

    // file overrides the environment
    let env_out = bin()
        .env("QSMP_SEED", "13")
        .args(["--config", cfg, "hamming", "--n", "32"])
        .output()
        .unwrap();
    assert_eq!(stdout(&env_out), from_file);

    let bad = tmp("badconf.cfg", "no equals sign\n");
    let out = run(&["--config", bad.to_str().unwrap(), "hamming", "--n", "32"]);
    assert!(!out.status.success());
}

#[test]
fn recognize_classifies_files() {
    let square = tmp("square.txt", "0 1\n1 2\n2 3\n3 0\n");
    assert_eq!(stdout(&run(&["recognize", "--graph", square.to_str().unwrap()])).trim(), "partial-cube");
    let triangle = tmp("triangle.txt", "0 1\n1 2\n2 0\n");
    assert_eq!(stdout(&run(&["recognize", "--graph", triangle.to_str().unwrap()])).trim(), "l1");
    let k23 = tmp("k23.txt", "0 2\n0 3\n0 4\n1 2\n1 3\n1 4\n");
    assert_eq!(stdout(&run(&["recognize", "--graph", k23.to_str().unwrap()])).trim(), "not-l1");
    let adjacency = tmp("adj.txt", "0: 1 2\n1: 0\n2: 0\n");
    assert_eq!(stdout(&run(&["recognize", "--graph", adjacency.to_str().unwrap()])).trim(), "partial-cube");
}

#[test]
fn embed_writes_parseable_labeling() {
    let triangle = tmp("embed_tri.txt", "0 1\n1 2\n2 0\n");
    let out_path = std::env::temp_dir().join("qsmp_cli_embedding_out.txt");
    let out = run(&[
        "embed", "--graph", triangle.to_str().unwrap(), "--out", out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&out_path).unwrap();
    assert!(text.starts_with("scale 2 dimension 3\n"), "got: {text}");

    // stdout when --out is omitted
    let printed = stdout(&run(&["embed", "--graph", triangle.to_str().unwrap()]));
    assert_eq!(printed, text);
    std::fs::remove_file(&out_path).ok();
}

#[test]
fn graph_subcommand_estimates_distance() {
    let path5 = tmp("p5.txt", "0 1\n1 2\n2 3\n3 4\n");
    let out = run(&[
        "--seed", "3", "graph", "--graph", path5.to_str().unwrap(),
        "--source", "0", "--target", "4", "--eps", "0.5",
    ]);
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["true_distance"], 4.0);
    assert!(v["estimate"].as_f64().unwrap() > 0.0);

    let out = run(&["graph", "--graph", path5.to_str().unwrap(), "--source", "0", "--target", "9"]);
    assert!(!out.status.success());
}

#[test]
fn l1_subcommand_reads_vector_files() {
    let a = tmp("vec_a.txt", "dim 3 bits 4 scale 1\n0.5\n-0.5\n1.0\n");
    let b = tmp("vec_b.txt", "dim 3 bits 4 scale 1\n-0.5\n-0.5\n0.0\n");
    let out = run(&[
        "--seed", "4", "l1", "--vectors", a.to_str().unwrap(), b.to_str().unwrap(),
        "--eps", "0.5",
    ]);
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["true_distance"], 2.0);

    let bad = tmp("vec_bad.txt", "dim 2 bits 4 scale 1\n0.5\n-0.5\n1.0\n");
    let out = run(&["l1", "--vectors", a.to_str().unwrap(), bad.to_str().unwrap()]);
    assert!(!out.status.success());
}

#[test]
fn reduce_gt_reports_accuracy() {
    for mode in ["exact", "random", "low", "high"] {
        let out = run(&["--seed", "2", "reduce-gt", "--bits", "5", "--eps", "0.2", "--oracle", mode]);
        let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
        assert_eq!(v["pairs_tested"], 1024);
        assert_eq!(v["accuracy"], 1.0);
        assert_eq!(v["oracle_queries"], 2048);
    }
    let out = run(&["reduce-gt", "--bits", "5", "--eps", "0.3"]);
    assert!(!out.status.success()); // reduction precondition
    let out = run(&["reduce-gt", "--bits", "5", "--oracle", "bogus"]);
    assert!(!out.status.success());
}

#[test]
fn bench_reports_costs_per_size() {
    let out = run(&["--seed", "1", "bench", "--protocol", "hamming", "--sizes", "64,256", "--eps", "0.5"]);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    let small: serde_json::Value = serde_json::from_str(lines[0]).unwrap();
    let large: serde_json::Value = serde_json::from_str(lines[1]).unwrap();
    assert_eq!(small["size"], 64);
    assert_eq!(large["size"], 256);
    assert!(small["qubits_total"].as_u64().unwrap() < large["qubits_total"].as_u64().unwrap());

    let out = run(&["bench", "--protocol", "graph", "--sizes", "9"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["true_distance"], 8.0);

    let out = run(&["bench", "--protocol", "nope", "--sizes", "8"]);
    assert!(!out.status.success());
}
