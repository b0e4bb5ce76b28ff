use std::path::Path;
use std::process::{Command, Output};

use dqpower::projection::random_unit_dq_vec;
use dqpower::slam::write_problem;
use dqpower::{build_problem, circle_graph};
use rand::SeedableRng;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dqpower")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn zeros() -> [f64; 8] {
    [0.0; 8]
}

fn write_diag(path: &Path) {
    let mut a = zeros();
    a[0] = 2.0;
    a[4] = 1.0;
    let mut b = zeros();
    b[0] = 1.0;
    let json = serde_json::json!({ "n": 2, "m": 2, "entries": [a, zeros(), zeros(), b] });
    std::fs::write(path, json.to_string()).unwrap();
}

#[test]
fn eig_prints_dual_eigenvalue() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("diag.json");
    write_diag(&m);
    let out = run(&["eig", arg(&m), "--out-dir", arg(dir.path())]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("lambda = 2 + 1ε"), "{}", stdout(&out));
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("eig.json")).unwrap()).unwrap();
    assert_eq!(json["lambda"][0], 2.0);
}

#[test]
fn eig_on_generated_circle() {
    let dir = tempfile::tempdir().unwrap();
    let gen = run(&["circle", "--n", "5", "--seed", "3", "--out-dir", arg(dir.path())]);
    assert_eq!(gen.status.code(), Some(0));
    assert!(stdout(&gen).contains("poses.csv"));
    let trace = dir.path().join("trace.csv");
    let out = run(&["eig", arg(&dir.path().join("laplacian.json")), "--trace-out", arg(&trace)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("lambda = 3.618033988"), "{}", stdout(&out));
    assert!(std::fs::read_to_string(trace).unwrap().starts_with("iter,residual_2R,lambda_st,lambda_du\n"));
}

#[test]
fn eigs_all_reproduces_circle_rows() {
    let dir = tempfile::tempdir().unwrap();
    for (n, row) in [
        ("6", "[4.0000, 3.0000, 3.0000, 1.0000, 1.0000, 0.0000]"),
        ("7", "[3.8019, 3.8019, 2.4450, 2.4450, 0.7530, 0.7530, 0.0000]"),
    ] {
        let sub = dir.path().join(n);
        assert_eq!(run(&["circle", "--n", n, "--out-dir", arg(&sub)]).status.code(), Some(0));
        let out = run(&["eigs-all", arg(&sub.join("laplacian.json")), "--out-dir", arg(&sub)]);
        assert_eq!(out.status.code(), Some(0));
        assert!(stdout(&out).contains(row), "{}", stdout(&out));
        assert!(sub.join("spectrum.json").exists());
    }
}

#[test]
fn eigs_all_of_zero_matrix_is_empty() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("zero.json");
    std::fs::write(&m, serde_json::json!({ "n": 2, "m": 2, "entries": [zeros(), zeros(), zeros(), zeros()] }).to_string())
        .unwrap();
    let out = run(&["eigs-all", arg(&m), "--out-dir", arg(dir.path())]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("spectrum.json")).unwrap()).unwrap();
    assert_eq!(json["pairs"].as_array().unwrap().len(), 0);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    assert_eq!(run(&["eig", arg(&bad)]).status.code(), Some(2));
    assert_eq!(run(&["eig", arg(&dir.path().join("missing.json"))]).status.code(), Some(2));

    let mut one = zeros();
    one[0] = 1.0;
    let non_hermitian = dir.path().join("nh.json");
    std::fs::write(&non_hermitian, serde_json::json!({ "n": 2, "m": 2, "entries": [one, one, zeros(), one] }).to_string())
        .unwrap();
    assert_eq!(run(&["eig", arg(&non_hermitian)]).status.code(), Some(3));

    assert_eq!(run(&["randgraph", "--n", "10", "--sparsity", "0.95", "--out-dir", arg(dir.path())]).status.code(), Some(2));

    assert_eq!(run(&["circle", "--n", "8", "--out-dir", arg(dir.path())]).status.code(), Some(0));
    let l = dir.path().join("laplacian.json");
    let out = run(&["eig", arg(&l), "--max-iters", "2"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(stdout(&out).contains("lambda = "));
    assert_eq!(run(&["eigs-all", arg(&l), "--max-iters", "2"]).status.code(), Some(4));
    assert_eq!(run(&["eigs-all", arg(&l), "--max-iters", "2", "--allow-partial"]).status.code(), Some(0));
}

#[test]
fn generators_are_seeded() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    for d in [&a, &b] {
        let out = run(&["randgraph", "--n", "10", "--sparsity", "0.5", "--seed", "7", "--out-dir", arg(d)]);
        assert_eq!(out.status.code(), Some(0));
    }
    for f in ["laplacian.json", "poses.csv", "edges.csv"] {
        assert_eq!(std::fs::read(a.join(f)).unwrap(), std::fs::read(b.join(f)).unwrap());
    }
    assert!(std::fs::read_to_string(a.join("edges.csv")).unwrap().lines().count() >= 25);
}

fn metric(out: &str, key: &str) -> f64 {
    out.lines().find_map(|l| l.strip_prefix(&format!("{key} = "))).unwrap().parse().unwrap()
}

#[test]
fn slam_noiseless_runs_recover_poses() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["slam", "--circle", "5", "--reps", "10", "--out-dir", arg(dir.path())]);
    assert_eq!(out.status.code(), Some(0));
    assert!(metric(&stdout(&out), "e_x") <= 1e-4);
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("metrics.json")).unwrap()).unwrap();
    assert!(json["mean"]["e_Q"].as_f64().unwrap() <= 1e-4);
    assert_eq!(json["reps"].as_array().unwrap().len(), 10);
    assert!(dir.path().join("poses_9.csv").exists() && dir.path().join("gap_trace_0.csv").exists());

    let out = run(&["slam", "--randgraph", "10", "0.5", "--reps", "10"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(metric(&stdout(&out), "e_x") <= 1e-4);
}

#[test]
fn slam_noise_and_budget() {
    let noisy = run(&["slam", "--circle", "5", "--noise", "0.25", "--reps", "10"]);
    assert_eq!(noisy.status.code(), Some(0));
    let e_q = metric(&stdout(&noisy), "e_Q");
    assert!(e_q > 0.05 && e_q < 0.5, "{e_q}");

    assert_eq!(run(&["slam", "--circle", "5", "--max-iters", "3"]).status.code(), Some(4));
    assert_eq!(run(&["slam", "--circle", "5", "--max-iters", "3", "--allow-partial"]).status.code(), Some(0));
    assert_eq!(run(&["slam", "--randgraph", "10", "2.0"]).status.code(), Some(2));
    assert_eq!(run(&["slam", "--noise", "0.1"]).status.code(), Some(2));
}

#[test]
fn slam_problem_files() {
    let dir = tempfile::tempdir().unwrap();
    let poses = random_unit_dq_vec(&mut rand_chacha::ChaCha8Rng::seed_from_u64(5), 6);
    let p = build_problem(&poses, &circle_graph(6).unwrap().arcs()).unwrap();
    let with_truth = dir.path().join("truth.json");
    let without = dir.path().join("plain.json");
    write_problem(&with_truth, &p, Some(&poses)).unwrap();
    write_problem(&without, &p, None).unwrap();

    let out = run(&["slam", "--problem", arg(&with_truth), "--reps", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(metric(&stdout(&out), "e_x") <= 1e-3);

    let out_dir = dir.path().join("out");
    let out = run(&["slam", "--problem", arg(&without), "--out-dir", arg(&out_dir)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out_dir.join("poses_0.csv").exists());
    assert_eq!(run(&["slam", "--problem", arg(&without), "--noise", "0.1"]).status.code(), Some(2));
}

#[test]
fn seeded_slam_is_reproducible() {
    let a = run(&["slam", "--randgraph", "10", "0.4", "--noise", "0.1", "--reps", "3", "--seed", "11"]);
    let b = run(&["slam", "--randgraph", "10", "0.4", "--noise", "0.1", "--reps", "3", "--seed", "11", "--exec", "sequential"]);
    let strip = |o: &Output| stdout(o).lines().filter(|l| !l.starts_with("time_s")).collect::<Vec<_>>().join("\n");
    assert_eq!(strip(&a), strip(&b));
}
