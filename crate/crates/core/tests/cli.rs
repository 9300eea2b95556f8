use std::path::Path;
use std::process::{Command, Output};

use gnp_dense::graph::{generate_gnp, read_edge_list};

fn gnp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gnp-dense")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn error_json(out: &Output) -> serde_json::Value {
    assert!(!out.status.success());
    let text = String::from_utf8(out.stderr.clone()).unwrap();
    assert_eq!(text.trim_end().lines().count(), 1, "{text}");
    serde_json::from_str(text.trim_end()).unwrap()
}

#[test]
fn help_goes_to_stdout() {
    let text = stdout(&gnp(&["--help"]));
    for sub in ["generate", "greedy", "bounds", "oracle", "experiment"] {
        assert!(text.contains(sub), "{sub} missing from help");
    }
}

#[test]
fn errors_are_single_line_json() {
    let e = error_json(&gnp(&["bounds", "--n", "1024", "--p", "0.3"]));
    assert_eq!(e["error"], "invalid_argument");
    let e = error_json(&gnp(&["experiment", "--mode", "lemma2-edges", "--n", "1024", "--p", "0.25"]));
    assert_eq!(e["error"], "invalid_argument");
    let e = error_json(&gnp(&["experiment", "--mode", "lemma2-edges", "--n", "16", "--k", "8"]));
    assert_eq!(e["error"], "n_too_small");
    let e = error_json(&gnp(&["bounds", "--n", "1024", "--delta", "0.5"]));
    assert_eq!(e["error"], "degenerate_threshold");
    let e = error_json(&gnp(&["oracle", "--n", "40", "--k", "20", "--budget", "1000"]));
    assert_eq!(e["error"], "budget_exceeded");
    let e = error_json(&gnp(&["frobnicate"]));
    assert_eq!(e["error"], "usage");
    let e = error_json(&gnp(&["greedy", "--graph", "/nonexistent/graph.txt", "--k", "3"]));
    assert_eq!(e["error"], "io");
}

#[test]
fn generate_matches_library() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.txt");
    stdout(&gnp(&["generate", "--n", "90", "--seed", "4", "--out", path.to_str().unwrap()]));
    let g = read_edge_list(std::io::BufReader::new(std::fs::File::open(&path).unwrap())).unwrap();
    let expected = generate_gnp(90, 0.5, 4).unwrap();
    assert_eq!(g.edges().collect::<Vec<_>>(), expected.edges().collect::<Vec<_>>());
}

#[test]
fn greedy_on_file_and_sampled_graph_agree() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.txt");
    let p = path.to_str().unwrap();
    stdout(&gnp(&["generate", "--n", "256", "--seed", "9", "--out", p]));
    let from_file = stdout(&gnp(&["greedy", "--graph", p, "--k", "12", "--partition-seed", "77"]));
    let sampled = stdout(&gnp(&["greedy", "--n", "256", "--seed", "9", "--k", "12", "--partition-seed", "77"]));
    assert_eq!(from_file, sampled);
    let steps: Vec<serde_json::Value> = serde_json::from_str(&from_file).unwrap();
    assert_eq!(steps.len(), 12);
    for (i, s) in steps.iter().enumerate() {
        assert_eq!(s["i"], i as u64);
        assert!(s["gained"].as_u64().unwrap() <= i as u64);
    }
    let csv = stdout(&gnp(&["greedy", "--graph", p, "--k", "12", "--partition-seed", "77", "--format", "csv"]));
    assert!(csv.starts_with("step,vertex,gained\n"));
    assert_eq!(csv.lines().count(), 13);
}

#[test]
fn bounds_json_fields() {
    let text = stdout(&gnp(&["bounds", "--n", "16384", "--k", "28", "--format", "json"]));
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["k"], 28);
    assert_eq!(v["delta_schedule"].as_array().unwrap().len(), 28);
    let d = v["predicted_density"].as_f64().unwrap();
    assert!((0.85..0.86).contains(&d), "{d}");
    assert!(stdout(&gnp(&["bounds", "--n", "16384"])).contains("size threshold"));
}

#[test]
fn oracle_reports_count_when_delta_given() {
    let out = stdout(&gnp(&["oracle", "--n", "18", "--seed", "3", "--k", "5", "--delta", "0.1"]));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["best_set"].as_array().unwrap().len(), 5);
    assert!(v["dense_count"].as_u64().is_some());
    let out = stdout(&gnp(&["oracle", "--n", "18", "--seed", "3", "--k", "5"]));
    assert!(!out.contains("dense_count"));
}

#[test]
fn experiment_csv_to_stdout_and_file_match() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.csv");
    let args = ["experiment", "--mode", "greedy-density", "--n", "2048", "--trials", "6", "--seed", "5"];
    let printed = stdout(&gnp(&args));
    let mut with_out = args.to_vec();
    with_out.extend(["--out", path.to_str().unwrap()]);
    stdout(&gnp(&with_out));
    assert_eq!(printed, std::fs::read_to_string(&path).unwrap());
    assert!(printed.starts_with("trial,seed,observed,predicted,pass,detail,error\n"));
    assert_eq!(printed.lines().count(), 7);
}

#[test]
fn sweep_emits_one_row_per_k() {
    let out =
        stdout(&gnp(&["experiment", "--mode", "greedy-density", "--n", "1024", "--trials", "4", "--sweep", "10:13"]));
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("k,predicted_density,mean_observed_density"));
    let ks: Vec<&str> = lines.map(|l| l.split(',').next().unwrap()).collect();
    assert_eq!(ks, ["10", "11", "12", "13"]);
}

#[test]
fn unwritable_output_is_an_io_error() {
    let bad = Path::new("/nonexistent-dir/out.csv").to_str().unwrap();
    let e = error_json(&gnp(&["experiment", "--mode", "clique-baseline", "--n", "256", "--trials", "2", "--out", bad]));
    assert_eq!(e["error"], "io");
}
