use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn giantlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_giantlab")).args(args).env_remove("GIANTLAB_THREADS").output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn data_lines(csv: &str) -> Vec<&str> {
    csv.lines().filter(|l| !l.starts_with('#')).collect()
}

fn path_str(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_string()
}

#[test]
fn forecast_table() {
    let out = giantlab(&["forecast", "-d", "3", "-p", "0.75"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("q=0.111111"), "{text}");
    assert!(text.contains("theta1=0.962963"), "{text}");
    assert!(text.contains("alpha3=0.421296"), "{text}");
}

#[test]
fn forecast_rejects_bad_probability() {
    let out = giantlab(&["forecast", "-d", "3", "-p", "1.5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--p"), "{}", stderr(&out));
}

#[test]
fn forecast_json_schema() {
    let out = giantlab(&["forecast", "-d", "3", "-p", "0.75", "--json"]);
    assert!(out.status.success());
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    for key in ["q", "theta1", "eta1", "theta2", "eta2", "excess", "alpha", "beta"] {
        assert!(doc.get(key).is_some(), "missing {key}");
    }
    assert_eq!(doc["alpha"].as_array().unwrap().len(), 3);
    assert_eq!(doc["beta"].as_array().unwrap().len(), 2);
    assert!((doc["q"].as_f64().unwrap() - 1.0 / 9.0).abs() < 1e-10);
}

#[test]
fn percolate_writes_csv_and_summary() {
    let dir = TempDir::new().unwrap();
    let csv = path_str(&dir, "run.csv");
    let out = giantlab(&[
        "percolate",
        "--n",
        "10^4",
        "--d",
        "3",
        "-p",
        "0.75",
        "--trials",
        "5",
        "--seed",
        "1",
        "--out",
        &csv,
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("# giantlab "));
    assert!(text.contains("# n = 10000\n"));
    assert!(text.contains("# trials = 5\n"));
    let lines = data_lines(&text);
    assert!(lines[0].starts_with("trial,seed,n,m,p,R,c1_frac,"));
    assert_eq!(lines.len(), 6);
    // Missing optional fields are empty.
    assert!(lines[1].ends_with(",,,,,"));

    let summary = read_json(&dir.path().join("run.summary.json"));
    let keys: Vec<&str> = summary.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["config", "forecast", "summary_stats"]);
    let c1 = &summary["summary_stats"]["c1_frac"];
    assert!((c1["mean"].as_f64().unwrap() - 0.963).abs() < 0.02);
    assert_eq!(c1["count"], 5);
    assert!((summary["forecast"]["theta1"].as_f64().unwrap() - 26.0 / 27.0).abs() < 1e-12);
}

#[test]
fn percolate_is_deterministic_across_threads() {
    let args = ["percolate", "--n", "4000", "--trials", "6", "-R", "8", "--ecc-vertex", "0"];
    let run = |threads: &str| {
        let out = giantlab(&[&args[..], &["--threads", threads]].concat());
        assert!(out.status.success(), "{}", stderr(&out));
        out.stdout
    };
    let a = run("1");
    assert_eq!(a, run("4"));
    assert_eq!(a, run("4"));

    let out = Command::new(env!("CARGO_BIN_EXE_giantlab")).args(args).env("GIANTLAB_THREADS", "3").output().unwrap();
    assert!(out.status.success());
    assert_eq!(out.stdout, a);
}

#[test]
fn config_file_with_flag_override() {
    let dir = TempDir::new().unwrap();
    let cfg = dir.path().join("exp.cfg");
    std::fs::write(&cfg, "# experiment\nn = 3000\ntrials = 4\np = 0.7\nseed = 9\n").unwrap();
    let out = giantlab(&["percolate", "--config", cfg.to_str().unwrap(), "--trials", "2"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("# trials = 2\n"));
    assert!(text.contains("# p = 0.7\n"));
    assert!(text.contains("# seed = 9\n"));
    let lines = data_lines(&text);
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("0,") && lines[1].contains(",3000,4500,0.7,"));

    std::fs::write(&cfg, "bogus = 1\n").unwrap();
    let out = giantlab(&["percolate", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("bogus"));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["sweep", "--p-grid", ""][..],
        &["sweep", "--n", "1000"],
        &["percolate", "--p", "2"],
        &["percolate", "--trials", "many"],
        &["percolate", "--kind", "torus"],
        &["percolate", "--n", "7", "--d", "3"],
    ] {
        let out = giantlab(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", stderr(&out));
    }
    let out = giantlab(&["percolate", "--trials", "many"]);
    assert!(stderr(&out).contains("--trials"));
}

#[test]
fn io_errors_exit_3() {
    let dir = TempDir::new().unwrap();
    let missing = path_str(&dir, "nope.graph");
    assert_eq!(giantlab(&["percolate", "--graph", &missing]).status.code(), Some(3));

    let bad = dir.path().join("bad.graph");
    std::fs::write(&bad, "#giantlab-graph v1\n3 1\n0 9\n").unwrap();
    let out = giantlab(&["percolate", "--graph", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("line 3"));

    let out = giantlab(&["percolate", "--n", "1000", "--out", "/nonexistent-dir/x.csv"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn generation_failure_exits_4() {
    let dir = TempDir::new().unwrap();
    let out = giantlab(&[
        "build",
        "--kind",
        "theorem2",
        "--n",
        "2000",
        "--alpha",
        "0.6",
        "--gadget-m",
        "6",
        "--out",
        &path_str(&dir, "g"),
    ]);
    assert_eq!(out.status.code(), Some(4), "{}", stderr(&out));
    assert!(stderr(&out).contains("Moore bound"));
}

#[test]
fn build_then_percolate_from_file() {
    let dir = TempDir::new().unwrap();
    let graph = path_str(&dir, "cubic.graph");
    let out = giantlab(&["build", "--n", "10", "--d", "3", "--seed", "4", "--out", &graph]);
    assert!(out.status.success(), "{}", stderr(&out));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["graph"]["edges"], 15);
    let text = std::fs::read_to_string(&graph).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "#giantlab-graph v1");
    assert_eq!(lines[1], "10 15");
    let edges: Vec<(usize, usize)> = lines[2..]
        .iter()
        .map(|l| {
            let (u, v) = l.split_once(' ').unwrap();
            (u.parse().unwrap(), v.parse().unwrap())
        })
        .collect();
    assert!(edges.windows(2).all(|w| w[0] < w[1]) && edges.iter().all(|(u, v)| u < v));

    let direct = giantlab(&["percolate", "--n", "10", "--d", "3", "--seed", "4", "--trials", "3"]);
    let loaded = giantlab(&["percolate", "--graph", &graph, "--seed", "4", "--trials", "3"]);
    assert!(loaded.status.success(), "{}", stderr(&loaded));
    assert_eq!(data_lines(&stdout(&direct)), data_lines(&stdout(&loaded)));
    assert!(stdout(&loaded).contains("# kind = file\n"));
}

#[test]
fn p_sweep_has_one_block_per_point() {
    let dir = TempDir::new().unwrap();
    let csv = path_str(&dir, "sweep.csv");
    let out = giantlab(&["sweep", "--n", "2000", "--p-grid", "0.55:0.95:0.05", "--trials", "2", "--out", &csv]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = std::fs::read_to_string(&csv).unwrap();
    let lines = data_lines(&text);
    assert!(lines[0].starts_with("grid_point,trial,"));
    assert_eq!(lines.len(), 1 + 9 * 2);
    assert!(lines[5].starts_with("0.65,0,"));
    let summary = read_json(&dir.path().join("sweep.summary.json"));
    assert_eq!(summary["summary_stats"].as_array().unwrap().len(), 9);
    assert_eq!(summary["forecast"][8]["grid_point"], 0.95);
    assert!(summary.get("slope_fit").is_none());
}

#[test]
fn theorem2_n_sweep_reports_slope() {
    let dir = TempDir::new().unwrap();
    let csv = path_str(&dir, "t2.csv");
    let summary = path_str(&dir, "t2.json");
    let out = giantlab(&[
        "sweep",
        "--kind",
        "theorem2",
        "--alpha",
        "0.6",
        "--delta",
        "0.01",
        "--n-grid",
        "10^4,3*10^4,10^5",
        "--trials",
        "4",
        "--out",
        &csv,
        "--summary",
        &summary,
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let doc = read_json(Path::new(&summary));
    let slope = doc["slope_fit"]["slope"].as_f64().unwrap();
    assert!((slope - 0.6).abs() < 0.2, "slope {slope}");
    assert_eq!(doc["slope_fit"]["points"].as_array().unwrap().len(), 3);
}

#[test]
fn theorem2_second_component_is_large() {
    let out = giantlab(&["percolate", "--kind", "theorem2", "--alpha", "0.6", "--n", "10^5", "--trials", "3"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    let lines = data_lines(&text);
    let col = lines[0].split(',').position(|c| c == "c2_size").unwrap();
    let mean = lines[1..].iter().map(|l| l.split(',').nth(col).unwrap().parse::<f64>().unwrap()).sum::<f64>() / 3.0;
    assert!(mean > 10.0 * (1e5f64).ln(), "mean |C2| = {mean}");
}

#[test]
fn theorem3_records_root_eccentricity() {
    let out =
        giantlab(&["percolate", "--kind", "theorem3", "-p", "0.5", "--eps", "0.5", "--n", "70000", "--trials", "2"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    for line in &data_lines(&text)[1..] {
        let ecc = line.rsplit(',').next().unwrap();
        assert!(ecc.parse::<usize>().unwrap() > 0, "{line}");
    }
}

#[test]
fn audit_improves_with_radius() {
    let out = giantlab(&["audit", "--n", "20000", "--trials", "3", "--r-grid", "3,40"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    let lines = data_lines(&text);
    let col = lines[0].split(',').position(|c| c == "audit_e2").unwrap();
    let total = |r: &str| -> usize {
        lines[1..]
            .iter()
            .filter(|l| l.starts_with(&format!("{r},")))
            .map(|l| l.split(',').nth(col).unwrap().parse::<usize>().unwrap())
            .sum()
    };
    assert!(total("40") < total("3"));
}
