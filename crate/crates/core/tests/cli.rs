use std::process::{Command, Output};

use muller2d::harness::{read_csv, CsvRow};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_muller2d")).args(args).output().expect("binary runs")
}

fn rows(out: &Output) -> Vec<CsvRow> {
    read_csv(out.stdout.as_slice()).expect("valid csv")
}

fn without_time(mut rows: Vec<CsvRow>) -> Vec<CsvRow> {
    for r in &mut rows {
        r.wall_time_ms = 0.0;
    }
    rows
}

#[test]
fn solve_reaches_cataloged_root() {
    let out = run(&["solve", "--system", "S1", "--method", "m1", "--start", "1.689,-0.637", "--p", "3"]);
    assert!(out.status.success());
    let r = &rows(&out)[0];
    assert_eq!(r.matched_root, "1.1");
    assert!(r.x_final.starts_with("1.18904657369e0"));
}

#[test]
fn solve_with_newton() {
    let out = run(&["solve", "--system", "S2", "--method", "newton"]);
    assert!(out.status.success());
    let r = &rows(&out)[0];
    assert!(r.x_final.starts_with("-1.00000000000e0"));
    assert!(r.y_final.starts_with("3.50000000000e0"));
}

#[test]
fn capped_solve_exits_nonzero() {
    let out = run(&["solve", "--system", "S1", "--start", "1.689,-0.637", "--max-outer", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(rows(&out)[0].status, "OuterCapReached");
}

#[test]
fn malformed_input_is_a_usage_error() {
    let out = run(&["solve", "--system", "S1", "--start", "1.6x9,0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
    assert_eq!(run(&["solve", "--system", "NOPE"]).status.code(), Some(2));
    assert_eq!(run(&["sweep", "--param", "q", "--values", "1:2"]).status.code(), Some(2));
}

#[test]
fn json_output_parses() {
    let out = run(&["--format", "json", "bench", "--suite", "basic"]);
    assert!(out.status.success());
    let parsed: Vec<CsvRow> = serde_json::from_slice(&out.stdout).unwrap();
    assert!(parsed.len() >= 7);
    assert!(parsed.iter().all(|r| !r.system.is_empty()));
    let list: serde_json::Value = serde_json::from_slice(&run(&["--format", "json", "list-systems"]).stdout).unwrap();
    assert!(list.as_array().is_some_and(|a| a.len() >= 7));
}

#[test]
fn single_value_sweep_matches_solve() {
    let args = ["--system", "S1", "--method", "m1", "--start", "1.689,-0.637"];
    let solve = rows(&run(&[&["solve", "--p", "5"][..], &args[..]].concat()));
    let sweep = rows(&run(&[&["sweep", "--param", "p", "--values", "5:5"][..], &args[..]].concat()));
    assert_eq!(without_time(solve), without_time(sweep));
}

#[test]
fn runs_replay_identically() {
    let args = ["bench", "--suite", "basic"];
    let a = without_time(rows(&run(&args)));
    let b = without_time(rows(&run(&args)));
    assert_eq!(a, b);
}

#[test]
fn csv_written_to_file_reads_back() {
    let path = std::env::temp_dir().join(format!("muller2d-cli-{}.csv", std::process::id()));
    let p = path.to_str().unwrap();
    assert!(run(&["--out", p, "qnm", "--modes", "0..2"]).status.success());
    let back = read_csv(std::fs::File::open(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(back.len(), 3);
    assert!(back.iter().all(|r| r.system == "RW" && r.delta_ref.is_some_and(|d| d < 1e-6)));
}
