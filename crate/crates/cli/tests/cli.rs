use std::process::{Command, Output};

fn theta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_theta"))
        .args(args)
        .env_remove("THETA_CACHE")
        .output()
        .expect("theta runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn gauss_prints_exact_and_float_value() {
    let o = theta(&["gauss", "--r", "0,1", "--c", "1,1"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.starts_with("g(r = 0,1, c = 1,1) = "), "{s}");
    assert!(s.contains("exp(2 pi i / 21)"));
}

#[test]
fn gauss_json_has_exact_coordinates() {
    let o = theta(&["gauss", "--r", "0,1", "--c", "1,1", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["order"], 21);
    assert_eq!(v["value"]["num"].as_array().unwrap().len(), 12);
}

#[test]
fn verify_passes_with_exit_zero() {
    let o = theta(&[
        "verify",
        "--p",
        "7",
        "--m",
        "1",
        "--n",
        "3",
        "--suite",
        "dh,hecke-fin",
        "--seed",
        "42",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let s = stdout(&o);
    assert!(s.contains("dh "));
    assert!(s.trim_end().ends_with("ALL PASS"));
}

#[test]
fn usage_and_config_errors_exit_two() {
    assert_eq!(theta(&["verify", "--suite", "bogus"]).status.code(), Some(2));
    assert_eq!(theta(&["table", "--p", "7", "--n", "4"]).status.code(), Some(2));
    assert_eq!(theta(&["table", "--p", "9"]).status.code(), Some(2));
    assert_eq!(theta(&["gauss", "--r", "0,1", "--c", "1,2"]).status.code(), Some(2));
    assert_eq!(theta(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(theta(&["verify", "--g", "1,2,3"]).status.code(), Some(2));
}

#[test]
fn table_writes_file_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("tbl.json");
    let o = theta(&[
        "table",
        "--p",
        "7",
        "--m",
        "1",
        "--n",
        "3",
        "--eps",
        "1",
        "--max-deg",
        "1",
        "--format",
        "json",
        "--out",
        out.to_str().unwrap(),
        "--jobs",
        "4",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    let table = theta_core::harness::Table::from_json(&text).unwrap();
    assert_eq!(table.to_json().unwrap(), text);
    let flagged: Vec<_> = table.rows.iter().filter(|r| r.r == "0,1" && r.i == 1).collect();
    assert_eq!(flagged.len(), 1);
    assert_eq!(flagged[0].flags, vec!["i=i'".to_string()]);
}

#[test]
fn table_is_identical_across_worker_counts() {
    let one = theta(&["table", "--max-deg", "2", "--format", "csv", "--jobs", "1"]);
    let eight = theta(&["table", "--max-deg", "2", "--format", "csv", "--jobs", "8"]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, eight.stdout);
}

#[test]
fn verify_is_identical_across_worker_counts() {
    let args = [
        "verify",
        "--p",
        "5",
        "--n",
        "4",
        "--suite",
        "theorem1,hecke-inf,integrality",
    ];
    let one = theta(&[&args[..], &["--jobs", "1"]].concat());
    let eight = theta(&[&args[..], &["--jobs", "8"]].concat());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, eight.stdout);
}

#[test]
fn cache_env_is_written_and_reused() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache.json");
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_theta"))
            .args(["table", "--max-deg", "1"])
            .env("THETA_CACHE", &cache)
            .output()
            .unwrap()
    };
    let cold = run();
    assert_eq!(cold.status.code(), Some(0));
    assert!(cache.exists());
    let warm = run();
    assert_eq!(cold.stdout, warm.stdout);
}
