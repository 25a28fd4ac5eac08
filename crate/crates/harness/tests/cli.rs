use std::process::{Command, Output};

use qpart_harness::output::strip_timestamp;

fn qpart(args: &[&str], workers: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_qpart"));
    cmd.args(args);
    match workers {
        Some(w) => cmd.env("QPART_WORKERS", w),
        None => cmd.env_remove("QPART_WORKERS"),
    };
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn empty_grid_is_a_config_error() {
    let o = qpart(&["verify-overlap", "--delta", ""], None);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("delta grid is empty"));
}

#[test]
fn out_of_range_values_are_config_errors() {
    assert_eq!(qpart(&["sweep-classical", "--delta", "0.7"], None).status.code(), Some(2));
    assert_eq!(qpart(&["sweep-quantum", "--trials", "0"], None).status.code(), Some(2));
    assert_eq!(qpart(&["verify-z", "--beta", "warm"], None).status.code(), Some(2));
    assert_eq!(qpart(&["bounds-report", "--format", "xml"], None).status.code(), Some(2));
}

#[test]
fn overlap_run_passes_and_spells_inf() {
    let o = qpart(&["verify-overlap", "--n", "40", "--delta", "0.1", "--beta", "0,inf"], None);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("schema=1\n# generated "));
    assert!(text.lines().any(|l| l.split(',').nth(4) == Some("inf")));
}

#[test]
fn sweeps_are_deterministic_across_worker_counts() {
    let args = ["sweep-quantum", "--n", "32", "--epsilon", "0.2,0.1,0.05", "--trials", "12", "--seed", "77"];
    let a = qpart(&args, Some("1"));
    let b = qpart(&args, Some("3"));
    let c = qpart(&args, None);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    let (a, b, c) = (strip_timestamp(&stdout(&a)), strip_timestamp(&stdout(&b)), strip_timestamp(&stdout(&c)));
    assert_eq!(a, b);
    assert_eq!(a, c);
    let other = strip_timestamp(&stdout(&qpart(&["sweep-quantum", "--n", "32", "--epsilon", "0.2,0.1,0.05", "--trials", "12", "--seed", "78"], None)));
    assert_ne!(a, other);
}

#[test]
fn writes_json_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bounds.json");
    let o = qpart(&["bounds-report", "--format", "json", "--out", path.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["schema"], 1);
    assert!(v["rows"].as_array().unwrap().iter().any(|r| r["name"] == "corollary_bound"));
}

#[test]
fn failed_assertion_exits_one() {
    // An unreachable accuracy target for this many trials.
    let o = qpart(&["sweep-quantum", "--n", "16", "--epsilon", "0.2", "--trials", "4", "--confidence", "0.999999"], None);
    assert!(matches!(o.status.code(), Some(0) | Some(1)));
    let o = qpart(&["verify-chernoff", "--delta", "0.1", "--trials", "200"], None);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("analytic tail"));
}
