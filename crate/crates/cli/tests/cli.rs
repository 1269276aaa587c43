use std::path::PathBuf;
use std::process::{Command, Output};

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/data/corpus").join(format!("{name}.perm"))
}

fn drgt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_drgt"))
        .args(args)
        .env("RUST_LOG", "warn")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn derangement_on_s3() {
    let f = corpus("s3_natural");
    let o = drgt(&["derangement", f.to_str().unwrap(), "0", "1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("derangement mapping 0 to 1: (0 1 2)"));
}

#[test]
fn json_report_has_fixed_keys() {
    let f = corpus("c4_natural");
    let o = drgt(&["--json", "orbital", f.to_str().unwrap(), "0"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["command"], "orbital");
    assert!(v.get("fixed_point_histogram").is_some());
    assert_eq!(v["details"]["primitive"], false);
}

#[test]
fn fixne1_sweep_on_frobenius() {
    let f = corpus("frobenius21_7");
    let o = drgt(&["fixne1", f.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("6 pairs checked, 0 violations"));
}

#[test]
fn remark_c_finds_pair() {
    let o = drgt(&["remark-c"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("no derangement among 5 candidates"));
}

#[test]
fn bad_input_fails_cleanly() {
    let o = drgt(&["orbital", "/nonexistent/file.perm", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
    let f = corpus("s3_natural");
    let o = drgt(&["derangement", f.to_str().unwrap(), "0", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn memory_budget_points_to_low_mem() {
    let o = drgt(&["--no-cache", "--mem-budget", "10", "build"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--low-mem"));
}
