use std::process::{Command, Output};

use serde_json::Value;

fn qca(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qca")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

/// The machine-readable block after `--- json`.
fn json(o: &Output) -> Value {
    let text = stdout(o);
    let (_, block) = text.split_once("--- json\n").expect("json block present");
    serde_json::from_str(block).expect("valid json")
}

#[test]
fn index_of_a_qubit_shift() {
    let o = qca(&["index", "--d", "2", "--sites", "6", "--qca", "shift:1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let j = json(&o);
    assert_eq!(j["results"]["ind"]["exact"], "2/1");
    assert_eq!(j["passed"], true);
    assert!(stdout(&o).contains("ind"));
}

#[test]
fn index_with_explicit_intervals() {
    let o = qca(&["index", "--d", "3", "--sites", "6", "--qca", "shift:-1", "--interval", "A:0:2", "B:2:2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(json(&o)["results"]["ind"]["exact"], "1/3");
}

#[test]
fn classify_z2_witness() {
    let o = qca(&["classify-z2", "--d", "4", "--chi", "2", "--pi0", "1", "--pi1", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("(1,2,4,0,9,7)"));
}

#[test]
fn classify_z2_reports_infeasible_pairs() {
    // chi = 0 admits only pi1 = 1
    let o = qca(&["classify-z2", "--d", "4", "--chi", "0", "--pi0", "1", "--pi1", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["results"]["feasible"], false);
    let o = qca(&["classify-z2", "--d", "4", "--chi", "0", "--pi0", "1", "--pi1", "1"]);
    assert_eq!(json(&o)["results"]["feasible"], true);
}

#[test]
fn collisions_at_order_four() {
    let o = qca(&["search-collisions", "--N", "4", "--max-dim", "4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    // the listed pair is the minimal cyclic shift of (2,1,1,0) ~ (1,2,0,1)
    assert!(text.contains("(0,1,1,2) ~ (0,2,1,1)"), "{text}");
    assert!(text.contains("(4,-4,4,-4)"));
}

#[test]
fn no_collisions_at_prime_order() {
    let o = qca(&["search-collisions", "--N", "3", "--max-dim", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["results"]["pairs"], "0");
}

#[test]
fn spi_of_a_shift_with_z2_symmetry() {
    let o = qca(&["spi", "--d", "4", "--sites", "5", "--qca", "shift:1", "--rep", "z2:0,0,0,1", "--interval", "A:1:2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let j = json(&o);
    assert_eq!(j["results"]["pi0"]["exact"], "4/1");
    assert_eq!(j["results"]["pi1"]["exact"], "2/1");
}

#[test]
fn transport_of_a_shift() {
    let o = qca(&["transport", "--d", "2", "--N", "2", "--qca", "shift:1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let nu = json(&o)["results"]["nu"].as_f64().unwrap();
    assert!((nu - std::f64::consts::LN_2).abs() < 1e-8);
}

#[test]
fn doubled_check_on_a_small_ring() {
    let o = qca(&["doubled-check", "--d", "2", "--sites", "4", "--qca", "shift:1", "--interval", "A:1:2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(json(&o)["results"]["ind_doubled"]["exact"], "2/1");
}

#[test]
fn reports_are_deterministic() {
    let args = ["index", "--d", "2", "--sites", "6", "--qca", "shift:1*random-brickwork:3", "--seed", "5"];
    let first = qca(&args);
    let second = qca(&args);
    assert_eq!(first.status.code(), Some(0), "{}", stdout(&first));
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn out_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.txt");
    let o = qca(&["index", "--d", "2", "--sites", "6", "--qca", "shift:1", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read(&path).unwrap(), o.stdout);
}

#[test]
fn qca_from_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("u.toml");
    std::fs::write(
        &path,
        "d = 2\nn_sites = 6\n\n[[layer]]\nkind = \"shift\"\nsteps = 1\n\n[[layer]]\nkind = \"random-brickwork\"\nseed = 7\n",
    )
    .unwrap();
    let o = qca(&["index", "--qca", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(json(&o)["results"]["ind"]["exact"], "2/1");
}

#[test]
fn validation_errors_exit_with_one() {
    for args in [
        &["index", "--d", "2", "--sites", "6"][..],
        &["index", "--d", "2", "--sites", "6", "--qca", "warp:3"][..],
        &["index", "--d", "2", "--sites", "6", "--qca", "shift:1", "--interval", "C:0:2"][..],
        &["classify-z2", "--d", "4", "--chi", "2", "--pi0", "0/1", "--pi1", "2"][..],
        &["spi", "--d", "2", "--sites", "6", "--qca", "shift:1", "--rep", "z2:0,0,0,1"][..],
        &["frobnicate"][..],
    ] {
        let o = qca(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn help_exits_with_zero() {
    let o = qca(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("doubled-check"));
}

#[test]
fn verify_reports_every_invariant() {
    let o = qca(&["verify", "--seed", "1"]);
    let j = json(&o);
    let checks = j["checks"].as_array().unwrap();
    assert!(checks.len() >= 10);
    for c in checks {
        assert_eq!(c["passed"], true, "{c}");
    }
    assert_eq!(o.status.code(), Some(0));
}
