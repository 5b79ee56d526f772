use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ordbound"))
        .args(args)
        .output()
        .unwrap()
}

fn json(args: &[&str]) -> Value {
    let o = run(args);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn invariants_from_gens_and_gaps_agree() {
    let a = json(&["invariants", "--gens", "3,5,7"]);
    let b = json(&["invariants", "--gaps", "1,2,4"]);
    assert_eq!(a, b);
    assert_eq!(a["e"], 3);
    assert_eq!(a["c"], 5);
}

#[test]
fn json_input() {
    let v = json(&["predict", "--json", r#"{"gens":[8,10,12,13]}"#]);
    assert_eq!(v["kind"], "exact");
}

#[test]
fn sm_reports_oracle_and_rules() {
    let v = json(&["sm", "--gens", "8,10,12,13"]);
    assert_eq!(v["oracle_sm"], 46);
    assert!(v["rules"].as_object().unwrap().contains_key("Rem2.4.2"));
}

#[test]
fn nu_table_shape() {
    let v = json(&["nu", "--gens", "3,5", "--upto", "20"]);
    assert_eq!(v["g"], 4);
    assert_eq!(v["entries"][1], serde_json::json!([1, 3, 2]));
    assert!(
        v["entries"].as_array().unwrap().last().unwrap()[1]
            .as_u64()
            .unwrap()
            >= 20
    );
}

#[test]
fn suzuki_record() {
    let v = json(&["suzuki", "--n", "1"]);
    assert_eq!(
        v["apery"],
        serde_json::json!([0, 10, 12, 13, 22, 23, 25, 35])
    );
    assert_eq!(v["oracle_sm"], 46);
    assert_eq!(v["symmetric"], true);
}

#[test]
fn enumerate_lines_and_filter() {
    let o = run(&["enumerate", "--genus", "4"]);
    assert_eq!(
        String::from_utf8(o.stdout).unwrap().lines().count(),
        1 + 2 + 4 + 7
    );
    let o = run(&["enumerate", "--genus", "4", "--filter", "symmetric,e=3"]);
    for line in String::from_utf8(o.stdout).unwrap().lines() {
        let v: Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["invariants"]["flags"]["symmetric"], true);
        assert_eq!(v["invariants"]["e"], 3);
    }
}

#[test]
fn verify_writes_csv_and_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.csv");
    let o = run(&[
        "verify",
        "--genus",
        "6",
        "--check",
        "predictor,tail",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 1 + 49);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(
        run(&["verify", "--genus", "3", "--check", "nope"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["invariants", "--gens", "4,6"]).status.code(), Some(2));
    assert_eq!(run(&["invariants"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--genus", "99"]).status.code(), Some(2));
}
