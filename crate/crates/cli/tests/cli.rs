use std::process::{Command, Output};

use serde_json::Value;

fn qpart(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qpart"))
        .args(args)
        .env("QPART_WORKERS", "2")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.push("--json");
    let out = qpart(&all);
    let v = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    (out.status.code().unwrap(), v)
}

#[test]
fn count_two_classes_agree() {
    let (code, v) = json(&["count", "--class", "T,E", "--r", "2", "--i", "2", "--n", "4"]);
    assert_eq!(code, 0);
    let rows = v["table"]["rows"].as_array().unwrap();
    assert_eq!(rows.last().unwrap(), &serde_json::json!(["4", "2", "2"]));
}

#[test]
fn count_at_zero_is_a_row_of_ones() {
    let (code, v) = json(&["count", "--r", "3", "--i", "1", "--n", "0"]);
    assert_eq!(code, 0);
    assert_eq!(v["table"]["rows"], serde_json::json!([["0", "1", "1", "1", "1", "1", "1"]]));
}

#[test]
fn count_all_six_classes() {
    let (code, v) = json(&["count", "--class", "all", "--r", "3", "--i", "2", "--n", "20"]);
    assert_eq!(code, 0);
    for row in v["table"]["rows"].as_array().unwrap() {
        let cells = row.as_array().unwrap();
        assert!(cells[1..].iter().all(|c| c == &cells[1]));
    }
}

#[test]
fn count_csv() {
    let out = qpart(&["count", "--class", "T,D", "--r", "2", "--i", "1", "--n", "2", "--csv"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "n,\"T_{2,1}\",\"D_{2,1}\"\n0,1,1\n1,0,0\n2,1,1\n");
}

#[test]
fn verify_passes_and_fails_with_witness() {
    let (code, v) = json(&["verify", "--identity", "AGP", "--r", "4", "--i", "2", "--order", "60"]);
    assert_eq!((code, v["status"].as_str()), (0, Some("pass")));
    let (code, v) = json(&["verify", "--identity", "BR33", "--r", "3", "--i", "1", "--uncorrected"]);
    assert_eq!(code, 1);
    let w = &v["cases"][0]["witness"];
    assert_eq!(w["kind"], "coefficient");
    assert!(w["power"].as_u64().unwrap() <= 40);
    assert_ne!(w["expected"], w["actual"]);
    let (code, _) = json(&["verify", "--identity", "JTP", "--z", "2", "--step", "5", "--order", "40"]);
    assert_eq!(code, 0);
}

#[test]
fn verify_everything_up_to_r_three() {
    let (code, v) = json(&["verify", "--identity", "all", "--r", "3", "--order", "40"]);
    assert_eq!(code, 0);
    assert!(v["cases"].as_array().unwrap().len() > 30);
}

#[test]
fn dissect_two_horizontal_rectangles() {
    let (code, v) = json(&["dissect", "6,5,5,4,3", "--plan", "HH"]);
    assert_eq!(code, 0);
    let blocks = v["data"]["dissection"]["blocks"].as_array().unwrap();
    let sizes: Vec<(u64, u64)> =
        blocks.iter().map(|b| (b["cols"].as_u64().unwrap(), b["rows"].as_u64().unwrap())).collect();
    assert_eq!(sizes, [(4, 3), (3, 2)]);
}

#[test]
fn dissect_empty_partition() {
    let out = qpart(&["dissect", "-", "--plan", "S"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("-\n"));
}

#[test]
fn bijection_check() {
    let (code, v) = json(&["bijection", "--r", "3", "--n", "12", "--check"]);
    assert_eq!(code, 0);
    assert_eq!(v["cases"].as_array().unwrap().len(), 13);
}

#[test]
fn bijection_listing() {
    let (code, v) = json(&["bijection", "--r", "3", "--n", "7"]);
    assert_eq!(code, 0);
    let rows = v["table"]["rows"].as_array().unwrap();
    assert!(rows.contains(&serde_json::json!(["3,3,1", "2,2,2,1", "rotate square 1"])));
}

#[test]
fn blocks_worked_example() {
    let (code, v) = json(&["blocks", "6,5,5,4,3", "--r", "3", "--i", "1"]);
    assert_eq!(code, 0);
    assert_eq!(
        v["data"]["decomposition"],
        serde_json::json!({"blocks": [[3], [4, 5], [5, 6]], "f": [1, 2, 4], "ell": 2})
    );
    assert_eq!(v["data"]["in_ideal"], false);
    let (code, _) = json(&["blocks", "--r", "3", "--i", "2", "--n", "14"]);
    assert_eq!(code, 0);
}

#[test]
fn bailey_pipeline() {
    let (code, v) = json(&["bailey", "--r", "3", "--i", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["data"]["limit_index"], 10);
    assert_eq!(v["data"]["schedule"], serde_json::json!(["chain", "chain", "lattice"]));
    assert_eq!(v["params"]["e"], 1);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(qpart(&["dissect", "1,3", "--plan", "S"]).status.code(), Some(2));
    assert_eq!(qpart(&["count", "--r", "3"]).status.code(), Some(2));
    assert_eq!(qpart(&["count", "--class", "X", "--r", "3", "--i", "1", "--n", "3"]).status.code(), Some(2));
    assert_eq!(
        qpart(&["verify", "--identity", "AG", "--r", "3", "--i", "1", "--uncorrected"]).status.code(),
        Some(2)
    );
    assert_eq!(qpart(&["bailey", "--r", "3", "--i", "1", "--e", "0"]).status.code(), Some(2));
    assert_eq!(
        qpart(&["verify", "--identity", "AG", "--r", "3", "--i", "1", "--csv"]).status.code(),
        Some(2)
    );
    let bad_workers = Command::new(env!("CARGO_BIN_EXE_qpart"))
        .args(["count", "--r", "2", "--i", "1", "--n", "1"])
        .env("QPART_WORKERS", "many")
        .output()
        .unwrap();
    assert_eq!(bad_workers.status.code(), Some(2));
}

#[test]
fn json_is_byte_identical_across_runs() {
    let args = ["count", "--r", "4", "--i", "2", "--n", "15", "--json"];
    let a = qpart(&args);
    let b = Command::new(env!("CARGO_BIN_EXE_qpart")).args(args).env("QPART_WORKERS", "1").output().unwrap();
    assert_eq!(a.stdout, b.stdout);
    assert!(!String::from_utf8(a.stdout).unwrap().contains("time"));
    assert!(String::from_utf8(a.stderr).unwrap().contains("finished in"));
}
