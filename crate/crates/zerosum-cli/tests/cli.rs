//! End-to-end checks of the command-line front end: report schema, exit
//! codes, determinism, and the documented examples.

use std::process::{Command, Output};

fn zerosum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zerosum"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn atoms_example() {
    let out = zerosum(&["atoms", "--ground", "[-2,-1,1,2]"]);
    assert!(out.status.success());
    let report = json(&out);
    assert_eq!(report["schema"], "zerosum-report/1");
    assert_eq!(report["results"]["atoms"].as_array().unwrap().len(), 4);
    assert_eq!(report["results"]["davenport"]["value"], 3);
    assert_eq!(report["results"]["davenport"]["label"], "exact");
}

#[test]
fn factorize_lengths_example() {
    let out = zerosum(&[
        "factorize",
        "--element",
        "3^2 2^3 -2^3 -1^6",
        "--ground",
        "{-2,-1,2,3}",
        "--lengths-only",
    ]);
    assert!(out.status.success());
    let report = json(&out);
    assert_eq!(report["results"]["lengths"], serde_json::json!([4, 5]));
    assert_eq!(report["results"]["elasticity"], "5/4");
}

#[test]
fn elasticity_example() {
    let out = zerosum(&[
        "elasticity",
        "--spec",
        r#"{"finite":[-2,-1],"aps":[{"start":1,"step":2}]}"#,
    ]);
    assert!(out.status.success());
    let report = json(&out);
    assert_eq!(report["results"]["rho"], "2/1");
    assert_eq!(report["results"]["accepted"], false);
}

#[test]
fn witness_example() {
    let out = zerosum(&[
        "witness",
        "tame-growth",
        "--spec",
        r#"{"finite":[],"aps":[{"start":1,"step":1}],"downs":[{"start":-1,"step":1}]}"#,
        "--n",
        "3",
    ]);
    assert!(out.status.success());
    let report = json(&out);
    assert_eq!(report["results"]["lengths"], serde_json::json!([2, 6]));
    assert_eq!(report["results"]["mode"], "enumerated");
}

#[test]
fn invalid_input_exits_3() {
    let out = zerosum(&["factorize", "--element", "1", "--ground", "[-1,1]"]);
    assert_eq!(out.status.code(), Some(3));
    // the standard parser rejects downward progressions
    let out = zerosum(&[
        "elasticity",
        "--spec",
        r#"{"finite":[],"aps":[{"start":1,"step":1}],"downs":[{"start":-1,"step":1}]}"#,
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn budget_exhaustion_exits_2_with_partial_report() {
    let out = zerosum(&[
        "atoms",
        "--ground",
        "[-6,-5,-4,-3,-2,-1,1,2,3,4,5,6]",
        "--budget-nodes",
        "50",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let report = json(&out);
    assert_eq!(report["complete"], false);
    assert!(report["results"]["partial_atoms"].is_object());
}

#[test]
fn reports_are_byte_identical() {
    let args = [
        "invariants",
        "--element",
        "3^2 2^3 -2^3 -1^6",
        "--ground",
        "{-2,-1,2,3}",
        "--which",
        "c,cmon,delta",
    ];
    let a = zerosum(&args);
    let b = zerosum(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn batch_isolates_failures() {
    let dir = std::env::temp_dir().join("zerosum-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let manifest = dir.join("manifest.json");
    std::fs::write(
        &manifest,
        serde_json::json!({
            "jobs": [
                {"args": ["atoms", "--ground", "[-1,1]"]},
                {"args": ["factorize", "--element", "1", "--ground", "[-1,1]"]},
                {"args": ["rhok", "--ground", "[-2,-1,1,2]", "--k", "2"]},
            ]
        })
        .to_string(),
    )
    .unwrap();
    let out = zerosum(&["batch", manifest.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3)); // worst per-job code
    let report = json(&out);
    let jobs = report["results"]["jobs"].as_array().unwrap();
    assert_eq!(jobs.len(), 3);
    assert_eq!(jobs[0]["exit"], 0);
    assert_eq!(jobs[1]["exit"], 3);
    assert_eq!(jobs[2]["exit"], 0);

    // empty manifest: empty report, success
    let empty = dir.join("empty.json");
    std::fs::write(&empty, r#"{"jobs": []}"#).unwrap();
    let out = zerosum(&["batch", empty.to_str().unwrap()]);
    assert!(out.status.success());
}

#[test]
fn csv_flattening() {
    let out = zerosum(&["--csv", "rhok", "--ground", "[-2,-1,1,2]", "--k", "2"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("results.rho_k.value,")));
}

#[test]
fn family_and_transfer_commands() {
    let out = zerosum(&["family", "two-lengths", "--params", "d=2,k=1"]);
    assert!(out.status.success());
    let report = json(&out);
    assert_eq!(report["results"]["element"], "-2^3 -1^6 2^3 3^2");

    let out = zerosum(&["transfer", "cyclic", "--element", "2^2 -4", "--n", "4"]);
    assert!(out.status.success());
    let report = json(&out);
    assert_eq!(report["results"]["image"], "2^2");
    assert_eq!(report["results"]["class_group_gcd"], 2);

    let out = zerosum(&[
        "structure-check",
        "--spec",
        r#"{"finite":[-2,-1],"aps":[{"start":1,"step":2}]}"#,
    ]);
    assert!(out.status.success());
    assert_eq!(json(&out)["results"]["structured"], true);

    let out = zerosum(&["chains", "m2", "--element", "6 7 -2^5 -1^3", "--ground", "[-2,-1,6,7]"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["results"]["case"], "chain");
}
