use std::process::{Command, Output};

use serde_json::Value;

fn z4trace(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_z4trace"))
        .args(args)
        .env_remove("Z4TRACE_MAX_M")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = z4trace(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_str(&stdout(&out)).unwrap()
}

fn pairs(v: &Value) -> Vec<(u64, u64)> {
    serde_json::from_value(v.clone()).unwrap()
}

#[test]
fn ring_info_small_degrees() {
    let out = z4trace(&["ring-info", "--m", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(
        text.contains("|R| = 16, |T| = 4, |R*| = 12, |I| = 4"),
        "{text}"
    );

    let v = json(&["ring-info", "--m", "1", "--format", "json"]);
    assert_eq!(v["m"], 1);

    assert_eq!(z4trace(&["ring-info", "--m", "0"]).status.code(), Some(2));
    assert_eq!(z4trace(&["ring-info", "--m", "13"]).status.code(), Some(2));
}

#[test]
fn build_skew_m2() {
    let v = json(&["build", "--m", "2", "--kind", "skew", "--format", "json"]);
    assert_eq!(v["n"], 6);
    assert_eq!(pairs(&v["enumerator"]), vec![(0, 1), (6, 12), (8, 3)]);
    assert_eq!(v["analytic_match"], true);
    let g = &v["gray"];
    assert_eq!(
        (
            g["length"].as_u64(),
            g["nominal_size"].as_u64(),
            g["min_distance"].as_u64()
        ),
        (Some(12), Some(16), Some(6))
    );
    assert_eq!(g["griesmer"]["meets"], true);
}

#[test]
fn build_support_affine_m4() {
    let v = json(&[
        "build",
        "--m",
        "4",
        "--kind",
        "support",
        "--f",
        "affine:a=1,b=1",
        "--format",
        "json",
    ]);
    assert_eq!(v["n"], 8);
    assert_eq!(v["analytic_match"], true);
    let g = &v["gray"];
    assert_eq!(
        (
            g["length"].as_u64(),
            g["nominal_size"].as_u64(),
            g["min_distance"].as_u64()
        ),
        (Some(16), Some(256), Some(4))
    );
}

#[test]
fn build_support_plus_bent_m4() {
    let v = json(&[
        "build",
        "--m",
        "4",
        "--kind",
        "support-plus",
        "--f",
        "bent:auto",
        "--format",
        "json",
    ]);
    let weights: Vec<u64> = pairs(&v["enumerator"])
        .into_iter()
        .map(|(w, _)| w)
        .collect();
    assert_eq!(weights, vec![0, 64, 96, 128]);

    let csv = stdout(&z4trace(&[
        "build",
        "--m",
        "4",
        "--kind",
        "support-plus",
        "--f",
        "bent:auto",
        "--format",
        "csv",
    ]));
    assert_eq!(csv.lines().next(), Some("weight,enumerated,analytic"));
    assert!(csv.lines().any(|l| l == "96,240,240"), "{csv}");
}

#[test]
fn output_is_deterministic() {
    for args in [
        &[
            "build", "--m", "3", "--kind", "skew", "--seed", "7", "--format", "json",
        ][..],
        &[
            "build",
            "--m",
            "3",
            "--kind",
            "support",
            "--f",
            "gold:alpha=1,i=1",
            "--format",
            "json",
        ][..],
        &["verify", "thm-skew", "--m", "2..3"][..],
    ] {
        assert_eq!(z4trace(args).stdout, z4trace(args).stdout, "{args:?}");
    }
}

#[test]
fn config_round_trip() {
    let args = [
        "build",
        "--m",
        "3",
        "--kind",
        "support-plus",
        "--f",
        "semibent:auto",
        "--format",
        "json",
    ];
    let mut dump = args.to_vec();
    dump.push("--dump-config");
    let config = z4trace(&dump);
    assert!(config.status.success());

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.json");
    std::fs::write(&path, &config.stdout).unwrap();
    let from_file = z4trace(&["build", "--config", path.to_str().unwrap()]);
    assert!(from_file.status.success());
    assert_eq!(from_file.stdout, z4trace(&args).stdout);

    std::fs::write(&path, r#"{"m": 3, "kind": "skew", "colour": "red"}"#).unwrap();
    assert_eq!(
        z4trace(&["build", "--config", path.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn verify_exit_codes() {
    let gamma = z4trace(&["verify", "gamma", "--m", "2..8"]);
    assert_eq!(gamma.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&gamma)).unwrap();
    assert_eq!(v["pass"], true);

    assert_eq!(z4trace(&["verify", "rank"]).status.code(), Some(0));
    assert_eq!(
        z4trace(&["verify", "thm-skew", "--m", "2..5"])
            .status
            .code(),
        Some(0)
    );

    let support = z4trace(&["verify", "thm-support", "--m", "4..5", "--format", "text"]);
    assert_eq!(support.status.code(), Some(1));
    assert!(stdout(&support).contains("FAIL thm-support m=5"));
}

#[test]
fn budget_and_input_errors() {
    assert_eq!(
        z4trace(&["build", "--m", "9", "--kind", "skew"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        z4trace(&["build", "--m", "4", "--kind", "skew", "--max-m", "3"])
            .status
            .code(),
        Some(2)
    );
    let env = Command::new(env!("CARGO_BIN_EXE_z4trace"))
        .args(["build", "--m", "4", "--kind", "skew"])
        .env("Z4TRACE_MAX_M", "3")
        .output()
        .unwrap();
    assert_eq!(env.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&env.stderr).contains("budget"));

    assert_eq!(
        z4trace(&["verify", "thm-skew", "--m", "7"]).status.code(),
        Some(2)
    );
    assert_eq!(
        z4trace(&["build", "--m", "3", "--kind", "support", "--f", "foo"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        z4trace(&["build", "--m", "3", "--kind", "support"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        z4trace(&[
            "build",
            "--m",
            "3",
            "--kind",
            "skew",
            "--f",
            "affine:a=1,b=0"
        ])
        .status
        .code(),
        Some(2)
    );
}
