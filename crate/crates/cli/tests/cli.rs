use std::path::Path;
use std::process::{Command, Output};

use milnor::io::{generators_from_json, representation_from_json, representation_to_json};
use serde_json::Value;

fn milnor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_milnor"))
        .args(args)
        .env_remove("MILNOR_CONFIG")
        .output()
        .unwrap()
}

fn stdout_json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn stderr_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stderr).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

const IDENTITY_GENUS_2: &str = r#"{"genus": 2, "pairs": [
    {"A": [[1, 0], [0, 1]], "B": [[1, 0], [0, 1]]},
    {"A": [[1, 0], [0, 1]], "B": [[1, 0], [0, 1]]}]}"#;

#[test]
fn siginfo_hurwitz() {
    let v = stdout_json(&milnor(&["siginfo", "0;2,3,7"]));
    assert_eq!(v["coarea"], "1/42");
    assert_eq!(v["e"], 1);
    assert_eq!(v["m"], 1);
    assert_eq!(v["n"], 1);
    assert_eq!(v["admits_odd"], true);
    assert_eq!(v["genus_bounds"]["lower"], 2);
    assert_eq!(v["version"], milnor::VERSION);
    assert_eq!(v["config"]["relation"], 1e-8);
}

#[test]
fn siginfo_big_upper_bound_is_exact() {
    let v = stdout_json(&milnor(&["siginfo", "0;2,3,7", "--n", "2"]));
    let expected = num_bigint::BigInt::from(3).pow(84).to_string();
    assert_eq!(v["genus_bounds"]["upper"], expected);
}

#[test]
fn euler_of_identity_representation() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("id.json");
    std::fs::write(&file, IDENTITY_GENUS_2).unwrap();
    let v = stdout_json(&milnor(&["euler", path(&file)]));
    assert_eq!(v["euler"], 0);
    assert_eq!(v["parity"], 1);
}

#[test]
fn construct_then_euler() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("rep.json");
    stdout_json(&milnor(&[
        "construct",
        "--genus",
        "2",
        "--euler",
        "1",
        "-o",
        path(&file),
    ]));
    let v = stdout_json(&milnor(&["euler", path(&file)]));
    assert_eq!(v["euler"], 1);
    assert_eq!(v["parity"], -1);
    let v = stdout_json(&milnor(&["parity", path(&file)]));
    assert_eq!(v["parity"], -1);
}

#[test]
fn written_representations_reread_bit_exact() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    stdout_json(&milnor(&[
        "construct",
        "--genus",
        "3",
        "--euler",
        "-2",
        "--elliptic-first",
        "-o",
        path(&a),
    ]));
    stdout_json(&milnor(&[
        "perturb",
        path(&a),
        "--t",
        "0.25",
        "-o",
        path(&b),
    ]));
    for file in [&a, &b] {
        let text = std::fs::read_to_string(file).unwrap();
        let rho = representation_from_json(&text).unwrap();
        assert_eq!(format!("{}\n", representation_to_json(&rho)), text);
    }
}

#[test]
fn perturb_snap_writes_witness() {
    let dir = tempfile::tempdir().unwrap();
    let rep = dir.path().join("e.json");
    let out = dir.path().join("s.json");
    let witness = dir.path().join("w.json");
    stdout_json(&milnor(&[
        "construct",
        "--genus",
        "3",
        "--euler",
        "1",
        "--elliptic-first",
        "-o",
        path(&rep),
    ]));
    let v = stdout_json(&milnor(&[
        "perturb",
        path(&rep),
        "--snap",
        "--qmax",
        "16",
        "-o",
        path(&out),
        "--witness",
        path(&witness),
    ]));
    assert_eq!(v["euler"], 1);
    let w: Value = serde_json::from_str(&std::fs::read_to_string(&witness).unwrap()).unwrap();
    assert!(w["q"].as_u64().unwrap() <= 16);
    assert!(w["residual"].as_f64().unwrap() <= 1e-7);
    let snapped = stdout_json(&milnor(&["euler", path(&out)]));
    assert_eq!(snapped["euler"], 1);
}

#[test]
fn perturb_needs_a_mode() {
    let out = milnor(&["perturb", "x.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"], "Usage");
}

#[test]
fn realize_writes_generators_and_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("g.json");
    let v = stdout_json(&milnor(&["realize", "1;2,2,2", "-o", path(&file)]));
    assert_eq!(v["certificate"]["passed"], true);
    assert_eq!(v["certificate"]["lift_exponent"], 3);
    let text = std::fs::read_to_string(&file).unwrap();
    let gens = generators_from_json(&text).unwrap();
    assert_eq!(gens.q.len(), 3);
    assert_eq!(gens.handles.len(), 1);
    let raw: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(raw["certificate"]["passed"], true);
}

#[test]
fn oracles() {
    let v = stdout_json(&milnor(&["oracle-z", "0;2,3,inf"]));
    assert_eq!(v["order"], "infinite");
    assert_eq!(v["e_gamma"], 0);
    let v = stdout_json(&milnor(&["oracle-z", "2;-"]));
    assert_eq!(v["order"], 2);
    let v = stdout_json(&milnor(&["oracle-h", "0;2,3,7"]));
    assert_eq!(v["trivial"], true);
    let v = stdout_json(&milnor(&["oracle-h", "0;4,4,3"]));
    assert_eq!(v["trivial"], false);
    assert_eq!(v["agrees"], true);
}

#[test]
fn verify_reports_and_fails_on_broken_relation() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.json");
    stdout_json(&milnor(&[
        "construct",
        "--genus",
        "2",
        "--euler",
        "2",
        "-o",
        path(&good),
    ]));
    let v = stdout_json(&milnor(&["verify", path(&good), "--jorgensen-depth", "3"]));
    assert_eq!(v["passed"], true);
    assert_eq!(v["jorgensen"]["nondiscreteness_certificate"], Value::Null);
    assert!(v["jorgensen"]["generator_min"]["value"].as_f64().unwrap() >= 1.0 - 1e-9);

    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        r#"{"genus": 2, "pairs": [{"A": [[2, 0], [0, 0.5]], "B": [[1, 1], [0, 1]]},
            {"A": [[1, 0], [0, 1]], "B": [[1, 0], [0, 1]]}]}"#,
    )
    .unwrap();
    let out = milnor(&["verify", path(&bad)]);
    assert_eq!(out.status.code(), Some(3));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["relation_ok"], false);
    let out = milnor(&["euler", path(&bad)]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(stderr_json(&out)["error"], "RelationViolated");
}

#[test]
fn invalid_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, "{\"genus\": 1").unwrap();
    for args in [
        vec!["siginfo", "0;2,x"],
        vec!["siginfo", "0;2,2,2,2"],
        vec!["euler", path(&broken)],
        vec!["euler", "does-not-exist.json"],
        vec!["construct", "--genus", "2", "--euler", "3"],
        vec!["construct", "--genus", "1", "--euler", "0"],
        vec!["enumerate", "--euler-max", "0"],
        vec!["nonsense"],
    ] {
        let out = milnor(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let err = stderr_json(&out);
        assert_eq!(err["exit_code"], 2);
        assert!(err["message"].is_string());
    }
}

#[test]
fn config_from_flag_and_environment() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("config.json");
    std::fs::write(&config, r#"{"relation": 1e-30, "seed": 11}"#).unwrap();
    let rep = dir.path().join("rep.json");
    stdout_json(&milnor(&[
        "construct",
        "--genus",
        "2",
        "--euler",
        "1",
        "-o",
        path(&rep),
    ]));

    let out = milnor(&["--config", path(&config), "euler", path(&rep)]);
    assert_eq!(out.status.code(), Some(3));

    let out = Command::new(env!("CARGO_BIN_EXE_milnor"))
        .args(["siginfo", "1;2"])
        .env("MILNOR_CONFIG", &config)
        .output()
        .unwrap();
    let v = stdout_json(&out);
    assert_eq!(v["config"]["seed"], 11);
    assert_eq!(v["config"]["relation"], 1e-30);

    std::fs::write(&config, r#"{"rounding": -1}"#).unwrap();
    let out = milnor(&["--config", path(&config), "siginfo", "1;2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn enumerate_contains_listed_signatures() {
    let v = stdout_json(&milnor(&["enumerate", "--euler-max", "2"]));
    let names: Vec<&str> = v["signatures"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["signature"].as_str().unwrap())
        .collect();
    for s in ["0;2,3,7", "1;2", "2;-", "0;2,3,10"] {
        assert!(names.contains(&s), "{s}");
    }
    assert_eq!(v["count"], names.len());
}
