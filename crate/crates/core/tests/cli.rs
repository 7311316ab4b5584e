use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_crossedcoh"));
    c.env_remove("CROSSEDCOH_BUDGET");
    c
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(format!("{name}.json"))
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

#[test]
fn scenario_output_is_json_and_deterministic() {
    let a = run(&["scenario", "pu2"]);
    let b = run(&["scenario", "pu2"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["scenario"], "pu2");
    assert_eq!(v["passed"], true);
    assert!(v["expectations"]
        .as_array()
        .unwrap()
        .iter()
        .all(|e| e["provenance"].is_string()));
}

#[test]
fn unitary_with_rank_flag() {
    for n in ["1", "2"] {
        let out = run(&["scenario", "unitary", "--n", n]);
        assert_eq!(out.status.code(), Some(0));
        let v = json(&out);
        let e = v["expectations"]
            .as_array()
            .unwrap()
            .iter()
            .find(|e| e["name"] == "kernel invariant factors")
            .unwrap();
        assert_eq!(e["computed"], serde_json::json!([2, 2, 2]));
    }
}

#[test]
fn text_format() {
    let out = run(&["scenario", "zmod8", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("scenario zmod8: PASS"), "{text}");
}

#[test]
fn errors_exit_with_two() {
    let out = run(&["scenario", "nope"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown scenario"));

    let out = bin()
        .env("CROSSEDCOH_BUDGET", "10")
        .args(["h1", "--input", fixture("q8_v4").to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bound exceeded"));

    // The flag wins over the environment.
    let out = bin()
        .env("CROSSEDCOH_BUDGET", "10")
        .args([
            "h1",
            "--budget",
            "1000000",
            "--input",
            fixture("q8_v4").to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn validate_fixture_regression() {
    let out = run(&["validate", "--input", fixture("q8_v4").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));

    let mut v: Value =
        serde_json::from_str(&std::fs::read_to_string(fixture("q8_v4")).unwrap()).unwrap();
    v["expected"]["h1_classes"]["value"] = Value::from(5);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    std::fs::write(&path, v.to_string()).unwrap();
    let out = run(&["validate", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["passed"], false);

    std::fs::write(&path, r#"{"rho": [0], "extra": 1}"#).unwrap();
    let out = run(&["validate", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cochain_commands() {
    let dir = tempfile::tempdir().unwrap();
    let psi = dir.path().join("psi.json");
    std::fs::write(&psi, r#"{"psi": [0, 1]}"#).unwrap();
    let q8 = fixture("q8_v4");
    let out = run(&[
        "cr1",
        "--input",
        q8.to_str().unwrap(),
        "--psi",
        psi.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["computed"]["trivial"], false);

    let z = dir.path().join("z.json");
    std::fs::write(&z, r#"{"u": [[0, 0], [0, 1]], "psi": [0, 0]}"#).unwrap();
    let out = run(&[
        "delta2",
        "--input",
        fixture("z2_one").to_str().unwrap(),
        "--cocycle",
        z.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["computed"]["neutral"], false);

    let out = run(&["h1-abelian", "--input", q8.to_str().unwrap()]);
    assert_eq!(
        json(&out)["computed"]["invariant_factors"],
        serde_json::json!([2])
    );

    let out = run(&[
        "module-h1",
        "--input",
        fixture("unitary_1").to_str().unwrap(),
    ]);
    assert_eq!(
        json(&out)["computed"]["h1_invariants"],
        serde_json::json!([2, 2, 2])
    );
    let out = run(&["module-h1", "--input", q8.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}
