use std::time::Instant;

use crossedcoh::io::from_str;
use crossedcoh::scenario::*;
use crossedcoh::Error;
use serde_json::json;

fn quick() -> ScenarioOptions {
    ScenarioOptions {
        random: 12,
        ..ScenarioOptions::default()
    }
}

fn run(name: &str) -> Report {
    let t = Instant::now();
    let r = run_scenario(name, &quick()).unwrap();
    eprintln!("{name}: {:?}\n{r}", t.elapsed());
    r
}

#[test]
fn every_scenario_passes() {
    for name in SCENARIOS {
        let r = run(name);
        assert!(r.passed, "{name}\n{r}");
        assert!(!r.expectations.is_empty());
    }
}

#[test]
fn unitary_for_small_ranks() {
    for n in 1..=3 {
        let r = run_scenario("unitary", &ScenarioOptions { n, ..quick() }).unwrap();
        assert!(r.passed, "{r}");
        assert_eq!(r.parameters["n"], json!(n));
    }
}

#[test]
fn unknown_scenario_is_an_error() {
    assert_eq!(
        run_scenario("nope", &quick()).unwrap_err(),
        Error::UnknownScenario("nope".into())
    );
}

#[test]
fn reports_are_deterministic() {
    for name in ["pu2", "zmod8", "axioms"] {
        let a = run_scenario(name, &quick()).unwrap().to_json();
        let b = run_scenario(name, &quick()).unwrap().to_json();
        assert_eq!(a, b, "{name}");
    }
    let single = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();
    let a = single.install(|| run_scenario("axioms", &quick()).unwrap().to_json());
    assert_eq!(a, run_scenario("axioms", &quick()).unwrap().to_json());
}

#[test]
fn pu2_reports_the_witnesses() {
    let r = run_scenario("pu2", &quick()).unwrap();
    let get = |n: &str| r.expectations.iter().find(|e| e.name == n).unwrap().clone();
    assert_eq!(get("braiding preserved").computed, json!(false));
    assert!(get("braiding witness").passed);
    assert!(r.computed.contains_key("non-homomorphism witness"));
}

#[test]
fn shipped_fixtures_match_hand_values() {
    let fixtures = shipped_fixtures().unwrap();
    assert_eq!(fixtures.len(), 11);
    let value = |name: &str, key: &str| {
        let f = fixtures.iter().find(|f| f.name == name).unwrap();
        f.expected.as_ref().unwrap()[key]["value"].clone()
    };
    assert_eq!(value("q8_v4", "h1_classes"), json!(2));
    assert_eq!(value("q8_v4", "h1_invariants"), json!([2]));
    assert_eq!(value("one_v4", "h1_classes"), json!(4));
    assert_eq!(value("z2_one", "h1_classes"), json!(2));
    assert_eq!(value("z8_klein", "c_h0_invariants"), json!([2]));
    for n in 1..=3 {
        assert_eq!(
            value(&format!("unitary_{n}"), "h1_invariants"),
            json!(vec![2; 2 * n + 1])
        );
    }
    for f in &fixtures {
        let r = check_fixture(f, BUDGET).unwrap();
        assert!(r.passed, "{r}");
    }
}

const BUDGET: u128 = crossedcoh::cochain::DEFAULT_BUDGET;

#[test]
fn wrong_expectation_fails_the_report() {
    let mut f = shipped_fixtures()
        .unwrap()
        .into_iter()
        .find(|f| f.name == "q8_v4")
        .unwrap();
    f.expected.as_mut().unwrap()["h1_classes"]["value"] = json!(3);
    let r = check_fixture(&f, BUDGET).unwrap();
    assert!(!r.passed);
    assert_eq!(r.expectations.iter().filter(|e| !e.passed).count(), 1);

    f.expected = Some(json!({"h1_classes": {"value": 2}}));
    assert!(matches!(
        check_fixture(&f, BUDGET),
        Err(Error::Schema { .. })
    ));
    f.expected = Some(json!({"colour": {"value": 2, "provenance": "derived"}}));
    assert!(matches!(
        check_fixture(&f, BUDGET),
        Err(Error::Schema { .. })
    ));
    let bad = r#"{"name": "x", "kind": "module", "payload": {"generators": 1}}"#;
    let f: crossedcoh::io::Fixture = from_str(bad).unwrap();
    assert!(matches!(
        check_fixture(&f, BUDGET),
        Err(Error::Schema { .. })
    ));
}
