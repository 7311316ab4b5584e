use crossedcoh::fixtures;
use crossedcoh::group::FiniteGroup;
use crossedcoh::io::*;
use crossedcoh::modules::{build_unitary_example, build_z8_klein_sequence};
use crossedcoh::Error;

fn is_schema(e: &Error) -> bool {
    matches!(e, Error::Schema { .. })
}

#[test]
fn trivial_group_round_trips() {
    let g = FiniteGroup::trivial();
    let doc = GroupDoc::from_group(&g);
    let text = to_string(&doc);
    let back: GroupDoc = from_str(&text).unwrap();
    assert_eq!(back, doc);
    assert_eq!(back.to_group("g").unwrap(), g);

    let minimal: GroupDoc = from_str(r#"{"order": 1, "table": [[0]]}"#).unwrap();
    assert_eq!(minimal.to_group("g").unwrap().order(), 1);
}

#[test]
fn q8_document_parses_to_a_group() {
    let q8 = fixtures::q8();
    let text = to_string(&GroupDoc::from_group(&q8));
    let parsed = from_str::<GroupDoc>(&text).unwrap().to_group("q8").unwrap();
    assert_eq!(parsed, q8);
    assert_eq!(parsed.center().len(), 2);
    assert!(!parsed.is_abelian());
}

#[test]
fn unknown_fields_are_rejected() {
    let e = from_str::<GroupDoc>(r#"{"order": 1, "table": [[0]], "colour": "red"}"#).unwrap_err();
    assert!(is_schema(&e), "{e}");

    let cm = CrossedModuleDoc::from_crossed_module(&fixtures::q8_to_v4());
    let mut v = serde_json::to_value(&cm).unwrap();
    v["a"]["group"]["extra"] = serde_json::json!(1);
    let e = from_str::<CrossedModuleDoc>(&v.to_string()).unwrap_err();
    assert!(is_schema(&e));

    let e = from_str::<Fixture>(r#"{"name": "x", "kind": "module", "payload": {}, "note": 1}"#)
        .unwrap_err();
    assert!(is_schema(&e));
}

#[test]
fn invalid_content_reports_its_location() {
    let e = from_str::<GroupDoc>(r#"{"order": 2, "table": [[0, 1], [1, 1]]}"#)
        .unwrap()
        .to_group("gamma")
        .unwrap_err();
    match e {
        Error::Schema { location, .. } => assert_eq!(location, "gamma"),
        other => panic!("{other}"),
    }

    let e = from_str::<GroupDoc>("{\"order\": 1,\n \"table\": [[0]],").unwrap_err();
    match e {
        Error::Schema { location, .. } => assert!(location.starts_with("line 2"), "{location}"),
        other => panic!("{other}"),
    }

    let mut doc = CrossedModuleDoc::from_crossed_module(&fixtures::q8_to_v4());
    doc.theta.insert("nope".into(), (0..8).collect());
    match doc.to_crossed_module().unwrap_err() {
        Error::Schema { location, .. } => assert_eq!(location, "theta.nope"),
        other => panic!("{other}"),
    }
}

#[test]
fn braided_fixtures_round_trip() {
    for (name, b) in fixtures::braided_fixtures() {
        let text = to_string(&CrossedModuleDoc::from_braiding(&b));
        let doc: CrossedModuleDoc = from_str(&text).unwrap();
        assert_eq!(&doc.to_crossed_module().unwrap(), b.cm(), "{name}");
        assert_eq!(doc.to_braiding().unwrap().as_ref(), Some(&b), "{name}");

        let plain = to_string(&CrossedModuleDoc::from_crossed_module(b.cm()));
        let doc: CrossedModuleDoc = from_str(&plain).unwrap();
        assert_eq!(doc.to_braiding().unwrap(), None);
    }
}

#[test]
fn identity_of_gamma_may_be_omitted() {
    let mut doc = GammaGroupDoc::from_gamma_group(fixtures::q8_to_v4().gamma_a());
    let e = doc
        .gamma
        .names
        .as_ref()
        .map_or("0".to_string(), |n| n[0].clone());
    doc.action.remove(&e);
    assert_eq!(
        &doc.to_gamma_group("a").unwrap(),
        fixtures::q8_to_v4().gamma_a()
    );
}

#[test]
fn modules_and_sequences_round_trip() {
    for n in 1..=3 {
        let ex = build_unitary_example(n).unwrap();
        let text = to_string(&ModuleDoc::from_module(&ex.x));
        let m = from_str::<ModuleDoc>(&text)
            .unwrap()
            .to_module("x")
            .unwrap();
        assert_eq!(m, ex.x);
    }
    let ses = build_z8_klein_sequence().unwrap();
    let doc = SequenceDoc::from_sequence(&ses);
    let back = from_str::<SequenceDoc>(&to_string(&doc)).unwrap();
    assert_eq!(back, doc);
    let rebuilt = back.to_sequence().unwrap();
    assert_eq!(rebuilt.inclusion(), ses.inclusion());
    assert_eq!(rebuilt.projection(), ses.projection());
}

#[test]
fn broken_sequence_document_is_rejected() {
    let ses = build_z8_klein_sequence().unwrap();
    let mut doc = SequenceDoc::from_sequence(&ses);
    for row in doc.projection.iter_mut() {
        for x in row.iter_mut() {
            *x = 0;
        }
    }
    assert!(doc.to_sequence().is_err());
}

#[test]
fn fixture_wrapper_round_trips() {
    let b = fixtures::q8_to_v4_braided();
    let f = Fixture::new(
        "q8",
        &Document::CrossedModule(b.cm().clone(), Some(b.clone())),
        Some(serde_json::json!({"h1_classes": 2})),
    );
    let back: Fixture = from_str(&to_string(&f)).unwrap();
    assert_eq!(back, f);
    match back.build().unwrap() {
        Document::CrossedModule(cm, Some(bb)) => {
            assert_eq!(&cm, b.cm());
            assert_eq!(bb, b);
        }
        other => panic!("{other:?}"),
    }

    let wrong_kind = Fixture {
        kind: FixtureKind::Module,
        ..f
    };
    assert!(is_schema(&wrong_kind.build().unwrap_err()));
}

#[test]
fn cochain_documents() {
    let d: Cochain1Doc = from_str(r#"{"u": [[0, 0], [0, 1]], "psi": [0, 1]}"#).unwrap();
    let c = d.to_cochain().unwrap();
    assert_eq!(Cochain1Doc::from_cochain(&c), d);
    let bad: Cochain1Doc = from_str(r#"{"u": [[0, 0]], "psi": [0, 1]}"#).unwrap();
    assert!(is_schema(&bad.to_cochain().unwrap_err()));
    assert!(from_str::<PsiDoc>(r#"{"psi": [0, 1], "u": []}"#).is_err());
}
