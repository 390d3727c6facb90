use mildset::checks::{run_check, CheckError, CheckSpec, REGISTRY};

/// The statements the registry must cover, one id each.
const STATEMENTS: &[&str] = &[
    "agreeSupp1", "agreeSupp2", "agreeSupp3", "capSupp", "injAct", "complement", "ksupp", "fksupp",
    "kfsupp", "infiniteCompl", "equalModMA", "tauMuFunctor", "boxAssoc", "boxSymm", "boxUnit",
    "injCoproduct", "tameStrongMonoidal", "operadRoundTrip", "classEqRelation", "starModMild",
    "starModNonMild", "muViaOperadic", "warningQuotient", "factorizationCounterexample",
    "freeSigmaAction", "universalEmbedding", "fixedPoints", "cmonAxioms",
];

#[test]
fn registry_matches_statement_list() {
    let ids: Vec<&str> = REGISTRY.iter().map(|e| e.id).collect();
    for s in STATEMENTS {
        assert_eq!(ids.iter().filter(|i| *i == s).count(), 1, "{s} should appear exactly once");
    }
    for i in &ids {
        assert!(STATEMENTS.contains(i), "orphan registry entry {i}");
    }
}

#[test]
fn unknown_id_is_rejected() {
    match run_check(&CheckSpec::new("noSuchLemma")) {
        Err(CheckError::UnknownCheck(id)) => assert_eq!(id, "noSuchLemma"),
        other => panic!("expected UnknownCheck, got {other:?}"),
    }
}

#[test]
fn bad_bounds_are_rejected() {
    let spec = CheckSpec { entry_bound: 2, ..CheckSpec::new("capSupp") };
    assert!(matches!(run_check(&spec), Err(CheckError::InvalidParameter(_))));
}

fn report_json(spec: &CheckSpec) -> String {
    let mut r = run_check(spec).unwrap();
    r.elapsed_ms = None;
    serde_json::to_string(&r).unwrap()
}

#[test]
fn reports_are_deterministic() {
    for id in ["capSupp", "agreeSupp1", "boxAssoc", "warningQuotient"] {
        let spec = CheckSpec { trials: 40, ..CheckSpec::new(id) };
        assert_eq!(report_json(&spec), report_json(&spec), "{id}");
    }
}

#[test]
fn seed_changes_the_sample() {
    let a = CheckSpec { trials: 40, ..CheckSpec::new("capSupp") };
    let b = CheckSpec { seed: 7, ..a.clone() };
    let (ra, rb) = (run_check(&a).unwrap(), run_check(&b).unwrap());
    assert!(ra.passed && rb.passed);
    assert_ne!(ra.counts, rb.counts);
}

#[test]
fn cap_supp_at_smaller_trial_count() {
    let r = run_check(&CheckSpec { trials: 100, ..CheckSpec::new("capSupp") }).unwrap();
    assert!(r.passed, "{:?}", r.failures);
    assert_eq!(r.count("instances"), 100);
}

#[test]
fn non_mild_report_names_the_witness() {
    let r = run_check(&CheckSpec::new("starModNonMild")).unwrap();
    assert!(r.passed);
    assert!(r.notes.iter().any(|n| n.contains("unhit witness [selfm{")), "{:?}", r.notes);
}
