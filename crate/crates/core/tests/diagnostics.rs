use halfplane::config::RunConfig;
use halfplane::diagnostics::{run_suite, run_suites, to_json, DiagnosticReport, SuiteContext, SUITES};
use halfplane::Error;

fn ctx() -> SuiteContext {
    SuiteContext::from_config(&RunConfig::default())
}

#[test]
fn suites_are_deterministic() {
    for s in ["kernel-decomposition", "boundary", "jumps"] {
        let a = run_suite(s, &ctx()).unwrap();
        let b = run_suite(s, &ctx()).unwrap();
        assert_eq!(to_json(&a), to_json(&b), "{s}");
    }
}

#[test]
fn reports_are_sorted_and_consistent() {
    let r = run_suites(&["causality".into(), "kernel-decay".into()], &ctx()).unwrap();
    assert!(!r.is_empty());
    for x in &r {
        assert_eq!(x.recompute(), x.pass, "{}", x.check);
        assert!(x.pass, "{}: {} vs {}", x.check, x.value, x.bound);
    }
    for s in ["causality", "kernel-decay"] {
        let ids: Vec<&str> = r.iter().map(|x| x.check.as_str()).filter(|c| c.starts_with(s)).collect();
        let mut sorted = ids.clone();
        sorted.sort();
        assert_eq!(ids, sorted);
    }
}

#[test]
fn json_round_trips() {
    let r = run_suite("kernel-decomposition", &ctx()).unwrap();
    let back: Vec<DiagnosticReport> = serde_json::from_str(&to_json(&r)).unwrap();
    assert_eq!(back, r);
}

#[test]
fn unknown_suite_is_rejected() {
    assert!(matches!(run_suite("nope", &ctx()), Err(Error::Usage(_))));
    assert!(SUITES.contains(&"lap"));
}
