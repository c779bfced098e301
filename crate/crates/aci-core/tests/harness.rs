use aci_core::graded::Variant;
use aci_core::harness::{
    build_family, compare_tables, emit_betti_table, parse_betti_json, run_suite, CheckId, CheckStatus, CompareMode,
    ExperimentConfig, HarnessError, OutputFormat, TableMeta, REGISTRY,
};
use aci_core::resolution::koszul_betti;
use serde_json::Value;

fn config(n: usize, variant: Variant) -> ExperimentConfig {
    ExperimentConfig::new(n, variant).unwrap()
}

#[test]
fn check_names_round_trip() {
    for spec in REGISTRY {
        assert_eq!(spec.id.name().parse::<CheckId>().unwrap(), spec.id);
        assert!(!spec.claim.is_empty());
    }
    assert!("no-such-check".parse::<CheckId>().is_err());
}

#[test]
fn invalid_configs_are_rejected() {
    let ok = config(4, Variant::Tilde);
    assert!(ok.validate().is_ok());

    let mut c = ok.clone();
    c.n = 1;
    assert!(matches!(c.validate(), Err(HarnessError::Config(_))));

    let mut c = ok.clone();
    c.prime = 32002;
    assert!(c.validate().is_err());

    let mut c = ok.clone();
    c.prime = 3;
    assert!(matches!(c.validate(), Err(HarnessError::Config(_))));

    let mut c = ok.clone();
    c.windows.cutoff = 4;
    assert!(matches!(c.validate(), Err(HarnessError::Config(_))));

    let mut c = ok.clone();
    c.windows.series = (4, 24);
    assert!(matches!(c.validate(), Err(HarnessError::Config(_))));

    let mut c = ok.clone();
    c.windows.series = (6, 13);
    assert!(matches!(c.validate(), Err(HarnessError::Config(_))));

    let mut c = ok;
    c.windows.max_i_p = 0;
    assert!(matches!(c.validate(), Err(HarnessError::Config(_))));
}

#[test]
fn tilde_families_are_always_accepted() {
    for n in 3..=7 {
        let built = build_family(&config(n, Variant::Tilde)).unwrap();
        assert_eq!(built.family.attempts, 1);
        assert!(built.steps.iter().all(|s| s.is_surjective()), "n={n}");
    }
}

#[test]
fn suite_passes_for_small_families() {
    for (n, variant) in [(3, Variant::Tilde), (4, Variant::Tilde), (5, Variant::Tilde), (5, Variant::Random { seed: 4 })] {
        let report = run_suite(&config(n, variant)).unwrap();
        assert!(!report.failed(), "n={n} {variant:?}:\n{}", report.to_text());
        assert!(report.checks.iter().all(|c| c.status == CheckStatus::Pass), "{}", report.to_text());
        assert!(report.get(CheckId::Euler).is_some());
    }
}

#[test]
fn selected_checks_only() {
    let cfg = config(4, Variant::Tilde).with_checks([CheckId::Hilbert, CheckId::SmallTables, CheckId::Socle]);
    let report = run_suite(&cfg).unwrap();
    // small-tables applies only to three variables
    let ran: Vec<CheckId> = report.checks.iter().map(|c| c.id).collect();
    assert_eq!(ran, vec![CheckId::Hilbert, CheckId::Socle]);
}

#[test]
fn json_report_is_deterministic() {
    let cfg = config(4, Variant::Random { seed: 7 });
    let a = run_suite(&cfg).unwrap().to_json();
    let b = run_suite(&cfg).unwrap().to_json();
    assert_eq!(a, b);
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["config"]["n"], 4);
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["status"] == "pass"));
    assert!(checks.iter().any(|c| c["id"] == "poincare-r"));
}

#[test]
fn emitted_tables_compare_equal_after_parsing() {
    let built = build_family(&config(4, Variant::Tilde)).unwrap();
    let t = koszul_betti(&built.family.r, 4).unwrap();
    let meta = TableMeta { n: 4, prime: built.family.field.p(), variant: Variant::Tilde };
    let (back, m) = parse_betti_json(&emit_betti_table(&t, &meta, OutputFormat::Json)).unwrap();
    assert_eq!(m, meta);
    assert!(compare_tables(&back, &t, CompareMode::Equal).unwrap().passed());
}
