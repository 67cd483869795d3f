use efountain::analysis::{analyze, AnalysisOptions, Status, SCHEMA};
use efountain::corpus::gra_fail_fixture;
use efountain::families::build_of;
use efountain::{Error, FiniteSemigroup};

#[test]
fn of3_report_has_every_condition() {
    let of3 = build_of(3).unwrap();
    let report = analyze("of:3", of3.semigroup(), of3.e(), &AnalysisOptions::default()).unwrap();
    assert!(report.all_conditions_hold());
    assert_eq!(report.input.order, 6);
    assert_eq!(report.structure.idempotents, 5);
    assert_eq!(report.structure.j_classes, 3);
    let category = report.category.as_ref().unwrap();
    assert_eq!((category.objects, category.morphisms), (4, 6));
    assert!(category.groupoid && category.locally_trivial);
    assert_eq!(report.algebra.phi_iso, Status::Holds);
    assert_eq!(report.algebra.semisimple, Status::Holds);
    assert!(report.timing.is_none());
    let json: serde_json::Value = serde_json::from_str(&report.to_json_pretty()).unwrap();
    assert_eq!(json["schema"], SCHEMA);
    assert_eq!(json["conditions"]["gra"], true);
    assert_eq!(json["tilde"]["ltilde_classes"].as_array().unwrap().len(), 4);
    assert!(json.get("timing").is_none());
}

#[test]
fn gra_failure_is_reported_with_a_labelled_witness() {
    let entry = gra_fail_fixture().unwrap();
    let report = analyze("gra-fail", &entry.semigroup, &entry.e, &AnalysisOptions::default()).unwrap();
    assert!(!report.all_conditions_hold());
    assert_eq!(report.conditions.gra, Status::Fails);
    assert_eq!(report.conditions.gla, Status::Holds);
    let w = report.conditions.witnesses.iter().find(|w| w.condition.contains("GRA") || w.condition.contains("right")).unwrap();
    assert_eq!(w.labels.len(), w.elements.len());
    assert_eq!(report.algebra.phi_hom, Status::Fails);
    assert_eq!(report.algebra.phi_invertible, Status::Holds);
}

#[test]
fn failing_prerequisites_skip_later_stages() {
    let null = FiniteSemigroup::from_table(&[vec![0, 0], vec![0, 0]], None).unwrap();
    let report = analyze("null", &null, &[0], &AnalysisOptions::default()).unwrap();
    assert!(!report.conditions.fountain);
    assert_eq!(report.conditions.gra, Status::Skipped);
    assert_eq!(report.algebra.semisimple, Status::Skipped);
    assert!(report.category.is_none());
    let json: serde_json::Value = serde_json::to_value(&report).unwrap();
    assert_eq!(json["conditions"]["gra"], "skipped");
    assert!(matches!(analyze("null", &null, &[1], &AnalysisOptions::default()), Err(Error::NotIdempotentInE(1))));
}

#[test]
fn algebra_stage_respects_the_size_limit_and_timing_is_opt_in() {
    let of3 = build_of(3).unwrap();
    let opts = AnalysisOptions { max_algebra_order: 5, timing: true };
    let report = analyze("of:3", of3.semigroup(), of3.e(), &opts).unwrap();
    assert_eq!(report.algebra.phi_hom, Status::Skipped);
    assert!(report.all_conditions_hold());
    assert!(report.timing.is_some());
}
