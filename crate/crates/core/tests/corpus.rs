use std::collections::BTreeSet;

use efountain::corpus::{canonical_form, committed, gra_fail_fixture, parse_bundle, search, write_bundle};
use efountain::fountain::{congruence_condition, e_fountain_check, gra_check};

#[test]
fn committed_corpus_is_the_search_output() {
    let regenerated = search(6, 3);
    let committed = committed().unwrap();
    assert_eq!(regenerated.len(), committed.len());
    assert_eq!(regenerated, committed);
}

#[test]
fn bundle_text_round_trips() {
    let entries = committed().unwrap();
    assert_eq!(parse_bundle(&write_bundle(&entries)).unwrap(), entries);
}

#[test]
fn entries_are_admissible_and_pairwise_non_isomorphic() {
    let entries = committed().unwrap();
    assert!(entries.len() >= 50);
    let mut forms = BTreeSet::new();
    for entry in &entries {
        let v = e_fountain_check(&entry.semigroup, &entry.e).unwrap();
        assert!(v.fountain && v.reduced, "{}", entry.name);
        assert!(congruence_condition(&entry.estructure().unwrap()).holds, "{}", entry.name);
        assert_eq!(canonical_form(&entry.semigroup, &entry.e), (entry.semigroup.rows().concat(), entry.e.clone()));
        assert!(forms.insert(canonical_form(&entry.semigroup, &entry.e)), "{} repeats", entry.name);
    }
    let sizes: Vec<usize> = (1..=6).map(|n| entries.iter().filter(|e| e.semigroup.size() == n).count()).collect();
    assert_eq!(sizes, vec![1, 3, 15, 50, 75, 103]);
    let failing = entries.iter().filter(|e| !gra_check(&e.estructure().unwrap()).holds).count();
    assert_eq!(failing, 22);
}

#[test]
fn gra_fixture_is_the_smallest_failure_in_the_corpus() {
    let fixture = gra_fail_fixture().unwrap();
    let form = canonical_form(&fixture.semigroup, &fixture.e);
    let entries = committed().unwrap();
    let position = entries.iter().position(|e| canonical_form(&e.semigroup, &e.e) == form).unwrap();
    let first_failure = entries.iter().position(|e| !gra_check(&e.estructure().unwrap()).holds).unwrap();
    assert_eq!(entries[first_failure].semigroup.size(), 3);
    assert!(entries[..first_failure].iter().all(|e| e.semigroup.size() <= 3));
    assert_eq!(entries[position].semigroup.size(), fixture.semigroup.size());
}
