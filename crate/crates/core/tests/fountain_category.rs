use std::collections::BTreeSet;

use efountain::category::{
    associated_category, category_flags, category_isomorphic, d_category, export_dot_category, op_to_d_functor,
    opposite,
};
use efountain::corpus::{committed, gra_fail_fixture, CorpusEntry};
use efountain::families::{build_catalan, build_io, build_of, Family, SubsetPair};
use efountain::fountain::{
    congruence_condition, e_fountain_check, enumerate_action_homs, gla_check, gra_action_equivalence, gra_check,
    gra_simplified_check, r_alpha, tilde_classes, EStructure, DEFAULT_ENUMERATION_BUDGET,
};
use efountain::green::green_classes;
use efountain::partial_map::PartialMap;
use efountain::semigroup::FiniteSemigroup;
use efountain::Error;

fn idx(f: &Family, x: &[usize], y: &[usize]) -> usize {
    let universe = match f.spec().kind {
        efountain::FamilyKind::OrderPreservingFixed | efountain::FamilyKind::Catalan => f.spec().n - 1,
        _ => f.spec().n,
    };
    f.index_of(&SubsetPair::from_sets(universe, x, y)).unwrap()
}

fn corpus_structures() -> Vec<(CorpusEntry, EStructure)> {
    let mut entries = committed().unwrap();
    entries.push(gra_fail_fixture().unwrap());
    entries
        .into_iter()
        .map(|entry| {
            let es = entry.estructure().unwrap();
            (entry, es)
        })
        .collect()
}

#[test]
fn ltilde_classes_of_of3_and_of4() {
    let of3 = build_of(3).unwrap();
    let (l, r) = tilde_classes(of3.semigroup(), of3.e()).unwrap();
    assert_eq!(l.sizes(), vec![1, 2, 2, 1]);
    assert_eq!(r.sizes(), vec![1, 2, 2, 1]);
    let of4 = build_of(4).unwrap();
    let (l, _) = tilde_classes(of4.semigroup(), of4.e()).unwrap();
    let g = green_classes(of4.semigroup());
    assert_eq!(l.len(), 8);
    assert_eq!(l, g.l_class);
}

#[test]
fn e_fountain_verdicts() {
    let z2 = FiniteSemigroup::from_table(&[vec![0, 1], vec![1, 0]], None).unwrap();
    let v = e_fountain_check(&z2, &[0]).unwrap();
    assert!(v.fountain && v.reduced);
    let null = FiniteSemigroup::from_table(&[vec![0, 0], vec![0, 0]], None).unwrap();
    assert!(matches!(e_fountain_check(&null, &[1]), Err(Error::NotIdempotentInE(1))));
    // 1·0 = 0, so 1 has no right identity in E
    let v = e_fountain_check(&null, &[0]).unwrap();
    assert!(!v.fountain);
    assert!(!v.witnesses.is_empty());
    // the left zero band {a, b}: a and b are L̃-related to both idempotents
    let left_zero = FiniteSemigroup::from_table(&[vec![0, 0], vec![1, 1]], None).unwrap();
    let v = e_fountain_check(&left_zero, &[0, 1]).unwrap();
    assert!(v.fountain && !v.reduced);
}

#[test]
fn star_and_plus_in_families() {
    let of3 = build_of(3).unwrap();
    let es = of3.estructure();
    let a = idx(&of3, &[2], &[1]);
    assert_eq!(es.star(a), idx(&of3, &[2], &[2]));
    assert_eq!(es.plus(a), idx(&of3, &[1], &[1]));
    for n in 1..=3 {
        let io = build_io(n).unwrap();
        let es = io.estructure();
        for a in io.semigroup().elements() {
            let p = io.pair(a);
            assert_eq!(es.star(a), io.index_of(&SubsetPair::from_sets(n, &p.xs(), &p.xs())).unwrap());
            assert_eq!(es.plus(a), io.index_of(&SubsetPair::from_sets(n, &p.ys(), &p.ys())).unwrap());
        }
    }
}

#[test]
fn products_in_of3() {
    let of3 = build_of(3).unwrap();
    let s = of3.semigroup();
    assert_eq!(s.mul(idx(&of3, &[1], &[2]), idx(&of3, &[2], &[1])), idx(&of3, &[2], &[2]));
    assert_eq!(s.mul(idx(&of3, &[2], &[1]), idx(&of3, &[1], &[2])), idx(&of3, &[1], &[1]));
}

#[test]
fn star_and_plus_are_minimal_right_and_left_identities() {
    for (entry, es) in corpus_structures() {
        let s = es.semigroup();
        for a in s.elements() {
            let (star, plus) = (es.star(a), es.plus(a));
            assert_eq!(s.mul(a, star), a, "{}", entry.name);
            assert_eq!(s.mul(plus, a), a, "{}", entry.name);
            for &e in es.e() {
                if s.mul(a, e) == a {
                    assert_eq!(s.mul(star, e), star, "{}: a* below every right identity in E", entry.name);
                }
                if s.mul(e, a) == a {
                    assert_eq!(s.mul(e, plus), plus, "{}", entry.name);
                }
            }
        }
    }
}

#[test]
fn green_classes_refine_tilde_classes() {
    for (entry, es) in corpus_structures() {
        let g = green_classes(es.semigroup());
        assert!(g.l_class.refines(es.ltilde()), "{}", entry.name);
        assert!(g.r_class.refines(es.rtilde()), "{}", entry.name);
    }
}

#[test]
fn congruence_holds_for_families() {
    for n in 1..=3 {
        assert!(congruence_condition(build_io(n).unwrap().estructure()).holds);
    }
    for n in 1..=5 {
        assert!(congruence_condition(build_of(n).unwrap().estructure()).holds);
        assert!(congruence_condition(build_catalan(n).unwrap().estructure()).holds);
    }
}

#[test]
fn gra_fixture_fails_and_its_opposite_fails_gla() {
    let entry = gra_fail_fixture().unwrap();
    assert_eq!(entry.semigroup.size(), 3);
    let es = entry.estructure().unwrap();
    let v = gra_check(&es);
    assert!(!v.holds);
    assert!(v.witness.is_some());
    assert!(!gra_simplified_check(&es).holds);
    assert!(gla_check(&es).holds);
    let eq = gra_action_equivalence(&es);
    assert!(!eq.gra && !eq.all_r_alpha_homs);
    assert!(!gla_check(&es.reversed().unwrap()).holds);
}

#[test]
fn gra_variants_agree_and_match_r_alpha_homs_on_corpus() {
    for (entry, es) in corpus_structures() {
        assert_eq!(gra_check(&es).holds, gra_simplified_check(&es).holds, "{}", entry.name);
        assert!(gra_action_equivalence(&es).agrees(), "{}", entry.name);
        let dual = es.reversed().unwrap();
        assert_eq!(gla_check(&es).holds, gra_check(&dual).holds, "{}", entry.name);
    }
}

#[test]
fn r_alpha_in_of3() {
    let of3 = build_of(3).unwrap();
    let es = of3.estructure();
    let alpha = idx(&of3, &[1], &[2]);
    let map = r_alpha(es, alpha);
    // L̃(f{2}{2}) = [f{2}{1}, f{2}{2}] → L̃(f{1}{1}) = [f{1}{1}, f{1}{2}]
    assert_eq!(es.ltilde_class(es.plus(alpha)), &[idx(&of3, &[2], &[1]), idx(&of3, &[2], &[2])]);
    assert_eq!(es.ltilde_class(es.star(alpha)), &[idx(&of3, &[1], &[1]), idx(&of3, &[1], &[2])]);
    assert_eq!(map, PartialMap::total(2, vec![0, 1]));
}

#[test]
fn r_alpha_sends_plus_to_alpha() {
    for (entry, es) in corpus_structures() {
        for a in es.semigroup().elements() {
            let dom = es.ltilde_class(es.plus(a));
            let cod = es.ltilde_class(es.star(a));
            let p = dom.binary_search(&es.plus(a)).unwrap();
            let image = r_alpha(&es, a).get(p).map(|q| cod[q]);
            assert_eq!(image, Some(a), "{}", entry.name);
        }
    }
}

#[test]
fn action_hom_enumeration_in_of3() {
    let of3 = build_of(3).unwrap();
    let es = of3.estructure();
    let one = idx(&of3, &[1], &[1]);
    let two = idx(&of3, &[2], &[2]);
    let homs = enumerate_action_homs(es, one, two, DEFAULT_ENUMERATION_BUDGET).unwrap();
    assert_eq!(homs, vec![r_alpha(es, idx(&of3, &[2], &[1]))]);
    // no α has α⁺ = f{12}{12} and α* = f∅∅, and the constant map is not a hom
    let top = idx(&of3, &[1, 2], &[1, 2]);
    let bottom = idx(&of3, &[], &[]);
    assert!(enumerate_action_homs(es, top, bottom, DEFAULT_ENUMERATION_BUDGET).unwrap().is_empty());
    assert!(matches!(enumerate_action_homs(es, one, two, 1), Err(Error::BudgetExceeded { .. })));
    assert!(matches!(
        enumerate_action_homs(es, idx(&of3, &[1], &[2]), two, DEFAULT_ENUMERATION_BUDGET),
        Err(Error::NotInE(_))
    ));
}

#[test]
fn action_homs_are_exactly_the_r_alphas_under_gra() {
    for (entry, es) in corpus_structures() {
        if !gra_check(&es).holds {
            continue;
        }
        let s = es.semigroup();
        for &e in es.e() {
            for &f in es.e() {
                let found: BTreeSet<Vec<Option<usize>>> =
                    enumerate_action_homs(&es, e, f, DEFAULT_ENUMERATION_BUDGET)
                        .unwrap()
                        .iter()
                        .map(PartialMap::images)
                        .collect();
                let expected: BTreeSet<Vec<Option<usize>>> = s
                    .elements()
                    .filter(|&a| es.plus(a) == e && es.star(a) == f)
                    .map(|a| r_alpha(&es, a).images())
                    .collect();
                assert_eq!(found, expected, "{}: ({e}, {f})", entry.name);
            }
        }
    }
}

#[test]
fn associated_category_of_of3() {
    let of3 = build_of(3).unwrap();
    let c = associated_category(of3.estructure()).unwrap();
    assert_eq!(c.objects(), 4);
    assert_eq!(c.morphisms(), 6);
    let dot = export_dot_category(&c);
    assert_eq!(dot.matches(" [label=").count() - dot.matches(" -> ").count(), 4);
    assert_eq!(dot.matches(" -> ").count(), 6);
    assert_eq!(dot, export_dot_category(&associated_category(build_of(3).unwrap().estructure()).unwrap()));
    // a unique morphism X → Y iff |X| = |Y|
    let counts = c.hom_counts();
    let ranks: Vec<usize> = of3.e().iter().map(|&e| of3.pair(e).rank()).collect();
    for (x, row) in counts.iter().enumerate() {
        for (y, &k) in row.iter().enumerate() {
            assert_eq!(k, usize::from(ranks[x] == ranks[y]));
        }
    }
    let json = c.to_json();
    assert_eq!(json["objects"].as_array().unwrap().len(), 4);
}

#[test]
fn category_flags_of_families() {
    for n in 1..=5 {
        let f = category_flags(&associated_category(build_of(n).unwrap().estructure()).unwrap());
        assert!(f.groupoid && f.locally_trivial, "OF_{n}");
        let f = category_flags(&associated_category(build_catalan(n).unwrap().estructure()).unwrap());
        assert!(f.locally_trivial, "C_{n}");
        // C_1 and C_2 have only identity morphisms
        assert_eq!(f.groupoid, n <= 2, "C_{n}");
    }
}

#[test]
fn catalan_monoid_is_j_trivial_with_the_same_idempotents() {
    for n in 1..=5 {
        let c = build_catalan(n).unwrap();
        let g = green_classes(c.semigroup());
        assert_eq!(g.j_class.len(), c.size(), "C_{n}");
        let mut idem: Vec<_> = c.semigroup().idempotents().iter().map(|&a| c.pair(a)).collect();
        idem.sort_by_key(|p| p.key());
        let of = build_of(n).unwrap();
        let mut expected: Vec<_> = of.e().iter().map(|&a| of.pair(a)).collect();
        expected.sort_by_key(|p| p.key());
        assert_eq!(idem, expected);
        let es = c.estructure();
        assert!(gra_check(es).holds && gla_check(es).holds, "C_{n}");
    }
}

#[test]
fn d_category_of_of3_and_duality() {
    let of3 = build_of(3).unwrap();
    let d = d_category(of3.estructure(), DEFAULT_ENUMERATION_BUDGET).unwrap();
    assert_eq!(d.category.morphisms(), 6);
    let c = associated_category(of3.estructure()).unwrap();
    assert!(category_isomorphic(&opposite(&c), &c, None).unwrap().is_some());
    assert_eq!(opposite(&opposite(&c)), c);
    let c_io = associated_category(build_io(2).unwrap().estructure()).unwrap();
    assert!(category_isomorphic(&c, &c_io, None).unwrap().is_some());
}

#[test]
fn d_category_is_opposite_of_c_under_gra() {
    for (entry, es) in corpus_structures() {
        let gra = gra_check(&es).holds;
        let d = d_category(&es, DEFAULT_ENUMERATION_BUDGET).unwrap();
        let c = associated_category(&es).unwrap();
        let functor = op_to_d_functor(&es, &d);
        if gra {
            assert_eq!(d.category.morphisms(), es.size(), "{}", entry.name);
            let functor = functor.expect("every r_α is in D(S)");
            assert!(efountain::category::is_isomorphism(&opposite(&c), &d.category, &functor), "{}", entry.name);
        } else {
            assert!(functor.is_none(), "{}", entry.name);
        }
    }
}
