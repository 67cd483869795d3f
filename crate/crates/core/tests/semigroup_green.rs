use efountain::corpus::committed;
use efountain::families::{build_of, of_function, SubsetPair};
use efountain::green::{green_classes, rho_hom_check, structure_flags};
use efountain::semigroup::{parse_table, FiniteSemigroup};
use efountain::Error;

fn of3_index(x: &[usize], y: &[usize]) -> usize {
    build_of(3).unwrap().index_of(&SubsetPair::from_sets(2, x, y)).unwrap()
}

/// All order-preserving `f: [n] → [n]` with `f(n) = n`, by brute force over `n^n`.
fn brute_force_of(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mut code in 0..n.pow(n as u32) {
        let f: Vec<usize> = (0..n)
            .map(|_| {
                let d = code % n + 1;
                code /= n;
                d
            })
            .collect();
        if f.windows(2).all(|w| w[0] <= w[1]) && f[n - 1] == n {
            out.push(f);
        }
    }
    out
}

#[test]
fn of_table_matches_brute_force_composition() {
    for n in 1..=5 {
        let of = build_of(n).unwrap();
        let maps: Vec<Vec<usize>> = of.pairs().iter().map(of_function).collect();
        let mut oracle = brute_force_of(n);
        let mut ours = maps.clone();
        oracle.sort();
        ours.sort();
        assert_eq!(ours, oracle, "OF_{n} element set");
        let s = of.semigroup();
        for a in s.elements() {
            for b in s.elements() {
                let composite: Vec<usize> = maps[b].iter().map(|&v| maps[a][v - 1]).collect();
                assert_eq!(maps[s.mul(a, b)], composite, "OF_{n}: {a}·{b}");
            }
        }
        assert!(s.is_associative());
    }
}

#[test]
fn idempotents_of_of3_by_squaring() {
    let of = build_of(3).unwrap();
    let maps: Vec<Vec<usize>> = of.pairs().iter().map(of_function).collect();
    let squared: Vec<usize> = (0..6)
        .filter(|&a| maps[a].iter().map(|&v| maps[a][v - 1]).collect::<Vec<_>>() == maps[a])
        .collect();
    assert_eq!(of.semigroup().idempotents(), squared);
    assert_eq!(squared.len(), 5);
    // f_{{1},{2}} = (2 3 3) is the only non-idempotent.
    assert_eq!(squared, vec![0, 1, 3, 4, 5]);
}

#[test]
fn natural_order_on_of3() {
    let s = build_of(3).unwrap();
    let s = s.semigroup();
    let empty = of3_index(&[], &[]);
    let one = of3_index(&[1], &[1]);
    let two = of3_index(&[2], &[2]);
    assert!(s.natural_order_leq(one, one).unwrap());
    assert!(s.natural_order_leq(empty, one).unwrap());
    assert!(!s.natural_order_leq(one, two).unwrap());
    assert_eq!(s.natural_order_leq(of3_index(&[1], &[2]), one), Err(Error::NotIdempotent(2)));
}

#[test]
fn green_classes_of_of3() {
    let of = build_of(3).unwrap();
    let g = green_classes(of.semigroup());
    let r = g.r_class.class_containing(of3_index(&[1], &[1]));
    assert_eq!(r, &[of3_index(&[1], &[1]), of3_index(&[2], &[1])]);
    assert_eq!(g.j_class.sizes(), vec![1, 4, 1]);
    let flags = structure_flags(of.semigroup(), &g);
    assert!(flags.h_trivial && flags.regular);
}

#[test]
fn flags_of_small_examples() {
    let z2 = FiniteSemigroup::from_table(&[vec![0, 1], vec![1, 0]], None).unwrap();
    let f = structure_flags(&z2, &green_classes(&z2));
    assert!(!f.h_trivial && f.regular);
    let null = FiniteSemigroup::from_table(&[vec![0, 0], vec![0, 0]], None).unwrap();
    let f = structure_flags(&null, &green_classes(&null));
    assert!(f.h_trivial && !f.regular);
    assert_eq!(rho_hom_check(&null, &green_classes(&null), 1), Err(Error::NotRegular(1)));
}

fn h_is_r_meet_l(s: &FiniteSemigroup) -> bool {
    let g = green_classes(s);
    s.elements()
        .all(|a| s.elements().all(|b| g.h_class.same(a, b) == (g.r_class.same(a, b) && g.l_class.same(a, b))))
}

#[test]
fn classes_refine_preorders_and_h_is_intersection() {
    let mut semigroups: Vec<FiniteSemigroup> = committed().unwrap().into_iter().map(|e| e.semigroup).collect();
    semigroups.extend((1..=5).map(|n| build_of(n).unwrap().semigroup().clone()));
    for s in &semigroups {
        assert!(h_is_r_meet_l(s));
        let g = green_classes(s);
        for (part, leq) in [(&g.r_class, &g.r_leq), (&g.l_class, &g.l_leq), (&g.j_class, &g.j_leq)] {
            assert!(leq.is_reflexive() && leq.is_transitive());
            for a in s.elements() {
                for b in s.elements() {
                    assert_eq!(part.same(a, b), leq.contains(a, b) && leq.contains(b, a));
                }
            }
        }
        assert!(g.r_class.refines(&g.j_class) && g.l_class.refines(&g.j_class));
    }
}

#[test]
fn natural_order_on_idempotents_is_a_partial_order() {
    let mut semigroups: Vec<FiniteSemigroup> = committed().unwrap().into_iter().map(|e| e.semigroup).collect();
    semigroups.extend((1..=5).map(|n| build_of(n).unwrap().semigroup().clone()));
    for s in &semigroups {
        let e = s.idempotents();
        let leq = |a: usize, b: usize| s.natural_order_leq(a, b).unwrap();
        for &a in &e {
            assert!(leq(a, a));
            for &b in &e {
                if leq(a, b) && leq(b, a) {
                    assert_eq!(a, b);
                }
                for &c in &e {
                    if leq(a, b) && leq(b, c) {
                        assert!(leq(a, c));
                    }
                }
            }
        }
    }
}

#[test]
fn rho_is_an_action_homomorphism_for_every_regular_element() {
    let mut semigroups: Vec<FiniteSemigroup> = committed().unwrap().into_iter().map(|e| e.semigroup).collect();
    semigroups.extend((1..=4).map(|n| build_of(n).unwrap().semigroup().clone()));
    for s in &semigroups {
        let g = green_classes(s);
        for a in s.elements().filter(|&a| s.is_regular_element(a)) {
            assert!(rho_hom_check(s, &g, a).unwrap(), "element {a}");
        }
    }
    let of = build_of(3).unwrap();
    let g = green_classes(of.semigroup());
    assert!(rho_hom_check(of.semigroup(), &g, of3_index(&[1], &[2])).unwrap());
}

#[test]
fn table_text_round_trips_for_families() {
    for n in 1..=4 {
        let s = build_of(n).unwrap().semigroup().clone();
        assert_eq!(parse_table(&s.to_table_text()).unwrap(), s);
    }
}
