use std::sync::OnceLock;

use proptest::prelude::*;

use efountain::algebra::{check_algebra_hom, order_condition, phi};
use efountain::category::associated_category;
use efountain::corpus::{canonical_form, committed, CorpusEntry};
use efountain::families::{build_of, mobius, mobius_delta_identity, of_function, of_pair, subset_pairs};
use efountain::fountain::{e_fountain_check, gra_check};
use efountain::linalg::rat;
use efountain::partial_map::PartialMap;
use efountain::relation::BitRelation;
use efountain::semigroup::{parse_table, BuildOptions};
use efountain::{AlgebraElement, BasisAlgebra, BasisTag, CategoryAlgebra, FiniteSemigroup, LinearMap, SemigroupAlgebra};

fn corpus() -> &'static [CorpusEntry] {
    static CORPUS: OnceLock<Vec<CorpusEntry>> = OnceLock::new();
    CORPUS.get_or_init(|| committed().unwrap())
}

fn matrix(n: usize, entries: &[i64]) -> LinearMap {
    LinearMap::from_fn(n, n, |r, c| rat(entries[r * n + c]))
}

fn square_matrix() -> impl Strategy<Value = (usize, Vec<i64>)> {
    (1usize..=4).prop_flat_map(|n| (Just(n), prop::collection::vec(-3i64..=3, n * n)))
}

fn element(tag: BasisTag, coeffs: &[i64]) -> AlgebraElement {
    AlgebraElement::from_dense(tag, &coeffs.iter().map(|&c| rat(c)).collect::<Vec<_>>())
}

/// A corpus entry together with three coefficient vectors over its basis.
fn entry_with_elements() -> impl Strategy<Value = (usize, [Vec<i64>; 3])> {
    (0..corpus().len()).prop_flat_map(|i| {
        let d = corpus()[i].semigroup.size();
        let v = || prop::collection::vec(-2i64..=2, d);
        (Just(i), (v(), v(), v()).prop_map(|(a, b, c)| [a, b, c]))
    })
}

fn relabel(s: &FiniteSemigroup, e: &[usize], perm: &[usize]) -> (FiniteSemigroup, Vec<usize>) {
    let n = s.size();
    let mut table = vec![0; n * n];
    for a in s.elements() {
        for b in s.elements() {
            table[perm[a] * n + perm[b]] = perm[s.mul(a, b)];
        }
    }
    let t = FiniteSemigroup::from_flat(n, table, None, BuildOptions::default()).unwrap();
    (t, e.iter().map(|&x| perm[x]).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn determinant_is_multiplicative((n, a) in square_matrix(), b in prop::collection::vec(-3i64..=3, 16)) {
        let a = matrix(n, &a);
        let b = matrix(n, &b[..n * n]);
        let ab = a.compose(&b).unwrap();
        prop_assert_eq!(ab.determinant().unwrap(), a.determinant().unwrap() * b.determinant().unwrap());
    }

    #[test]
    fn inverse_agrees_with_determinant((n, a) in square_matrix()) {
        let a = matrix(n, &a);
        let det = a.determinant().unwrap();
        match a.inverse() {
            Some(inv) => {
                prop_assert!(det != rat(0));
                prop_assert_eq!(a.compose(&inv).unwrap(), LinearMap::identity(n));
                prop_assert_eq!(inv.compose(&a).unwrap(), LinearMap::identity(n));
            }
            None => prop_assert_eq!(det, rat(0)),
        }
    }

    #[test]
    fn rank_nullity((n, a) in square_matrix()) {
        let a = matrix(n, &a);
        let kernel = a.nullspace();
        prop_assert_eq!(a.rank() + kernel.len(), n);
        for v in &kernel {
            prop_assert!(a.apply(v).iter().all(|x| *x == rat(0)));
        }
        prop_assert_eq!(a.transpose().rank(), a.rank());
    }

    #[test]
    fn solve_returns_a_solution((n, a) in square_matrix(), x in prop::collection::vec(-3i64..=3, 4)) {
        let a = matrix(n, &a);
        let x: Vec<_> = x[..n].iter().map(|&v| rat(v)).collect();
        let b = a.apply(&x);
        let y = a.solve(&b).expect("b is in the image");
        prop_assert_eq!(a.apply(&y), b);
    }

    #[test]
    fn semigroup_algebra_is_associative_and_bilinear((i, [x, y, z]) in entry_with_elements()) {
        let s = &corpus()[i].semigroup;
        let alg = SemigroupAlgebra(s);
        let (x, y, z) = (element(BasisTag::Semigroup, &x), element(BasisTag::Semigroup, &y), element(BasisTag::Semigroup, &z));
        let xy_z = alg.mul(&alg.mul(&x, &y)?, &z)?;
        let x_yz = alg.mul(&x, &alg.mul(&y, &z)?)?;
        prop_assert_eq!(xy_z, x_yz);
        let left = alg.mul(&x.add(&y)?, &z)?;
        let right = alg.mul(&x, &z)?.add(&alg.mul(&y, &z)?)?;
        prop_assert_eq!(left, right);
        let scaled = alg.mul(&x.scale(&rat(3)), &y)?;
        prop_assert_eq!(scaled, alg.mul(&x, &y)?.scale(&rat(3)));
    }

    #[test]
    fn category_algebra_is_associative_and_unital((i, [x, y, z]) in entry_with_elements()) {
        let es = corpus()[i].estructure().unwrap();
        let c = associated_category(&es).unwrap();
        let alg = CategoryAlgebra(&c);
        let (x, y, z) = (element(BasisTag::Category, &x), element(BasisTag::Category, &y), element(BasisTag::Category, &z));
        prop_assert_eq!(alg.mul(&alg.mul(&x, &y)?, &z)?, alg.mul(&x, &alg.mul(&y, &z)?)?);
        let unit = efountain::algebra::category_unit(&c);
        prop_assert_eq!(alg.mul(&unit, &x)?, x.clone());
        prop_assert_eq!(alg.mul(&x, &unit)?, x);
    }

    #[test]
    fn phi_is_multiplicative_on_arbitrary_elements((i, [x, y, _]) in entry_with_elements()) {
        let entry = &corpus()[i];
        let es = entry.estructure().unwrap();
        let c = associated_category(&es).unwrap();
        let map = phi(&es);
        let (sa, ca) = (SemigroupAlgebra(&entry.semigroup), CategoryAlgebra(&c));
        let image = |v: &AlgebraElement| element_of(&map.apply(&v.to_dense()));
        let (x, y) = (element(BasisTag::Semigroup, &x), element(BasisTag::Semigroup, &y));
        let agrees = image(&sa.mul(&x, &y)?) == ca.mul(&image(&x), &image(&y))?;
        if gra_check(&es).holds {
            prop_assert!(agrees);
        }
        let basis_hom = check_algebra_hom(&map, &sa, &ca)?.holds;
        prop_assert_eq!(basis_hom, gra_check(&es).holds);
        if order_condition(&entry.semigroup, &entry.e) {
            prop_assert!(map.is_invertible());
        }
    }

    #[test]
    fn canonical_form_is_invariant_under_relabelling(i in 0..50usize, perm in Just((0..6).collect::<Vec<usize>>()).prop_shuffle()) {
        let entry = &corpus()[i];
        let n = entry.semigroup.size();
        let perm: Vec<usize> = perm.into_iter().filter(|&p| p < n).collect();
        let (t, e) = relabel(&entry.semigroup, &entry.e, &perm);
        prop_assert_eq!(canonical_form(&t, &e), canonical_form(&entry.semigroup, &entry.e));
        let v = e_fountain_check(&t, &e)?;
        prop_assert!(v.fountain && v.reduced);
    }

    #[test]
    fn table_text_round_trips(i in 0..corpus().len()) {
        let s = &corpus()[i].semigroup;
        prop_assert_eq!(&parse_table(&s.to_table_text())?, s);
        prop_assert_eq!(&s.reversed().reversed(), s);
    }

    #[test]
    fn partial_map_composition_is_associative(
        (n, f, g, h) in (1usize..=5).prop_flat_map(|n| {
            let m = || prop::collection::vec(prop::option::of(0..n), n);
            (Just(n), m(), m(), m())
        })
    ) {
        let (f, g, h) = (PartialMap::new(n, n, f), PartialMap::new(n, n, g), PartialMap::new(n, n, h));
        prop_assert_eq!(f.compose(&g).compose(&h), f.compose(&g.compose(&h)));
        prop_assert_eq!(PartialMap::identity(n).compose(&f), f.clone());
        prop_assert_eq!(f.compose(&PartialMap::identity(n)), f);
    }

    #[test]
    fn pair_function_round_trip(n in 1usize..=8, k in any::<prop::sample::Index>()) {
        let pairs = subset_pairs(n - 1);
        let p = pairs[k.index(pairs.len())];
        let f = of_function(&p);
        prop_assert!(f.windows(2).all(|w| w[0] <= w[1]));
        prop_assert_eq!(f[n - 1], n);
        prop_assert_eq!(of_pair(&f), p);
    }

    #[test]
    fn mobius_inverts_zeta_on_random_posets(n in 1usize..=7, edges in prop::collection::vec(any::<bool>(), 49)) {
        // edges only go up in index, so the closure is antisymmetric
        let rel = BitRelation::from_fn(n, |a, b| a < b && edges[a * 7 + b]);
        let leq = rel.reflexive_transitive_closure();
        prop_assert!(leq.is_partial_order());
        let mu = mobius(&leq)?;
        prop_assert!(mobius_delta_identity(&leq, &mu));
        // the other convolution: Σ_{x ≤ z ≤ y} μ(x, z) = δ
        for x in 0..n {
            for y in (0..n).filter(|&y| leq.contains(x, y)) {
                let s: i64 = (0..n).filter(|&z| leq.contains(x, z) && leq.contains(z, y)).map(|z| mu.get(x, z)).sum();
                prop_assert_eq!(s, i64::from(x == y));
            }
        }
    }
}

fn element_of(dense: &[efountain::Rational]) -> AlgebraElement {
    AlgebraElement::from_dense(BasisTag::Category, dense)
}

#[test]
fn of_products_are_associative_for_small_n() {
    for n in 1..=5 {
        assert!(build_of(n).unwrap().semigroup().is_associative());
    }
}
