//! Generalized Green's relations relative to a set of idempotents `E`,
//! reduced E-Fountain structure, the congruence condition and the
//! generalized ample identities.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::partial_map::PartialMap;
use crate::relation::Partition;
use crate::semigroup::FiniteSemigroup;
use crate::verdict::{Verdict, Witness};

/// Default cap on candidate maps for [`enumerate_action_homs`].
pub const DEFAULT_ENUMERATION_BUDGET: u128 = 1_000_000;

/// Sorted, deduplicated `E` after checking every member is an idempotent of `s`.
fn validate_e(s: &FiniteSemigroup, e: &[usize]) -> Result<Vec<usize>> {
    if e.is_empty() {
        return Err(Error::EmptyE);
    }
    let mut e = e.to_vec();
    e.sort_unstable();
    e.dedup();
    for &x in &e {
        if x >= s.size() || !s.is_idempotent(x) {
            return Err(Error::NotIdempotentInE(x));
        }
    }
    Ok(e)
}

/// `(L̃, R̃)`: `a L̃ b` iff `a` and `b` have the same right identities in `E`,
/// and dually `R̃` with left identities.
pub fn tilde_classes(s: &FiniteSemigroup, e: &[usize]) -> Result<(Partition, Partition)> {
    let e = validate_e(s, e)?;
    Ok(tilde_partitions(s, &e))
}

fn tilde_partitions(s: &FiniteSemigroup, e: &[usize]) -> (Partition, Partition) {
    let l = Partition::from_key(s.size(), |a| {
        e.iter().map(|&x| s.mul(a, x) == a).collect::<Vec<_>>()
    });
    let r = Partition::from_key(s.size(), |a| {
        e.iter().map(|&x| s.mul(x, a) == a).collect::<Vec<_>>()
    });
    (l, r)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FountainVerdict {
    pub fountain: bool,
    pub reduced: bool,
    pub witnesses: Vec<Witness>,
}

/// Checks that every `L̃`- and `R̃`-class meets `E` and that `ef = e ⟺ fe = e`
/// on `E`. Reports the first offending class (by its smallest member) and the
/// first offending pair.
pub fn e_fountain_check(s: &FiniteSemigroup, e: &[usize]) -> Result<FountainVerdict> {
    let e = validate_e(s, e)?;
    let (l, r) = tilde_partitions(s, &e);
    let mut witnesses = Vec::new();
    let meets_e = |c: &Vec<usize>| c.iter().any(|a| e.binary_search(a).is_ok());
    if let Some(c) = l.classes().iter().find(|c| !meets_e(c)) {
        witnesses.push(Witness::new("ltilde class without E", c.clone()));
    }
    if let Some(c) = r.classes().iter().find(|c| !meets_e(c)) {
        witnesses.push(Witness::new("rtilde class without E", c.clone()));
    }
    let fountain = witnesses.is_empty();
    let bad_pair = e.iter().find_map(|&x| {
        e.iter()
            .find(|&&y| (s.mul(x, y) == x) != (s.mul(y, x) == x))
            .map(|&y| (x, y))
    });
    if let Some((x, y)) = bad_pair {
        witnesses.push(Witness::new("ef = e but fe != e (or converse)", vec![x, y]));
    }
    Ok(FountainVerdict { fountain, reduced: bad_pair.is_none(), witnesses })
}

/// A reduced E-Fountain semigroup together with its `*` and `+` maps.
#[derive(Debug, Clone)]
pub struct EStructure {
    semigroup: Arc<FiniteSemigroup>,
    e: Vec<usize>,
    e_position: Vec<Option<usize>>,
    star: Vec<usize>,
    plus: Vec<usize>,
    ltilde: Partition,
    rtilde: Partition,
}

pub fn build_estructure(s: &FiniteSemigroup, e: &[usize]) -> Result<EStructure> {
    EStructure::new(Arc::new(s.clone()), e)
}

impl EStructure {
    pub fn new(semigroup: Arc<FiniteSemigroup>, e: &[usize]) -> Result<Self> {
        let s = &*semigroup;
        let verdict = e_fountain_check(s, e)?;
        if !(verdict.fountain && verdict.reduced) {
            let w = &verdict.witnesses[0];
            return Err(Error::NotReducedEFountain(format!("{} {:?}", w.condition, w.elements)));
        }
        let e = validate_e(s, e)?;
        let (ltilde, rtilde) = tilde_partitions(s, &e);
        let mut e_position = vec![None; s.size()];
        for (p, &x) in e.iter().enumerate() {
            e_position[x] = Some(p);
        }
        let unique_rep = |part: &Partition, a: usize| -> Result<usize> {
            let mut reps = part.class_containing(a).iter().filter(|x| e_position[**x].is_some());
            let first = *reps.next().expect("fountain check guarantees a representative");
            if let Some(second) = reps.next() {
                return Err(Error::NotReducedEFountain(format!(
                    "class of {a} holds two members of E: {first}, {second}"
                )));
            }
            Ok(first)
        };
        let star = s.elements().map(|a| unique_rep(&ltilde, a)).collect::<Result<Vec<_>>>()?;
        let plus = s.elements().map(|a| unique_rep(&rtilde, a)).collect::<Result<Vec<_>>>()?;
        Ok(EStructure { semigroup, e, e_position, star, plus, ltilde, rtilde })
    }

    pub fn semigroup(&self) -> &FiniteSemigroup {
        &self.semigroup
    }

    pub fn semigroup_arc(&self) -> Arc<FiniteSemigroup> {
        Arc::clone(&self.semigroup)
    }

    /// The idempotent set `E`, ascending.
    pub fn e(&self) -> &[usize] {
        &self.e
    }

    pub fn size(&self) -> usize {
        self.semigroup.size()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.semigroup.mul(a, b)
    }

    pub fn in_e(&self, a: usize) -> bool {
        self.e_position[a].is_some()
    }

    /// Position of `a` within `E`, used as the object index of the associated category.
    pub fn e_position(&self, a: usize) -> Option<usize> {
        self.e_position[a]
    }

    pub fn check_in_e(&self, a: usize) -> Result<()> {
        if a < self.size() && self.in_e(a) {
            Ok(())
        } else {
            Err(Error::NotInE(a))
        }
    }

    /// `a*`: the member of `E` in the `L̃`-class of `a`.
    pub fn star(&self, a: usize) -> usize {
        self.star[a]
    }

    /// `a⁺`: the member of `E` in the `R̃`-class of `a`.
    pub fn plus(&self, a: usize) -> usize {
        self.plus[a]
    }

    pub fn ltilde(&self) -> &Partition {
        &self.ltilde
    }

    pub fn rtilde(&self) -> &Partition {
        &self.rtilde
    }

    /// `L̃(a)`, ascending.
    pub fn ltilde_class(&self, a: usize) -> &[usize] {
        self.ltilde.class_containing(a)
    }

    pub fn rtilde_class(&self, a: usize) -> &[usize] {
        self.rtilde.class_containing(a)
    }

    /// Same structure on the opposite semigroup; `*` and `+` trade places.
    pub fn reversed(&self) -> Result<EStructure> {
        EStructure::new(Arc::new(self.semigroup.reversed()), &self.e)
    }
}

/// `(ab)* = (a*b)*` and `(ab)⁺ = (ab⁺)⁺` for all pairs.
pub fn congruence_condition(es: &EStructure) -> Verdict {
    let n = es.size();
    let witness = (0..n).into_par_iter().find_map_first(|a| {
        (0..n).find_map(|b| {
            let ab = es.mul(a, b);
            if es.star(ab) != es.star(es.mul(es.star(a), b)) {
                Some(Witness::new("(ab)* = (a*b)*", vec![a, b]))
            } else if es.plus(ab) != es.plus(es.mul(a, es.plus(b))) {
                Some(Witness::new("(ab)+ = (ab+)+", vec![a, b]))
            } else {
                None
            }
        })
    });
    Verdict::from_witness(witness)
}

/// The generalized right ample identity
/// `(e(a(eaf)*)⁺)* = (a(eaf)*)⁺` over all `a ∈ S`, `e, f ∈ E`.
pub fn gra_check(es: &EStructure) -> Verdict {
    let witness = (0..es.size()).into_par_iter().find_map_first(|a| {
        es.e().iter().find_map(|&e| {
            es.e().iter().find_map(|&f| {
                let eaf = es.mul(es.mul(e, a), f);
                let rhs = es.plus(es.mul(a, es.star(eaf)));
                let lhs = es.star(es.mul(e, rhs));
                (lhs != rhs).then(|| Witness::new("generalized right ample", vec![a, e, f]))
            })
        })
    });
    Verdict::from_witness(witness)
}

/// The two-variable form `(e(a(ea)*)⁺)* = (a(ea)*)⁺` over `a ∈ S`, `e ∈ E`.
pub fn gra_simplified_check(es: &EStructure) -> Verdict {
    let witness = (0..es.size()).into_par_iter().find_map_first(|a| {
        es.e().iter().find_map(|&e| {
            let rhs = es.plus(es.mul(a, es.star(es.mul(e, a))));
            let lhs = es.star(es.mul(e, rhs));
            (lhs != rhs).then(|| Witness::new("simplified generalized right ample", vec![a, e]))
        })
    });
    Verdict::from_witness(witness)
}

/// The generalized left ample identity `(((ae)⁺a)*e)⁺ = ((ae)⁺a)*`.
pub fn gla_check(es: &EStructure) -> Verdict {
    let witness = (0..es.size()).into_par_iter().find_map_first(|a| {
        es.e().iter().find_map(|&e| {
            let rhs = es.star(es.mul(es.plus(es.mul(a, e)), a));
            let lhs = es.plus(es.mul(rhs, e));
            (lhs != rhs).then(|| Witness::new("generalized left ample", vec![a, e]))
        })
    });
    Verdict::from_witness(witness)
}

/// Right multiplication by `alpha` as a map `L̃(α⁺) → L̃(α*)`, with both
/// classes in ascending order. Images that leave `L̃(α*)` are undefined; this
/// cannot happen under the congruence condition.
pub fn r_alpha(es: &EStructure, alpha: usize) -> PartialMap {
    let domain = es.ltilde_class(es.plus(alpha));
    let codomain = es.ltilde_class(es.star(alpha));
    let images = domain
        .iter()
        .map(|&x| codomain.binary_search(&es.mul(x, alpha)).ok())
        .collect();
    PartialMap::new(domain.len(), codomain.len(), images)
}

/// The partial left action of `s` on `L̃(e)`, by position: `Some(p)` when `s·x`
/// lies in the class, `None` otherwise.
pub(crate) fn class_action(es: &EStructure, class: &[usize], s: usize, x_pos: usize) -> Option<usize> {
    class.binary_search(&es.mul(s, class[x_pos])).ok()
}

/// Whether `map: L̃(e) → L̃(f)` is a homomorphism of partial left `S`-actions:
/// `s·x` is defined iff `s·F(x)` is, and then `F(s·x) = s·F(x)`.
pub fn is_partial_action_hom(es: &EStructure, map: &PartialMap, e: usize, f: usize) -> Result<bool> {
    es.check_in_e(e)?;
    es.check_in_e(f)?;
    let dom = es.ltilde_class(e);
    let cod = es.ltilde_class(f);
    if map.domain_size() != dom.len() || map.codomain_size() != cod.len() {
        return Err(Error::DomainMismatch);
    }
    match map.total_images() {
        Some(images) => Ok(action_hom_by_positions(es, dom, cod, &images)),
        None => Ok(false),
    }
}

fn action_hom_by_positions(es: &EStructure, dom: &[usize], cod: &[usize], images: &[usize]) -> bool {
    es.semigroup().elements().all(|s| {
        (0..dom.len()).all(|x| {
            match (class_action(es, dom, s, x), class_action(es, cod, s, images[x])) {
                (Some(sx), Some(sfx)) => images[sx] == sfx,
                (None, None) => true,
                _ => false,
            }
        })
    })
}

/// Both sides of the equivalence between the generalized right ample identity
/// and every `r_α` being an action homomorphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ActionEquivalence {
    pub gra: bool,
    pub all_r_alpha_homs: bool,
}

impl ActionEquivalence {
    pub fn agrees(&self) -> bool {
        self.gra == self.all_r_alpha_homs
    }
}

/// First `α` whose `r_α` is not an action homomorphism.
pub fn first_non_hom_r_alpha(es: &EStructure) -> Option<usize> {
    es.semigroup().elements().find(|&alpha| {
        let map = r_alpha(es, alpha);
        !is_partial_action_hom(es, &map, es.plus(alpha), es.star(alpha)).expect("r_alpha shape")
    })
}

pub fn gra_action_equivalence(es: &EStructure) -> ActionEquivalence {
    ActionEquivalence {
        gra: gra_check(es).holds,
        all_r_alpha_homs: first_non_hom_r_alpha(es).is_none(),
    }
}

/// All total maps `L̃(e) → L̃(f)` that are homomorphisms of partial left
/// actions, in lexicographic order of their image sequences.
pub fn enumerate_action_homs(es: &EStructure, e: usize, f: usize, budget: u128) -> Result<Vec<PartialMap>> {
    es.check_in_e(e)?;
    es.check_in_e(f)?;
    let dom = es.ltilde_class(e);
    let cod = es.ltilde_class(f);
    let needed = (cod.len() as u128).checked_pow(dom.len() as u32).unwrap_or(u128::MAX);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let mut found = Vec::new();
    let mut images = vec![0usize; dom.len()];
    loop {
        if action_hom_by_positions(es, dom, cod, &images) {
            found.push(PartialMap::total(cod.len(), images.clone()));
        }
        // odometer, last position fastest
        let mut i = dom.len();
        loop {
            if i == 0 {
                return Ok(found);
            }
            i -= 1;
            images[i] += 1;
            if images[i] < cod.len() {
                break;
            }
            images[i] = 0;
        }
    }
}
