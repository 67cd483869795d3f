//! Classical Green's relations.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::relation::{BitRelation, Partition};
use crate::semigroup::FiniteSemigroup;

/// Green's preorders and the partitions they induce.
#[derive(Debug, Clone)]
pub struct GreenData {
    pub r_leq: BitRelation,
    pub l_leq: BitRelation,
    pub j_leq: BitRelation,
    pub r_class: Partition,
    pub l_class: Partition,
    pub j_class: Partition,
    pub h_class: Partition,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StructureFlags {
    pub h_trivial: bool,
    pub regular: bool,
}

/// `leq(a, b)` iff `a` is reachable from `b` along the given multiplication
/// edges, with `b` itself reachable in zero steps (the virtual unit).
fn reachability(s: &FiniteSemigroup, left: bool, right: bool) -> BitRelation {
    let n = s.size();
    let mut leq = BitRelation::new(n);
    let mut stack = Vec::new();
    let mut seen = vec![false; n];
    for b in s.elements() {
        seen.iter_mut().for_each(|x| *x = false);
        seen[b] = true;
        stack.push(b);
        while let Some(x) = stack.pop() {
            leq.insert(x, b);
            for t in s.elements() {
                if right {
                    let y = s.mul(x, t);
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
                if left {
                    let y = s.mul(t, x);
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
    }
    leq
}

pub fn green_classes(s: &FiniteSemigroup) -> GreenData {
    // a ≤_R b iff a ∈ bS¹: reachable from b by right multiplication.
    let r_leq = reachability(s, false, true);
    let l_leq = reachability(s, true, false);
    let j_leq = reachability(s, true, true);
    let r_class = r_leq.symmetric_classes();
    let l_class = l_leq.symmetric_classes();
    let j_class = j_leq.symmetric_classes();
    let h_class = Partition::from_key(s.size(), |a| (r_class.class_of(a), l_class.class_of(a)));
    GreenData { r_leq, l_leq, j_leq, r_class, l_class, j_class, h_class }
}

pub fn structure_flags(s: &FiniteSemigroup, green: &GreenData) -> StructureFlags {
    StructureFlags {
        h_trivial: green.h_class.classes().iter().all(|c| c.len() == 1),
        regular: s.elements().all(|a| s.is_regular_element(a)),
    }
}

/// Brute-force check that right multiplication by a regular `alpha` is a
/// homomorphism of partial left actions `L_e → L_f`, where `β` is the first
/// inverse of `alpha` in index order, `e = αβ` and `f = βα`.
///
/// The action of `s` on `x ∈ L_e` is `sx` when `sx ∈ L_e` and undefined
/// otherwise. Also checks that the map lands in `L_f` and is inverted by
/// right multiplication by `β`.
pub fn rho_hom_check(s: &FiniteSemigroup, green: &GreenData, alpha: usize) -> Result<bool> {
    let beta = *s.inverses(alpha).first().ok_or(Error::NotRegular(alpha))?;
    let e = s.mul(alpha, beta);
    let f = s.mul(beta, alpha);
    let l = &green.l_class;
    let domain = l.class_containing(e);
    for &x in domain {
        let image = s.mul(x, alpha);
        if !l.same(image, f) || s.mul(image, beta) != x {
            return Ok(false);
        }
        for t in s.elements() {
            let tx = s.mul(t, x);
            let t_image = s.mul(t, image);
            let defined_before = l.same(tx, e);
            let defined_after = l.same(t_image, f);
            if defined_before != defined_after {
                return Ok(false);
            }
            if defined_before && s.mul(tx, alpha) != t_image {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
